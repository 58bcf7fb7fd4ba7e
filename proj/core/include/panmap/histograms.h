// Copyright 2026 The Panmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-voxel label evidence: a dense semantic histogram over all classes and a
// small sparse histogram over global instance ids.

#ifndef PANMAP_HISTOGRAMS_H_
#define PANMAP_HISTOGRAMS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "panmap/class_table.h"

namespace panmap {

// Dense histogram indexed by class id. Storage is allocated on the first
// increment so geometry-only voxels stay small. The total and the stuff mass
// are cached and recomputed in class order after every mutation, which keeps
// them reproducible bit-for-bit from the bins alone.
class SemanticHistogram {
 public:
  // Throws std::invalid_argument for a non-positive or non-finite mass or a
  // class id outside `table`.
  void Add(ClassId class_id, double mass, const ClassTable& table);

  // Replaces all bins (used by deserialization). An all-zero input leaves the
  // histogram empty.
  void Assign(std::span<const double> bins, const ClassTable& table);

  double mass(ClassId class_id) const {
    return class_id < bins_.size() ? bins_[class_id] : 0.0;
  }
  double total() const { return total_; }
  double stuff_mass() const { return stuff_mass_; }
  bool empty() const { return bins_.empty(); }
  std::span<const double> bins() const { return bins_; }

  // Highest-mass class, lowest id on ties. nullopt when empty.
  std::optional<ClassId> Argmax() const;
  // Highest-mass thing class with positive mass, lowest id on ties.
  std::optional<ClassId> ArgmaxThing(const ClassTable& table) const;

  friend bool operator==(const SemanticHistogram&,
                         const SemanticHistogram&) = default;

 private:
  void Recompute(const ClassTable& table);

  std::vector<double> bins_;
  double total_ = 0.0;
  double stuff_mass_ = 0.0;
};

struct InstanceEntry {
  GlobalId id = kNoInstance;
  double mass = 0.0;

  friend bool operator==(const InstanceEntry&, const InstanceEntry&) = default;
};

// Sparse instance histogram holding at most kCapacity entries, ordered by
// mass descending then id ascending. When full, a new id evicts the last
// entry (smallest mass). The cached total covers surviving entries only.
class InstanceHistogram {
 public:
  static constexpr std::size_t kCapacity = 16;

  // Throws std::invalid_argument for non-positive mass or id 0.
  void Add(GlobalId id, double mass);

  // Replaces the contents (used by deserialization). Throws if the entries
  // exceed capacity, contain duplicates, id 0 or non-positive mass.
  void Assign(std::vector<InstanceEntry> entries);

  std::span<const InstanceEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double total() const { return total_; }
  double mass(GlobalId id) const;

  // Highest-mass id, lowest id on ties; kNoInstance when empty.
  GlobalId Argmax() const {
    return entries_.empty() ? kNoInstance : entries_.front().id;
  }

  friend bool operator==(const InstanceHistogram&,
                         const InstanceHistogram&) = default;

 private:
  void Restore();

  std::vector<InstanceEntry> entries_;
  double total_ = 0.0;
};

}  // namespace panmap

#endif  // PANMAP_HISTOGRAMS_H_
