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

#include "panmap/histograms.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace panmap {
namespace {

bool ValidMass(double mass) { return std::isfinite(mass) && mass > 0.0; }

bool Before(const InstanceEntry& a, const InstanceEntry& b) {
  if (a.mass != b.mass) return a.mass > b.mass;
  return a.id < b.id;
}

}  // namespace

void SemanticHistogram::Add(ClassId class_id, double mass,
                            const ClassTable& table) {
  if (!ValidMass(mass)) {
    throw std::invalid_argument("semantic histogram: mass must be positive");
  }
  if (!table.Contains(class_id)) {
    throw std::invalid_argument("semantic histogram: unknown class " +
                                std::to_string(class_id));
  }
  if (bins_.empty()) bins_.assign(table.size(), 0.0);
  bins_[class_id] += mass;
  Recompute(table);
}

void SemanticHistogram::Assign(std::span<const double> bins,
                               const ClassTable& table) {
  if (bins.size() != table.size()) {
    throw std::invalid_argument("semantic histogram: bin count mismatch");
  }
  bool any = false;
  for (double b : bins) {
    if (!std::isfinite(b) || b < 0.0) {
      throw std::invalid_argument("semantic histogram: invalid bin value");
    }
    any = any || b > 0.0;
  }
  if (!any) {
    *this = SemanticHistogram();
    return;
  }
  bins_.assign(bins.begin(), bins.end());
  Recompute(table);
}

void SemanticHistogram::Recompute(const ClassTable& table) {
  double total = 0.0;
  double stuff = 0.0;
  for (std::size_t c = 0; c < bins_.size(); ++c) {
    total += bins_[c];
    if (table.IsStuff(static_cast<ClassId>(c))) stuff += bins_[c];
  }
  total_ = total;
  stuff_mass_ = stuff;
}

std::optional<ClassId> SemanticHistogram::Argmax() const {
  std::optional<ClassId> best;
  double best_mass = 0.0;
  for (std::size_t c = 0; c < bins_.size(); ++c) {
    if (bins_[c] > best_mass) {
      best_mass = bins_[c];
      best = static_cast<ClassId>(c);
    }
  }
  return best;
}

std::optional<ClassId> SemanticHistogram::ArgmaxThing(
    const ClassTable& table) const {
  std::optional<ClassId> best;
  double best_mass = 0.0;
  for (std::size_t c = 0; c < bins_.size(); ++c) {
    if (!table.IsThing(static_cast<ClassId>(c))) continue;
    if (bins_[c] > best_mass) {
      best_mass = bins_[c];
      best = static_cast<ClassId>(c);
    }
  }
  return best;
}

void InstanceHistogram::Add(GlobalId id, double mass) {
  if (!ValidMass(mass)) {
    throw std::invalid_argument("instance histogram: mass must be positive");
  }
  if (id == kNoInstance) {
    throw std::invalid_argument("instance histogram: id 0 is reserved");
  }
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [id](const InstanceEntry& e) { return e.id == id; });
  if (it != entries_.end()) {
    it->mass += mass;
  } else if (entries_.size() < kCapacity) {
    entries_.push_back({id, mass});
  } else {
    entries_.back() = {id, mass};
  }
  Restore();
}

void InstanceHistogram::Assign(std::vector<InstanceEntry> entries) {
  if (entries.size() > kCapacity) {
    throw std::invalid_argument("instance histogram: too many entries");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].id == kNoInstance || !ValidMass(entries[i].mass)) {
      throw std::invalid_argument("instance histogram: invalid entry");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (entries[j].id == entries[i].id) {
        throw std::invalid_argument("instance histogram: duplicate id");
      }
    }
  }
  entries_ = std::move(entries);
  Restore();
}

double InstanceHistogram::mass(GlobalId id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return e.mass;
  }
  return 0.0;
}

void InstanceHistogram::Restore() {
  // Insertion sort: after Add at most one entry is out of place.
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    InstanceEntry e = entries_[i];
    std::size_t j = i;
    while (j > 0 && Before(e, entries_[j - 1])) {
      entries_[j] = entries_[j - 1];
      --j;
    }
    entries_[j] = e;
  }
  double total = 0.0;
  for (const auto& e : entries_) total += e.mass;
  total_ = total;
}

}  // namespace panmap
