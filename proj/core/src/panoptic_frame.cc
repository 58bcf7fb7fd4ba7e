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

#include "panmap/panoptic_frame.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace panmap {
namespace {

template <typename T>
void CheckShape(const Raster<T>& r, const Intrinsics& intr, const char* name,
                bool optional) {
  if (optional && r.empty()) return;
  if (!r.SameShape(intr.width, intr.height)) {
    throw std::invalid_argument(std::string("frame: ") + name +
                                " raster does not match the intrinsics");
  }
}

void CheckScores(const Raster<double>& r, const char* name) {
  for (double s : r.pixels()) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument(std::string("frame: ") + name +
                                  " outside [0, 1]");
    }
  }
}

}  // namespace

void PanopticFrame::Validate() const {
  intrinsics.Validate();
  CheckShape(depth, intrinsics, "depth", false);
  CheckShape(semantic, intrinsics, "semantic", false);
  CheckShape(instance, intrinsics, "instance", false);
  CheckShape(semantic_score, intrinsics, "semantic score", true);
  CheckShape(instance_score, intrinsics, "instance score", true);
  CheckScores(semantic_score, "semantic score");
  CheckScores(instance_score, "instance score");
}

PanopticImage MergePanoptic(const Raster<ClassId>& semantic,
                            const Raster<LocalInstanceId>& instance,
                            const ClassTable& table) {
  if (!semantic.SameShape(instance)) {
    throw std::invalid_argument("merge: semantic and instance shapes differ");
  }
  for (ClassId c : semantic.pixels()) {
    if (!table.Contains(c)) {
      throw std::invalid_argument("merge: unknown class id " +
                                  std::to_string(c));
    }
  }

  // Per-instance class votes over non-void pixels.
  std::unordered_map<LocalInstanceId, std::vector<std::uint32_t>> votes;
  for (std::size_t i = 0; i < semantic.size(); ++i) {
    const LocalInstanceId z = instance[i];
    const ClassId c = semantic[i];
    if (z == 0 || c == kVoidClass) continue;
    auto& hist = votes[z];
    if (hist.empty()) hist.assign(table.size(), 0);
    ++hist[c];
  }
  std::unordered_map<LocalInstanceId, ClassId> mode;
  for (const auto& [z, hist] : votes) {
    ClassId best = kVoidClass;
    std::uint32_t best_count = 0;
    for (std::size_t c = 0; c < hist.size(); ++c) {
      if (hist[c] > best_count) {
        best_count = hist[c];
        best = static_cast<ClassId>(c);
      }
    }
    mode[z] = best;
  }

  PanopticImage out{
      Raster<ClassId>(semantic.width(), semantic.height()),
      Raster<LocalInstanceId>(semantic.width(), semantic.height())};
  for (std::size_t i = 0; i < semantic.size(); ++i) {
    const ClassId c = semantic[i];
    const LocalInstanceId z = instance[i];
    out.class_id[i] = c;
    out.instance_id[i] = 0;
    if (z == 0 || !table.IsThing(c)) continue;
    const ClassId m = mode.at(z);
    if (table.IsThing(m)) {
      out.class_id[i] = m;
      out.instance_id[i] = z;
    }
  }
  return out;
}

Raster<double> PanopticScore(const Raster<double>& semantic_score,
                             const Raster<double>& instance_score, int width,
                             int height) {
  Raster<double> out(width, height, 1.0);
  if (!semantic_score.empty() && !semantic_score.SameShape(width, height)) {
    throw std::invalid_argument("panoptic score: semantic score shape");
  }
  if (!instance_score.empty() && !instance_score.SameShape(width, height)) {
    throw std::invalid_argument("panoptic score: instance score shape");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = semantic_score.empty() ? 1.0 : semantic_score[i];
    const double z = instance_score.empty() ? 1.0 : instance_score[i];
    out[i] = s * z;
  }
  return out;
}

}  // namespace panmap
