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

#ifndef PANMAP_PANOPTIC_FRAME_H_
#define PANMAP_PANOPTIC_FRAME_H_

#include "panmap/class_table.h"
#include "panmap/geometry.h"
#include "panmap/labels.h"
#include "panmap/raster.h"

namespace panmap {

// One RGB-D panoptic observation. Depth is in meters; 0 or NaN marks an
// invalid pixel. Instance ids are frame-local, 0 meaning no instance. Empty
// score rasters stand for a constant score of 1.
struct PanopticFrame {
  Raster<double> depth;
  Raster<ClassId> semantic;
  Raster<LocalInstanceId> instance;
  Raster<double> semantic_score;
  Raster<double> instance_score;
  Pose pose;
  Intrinsics intrinsics;

  int width() const { return intrinsics.width; }
  int height() const { return intrinsics.height; }

  // Throws std::invalid_argument if any raster disagrees with the intrinsics
  // or a score lies outside [0, 1].
  void Validate() const;

  double SemanticScore(std::size_t i) const {
    return semantic_score.empty() ? 1.0 : semantic_score[i];
  }
  double InstanceScore(std::size_t i) const {
    return instance_score.empty() ? 1.0 : instance_score[i];
  }
};

struct PanopticImage {
  Raster<ClassId> class_id;
  Raster<LocalInstanceId> instance_id;

  PanopticLabel2D at(int u, int v) const {
    return {class_id(u, v), instance_id(u, v)};
  }
};

// Merges semantic and instance predictions into panoptic labels: every pixel
// of an instance takes the most frequent semantic class over the instance
// (lowest class id on ties). If that class is stuff the instance dissolves
// and its pixels keep their own class with instance 0. Pixels without an
// instance, or whose own class is stuff or void, get instance 0; void pixels
// never join an instance.
//
// Throws std::invalid_argument for mismatched shapes or unknown class ids.
PanopticImage MergePanoptic(const Raster<ClassId>& semantic,
                            const Raster<LocalInstanceId>& instance,
                            const ClassTable& table);

// Element-wise product of semantic and instance scores. Empty inputs count as
// constant 1.
Raster<double> PanopticScore(const Raster<double>& semantic_score,
                             const Raster<double>& instance_score, int width,
                             int height);

}  // namespace panmap

#endif  // PANMAP_PANOPTIC_FRAME_H_
