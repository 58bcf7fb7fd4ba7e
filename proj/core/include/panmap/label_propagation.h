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

// Voxel panoptic labels derived from the semantic and instance histograms.

#ifndef PANMAP_LABEL_PROPAGATION_H_
#define PANMAP_LABEL_PROPAGATION_H_

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "panmap/class_table.h"
#include "panmap/labels.h"
#include "panmap/ndt_map.h"
#include "panmap/params.h"

namespace panmap {

// True when the voxel is thing-like and enough of its semantic observations
// also produced an instance observation (n^Z / n^L >= theta_observation).
// False for n^L = 0.
bool PtThing(const NdtVoxel& voxel, double theta_stuff,
             double theta_observation);

// Thing voxels with enough instance evidence get <best thing class, best
// instance>; everything else gets <best class, 0>. When the best class is a
// thing class the second branch produces a garbage segment <thing, 0>.
// Voxels without semantic observations are void.
PanopticLabel3D PropagateLabel(const NdtVoxel& voxel, const ClassTable& table,
                               double theta_stuff, double theta_observation);

struct VoxelLabelRecord {
  VoxelIndex index;
  VoxelSlot slot = 0;
  PanopticLabel3D label;
  ClassId semantic = kVoidClass;
  Eigen::Vector3d mean;
  Eigen::Matrix3d covariance;  // regularized
  double logodds = 0.0;
};

// Labels for one voxel, served from the voxel's cache when it is current.
PanopticLabel3D CachedOrPropagate(const NdtVoxel& voxel,
                                  const ClassTable& table,
                                  const MappingParams& params);

// One record per voxel with at least one semantic observation and a valid
// distribution, in storage order.
std::vector<VoxelLabelRecord> ExportLabels(const PanopticMap& map,
                                           const MappingParams& params);

// Recomputes stale label caches in place.
void RefreshLabelCache(PanopticMap& map, const MappingParams& params);

}  // namespace panmap

#endif  // PANMAP_LABEL_PROPAGATION_H_
