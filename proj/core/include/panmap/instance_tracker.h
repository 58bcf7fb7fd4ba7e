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

// Instance tracking: frame-local instance ids are resolved against the map's
// global ids by back-projecting map instances into the current camera and
// comparing masks in the image plane.

#ifndef PANMAP_INSTANCE_TRACKER_H_
#define PANMAP_INSTANCE_TRACKER_H_

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "panmap/histograms.h"
#include "panmap/ndt_map.h"
#include "panmap/panoptic_frame.h"
#include "panmap/params.h"
#include "panmap/raster.h"

namespace panmap {

inline constexpr VoxelSlot kNoSlot = std::numeric_limits<VoxelSlot>::max();

// Pixel -> voxel assignment of one frame (utov), computed once per frame.
struct FrameVoxelCache {
  int width = 0;
  int height = 0;
  std::vector<VoxelSlot> slots;         // per pixel; kNoSlot if invalid
  std::vector<Eigen::Vector3d> points;  // per pixel world point
  std::vector<VoxelSlot> touched;       // distinct slots, first-seen order

  VoxelSlot slot(std::size_t pixel) const { return slots[pixel]; }
};

// Unprojects every pixel with valid depth <= max_depth and creates or fetches
// its voxel. Does not integrate any data.
FrameVoxelCache ForwardMap(const PanopticFrame& frame, PanopticMap& map,
                           double max_depth);

// Stuff share of the semantic histogram is below theta_stuff. False for an
// empty histogram.
bool IsThing(const NdtVoxel& voxel, double theta_stuff);

// Walks the histogram from its smallest entry upward (ties by ascending id);
// true if the cumulative share up to and including `id` reaches
// 1 - theta_backproject. False if `id` is absent.
bool IsInTopZ(const InstanceHistogram& histogram, GlobalId id,
              double theta_backproject);

struct InstanceMask {
  GlobalId id = kNoInstance;
  Raster<std::uint8_t> mask;
  std::size_t area = 0;
};

// Back-projects the instances held by the touched voxels. Only thing voxels
// contribute, and only with their top instances. Between voxels a per-pixel
// depth test applies, except that a farther voxel may still add an instance
// that the nearest voxel at that pixel also carries. Masks are sorted by id.
std::vector<InstanceMask> BuildMasks(const FrameVoxelCache& cache,
                                     const PanopticMap& map,
                                     const Intrinsics& intrinsics,
                                     const Pose& pose,
                                     const MappingParams& params);

// Jaccard index of two binary masks; 0 for an empty union.
double ComputeIou(const Raster<std::uint8_t>& a, const Raster<std::uint8_t>& b);

enum class MatchOutcome { kMatched, kNew, kIgnored };

struct MatchDecision {
  LocalInstanceId local_id = 0;
  MatchOutcome outcome = MatchOutcome::kIgnored;
  GlobalId global_id = kNoInstance;  // 0 when ignored
  double best_iou = 0.0;
};

using MatchDecisions = std::map<LocalInstanceId, MatchDecision>;

// Decides per observed instance: matched to the best-overlapping map
// instance if its IoU exceeds theta_match (lowest id on ties), a fresh global
// id if the best IoU is at most theta_new, ignored otherwise. Several
// observed instances may match the same map instance. Throws
// std::invalid_argument if theta_match < theta_new.
MatchDecisions MatchInstances(const std::vector<InstanceMask>& masks,
                              const Raster<LocalInstanceId>& observed,
                              double theta_match, double theta_new,
                              PanopticMap& map);

std::string ToString(MatchOutcome outcome);
// One trace line: frame, local id, outcome, global id, best IoU.
std::string FormatDecision(std::uint64_t frame_index,
                           const MatchDecision& decision);

}  // namespace panmap

#endif  // PANMAP_INSTANCE_TRACKER_H_
