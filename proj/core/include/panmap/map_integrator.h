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

#ifndef PANMAP_MAP_INTEGRATOR_H_
#define PANMAP_MAP_INTEGRATOR_H_

#include <cstddef>
#include <vector>

#include "panmap/instance_tracker.h"
#include "panmap/ndt_map.h"
#include "panmap/panoptic_frame.h"
#include "panmap/params.h"

namespace panmap {

struct FrameStats {
  std::size_t pixels_integrated = 0;
  std::size_t voxels_touched = 0;
  std::size_t instances_matched = 0;
  std::size_t instances_new = 0;
  std::size_t instances_ignored = 0;
  std::size_t instance_updates = 0;
  std::size_t semantic_updates = 0;
};

// Adds the panoptic score of every pixel resolved to a global instance whose
// score exceeds theta_instance to that instance's bin in the pixel's voxel.
std::size_t UpdateInstances(PanopticMap& map, const PanopticImage& labels,
                            const Raster<double>& panoptic_score,
                            const FrameVoxelCache& cache,
                            const MatchDecisions& decisions,
                            double theta_instance);

// Adds the semantic score of every non-void pixel whose score exceeds
// theta_semantic to its class bin in the pixel's voxel.
std::size_t UpdateSemantics(PanopticMap& map, const PanopticImage& labels,
                            const PanopticFrame& frame,
                            const FrameVoxelCache& cache,
                            double theta_semantic);

// Integrates one frame: geometry and occupancy, then instance matching on
// the histograms of previous frames, then the instance update, then the
// semantic update. Decisions are appended to `trace` if given. Throws
// std::invalid_argument for an inconsistent frame or invalid parameters.
FrameStats ProcessFrame(PanopticMap& map, const PanopticFrame& frame,
                        const MappingParams& params,
                        std::vector<MatchDecision>* trace = nullptr);

}  // namespace panmap

#endif  // PANMAP_MAP_INTEGRATOR_H_
