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

#ifndef PANMAP_PARAMS_H_
#define PANMAP_PARAMS_H_

namespace panmap {

struct MappingParams {
  double voxel_size = 0.1;
  // Stuff proportion below which a voxel counts as thing.
  double theta_stuff = 0.9;
  // IoU above which an observed instance joins a map instance.
  double theta_match = 0.2;
  // IoU at or below which an observed instance becomes a new map instance.
  double theta_new = 0.1;
  // Share of a voxel's instance mass that is back-projected for matching.
  double theta_backproject = 0.8;
  // Minimum semantic score for a semantic histogram update.
  double theta_semantic = 0.7;
  // Minimum panoptic score for an instance histogram update. Use 0.4 for
  // clean synthetic inputs, 0.1 for noisy real-world inputs.
  double theta_instance = 0.1;
  // Minimum n^Z / n^L ratio for a voxel to carry its instance id.
  double theta_observation = 0.25;
  double max_depth = 20.0;
  // Confidence-ellipse radius for voxel footprints, in standard deviations.
  double k_sigma = 2.0;
  bool integrate_free_space = true;

  // Throws std::invalid_argument on out-of-range values or
  // theta_match < theta_new.
  void Validate() const;

  // Slightly stricter matching for real-world deployments.
  static MappingParams ApplicationProfile() {
    MappingParams p;
    p.theta_match = 0.3;
    p.theta_new = 0.2;
    return p;
  }
};

}  // namespace panmap

#endif  // PANMAP_PARAMS_H_
