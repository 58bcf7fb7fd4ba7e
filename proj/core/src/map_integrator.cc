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

#include "panmap/map_integrator.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "panmap/params.h"

namespace panmap {
namespace {

void CheckUnit(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

void MappingParams::Validate() const {
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    throw std::invalid_argument("voxel size must be positive");
  }
  CheckUnit(theta_stuff, "theta_stuff");
  CheckUnit(theta_match, "theta_match");
  CheckUnit(theta_new, "theta_new");
  CheckUnit(theta_backproject, "theta_backproject");
  CheckUnit(theta_semantic, "theta_semantic");
  CheckUnit(theta_instance, "theta_instance");
  if (!(theta_observation >= 0.0) || !std::isfinite(theta_observation)) {
    throw std::invalid_argument("theta_observation must be non-negative");
  }
  if (theta_match < theta_new) {
    throw std::invalid_argument("theta_match must not be below theta_new");
  }
  if (!(max_depth > 0.0)) {
    throw std::invalid_argument("max_depth must be positive");
  }
  if (!(k_sigma > 0.0) || !std::isfinite(k_sigma)) {
    throw std::invalid_argument("k_sigma must be positive");
  }
}

std::size_t UpdateInstances(PanopticMap& map, const PanopticImage& labels,
                            const Raster<double>& panoptic_score,
                            const FrameVoxelCache& cache,
                            const MatchDecisions& decisions,
                            double theta_instance) {
  std::size_t updates = 0;
  for (std::size_t i = 0; i < cache.slots.size(); ++i) {
    const VoxelSlot slot = cache.slots[i];
    const LocalInstanceId z = labels.instance_id[i];
    if (slot == kNoSlot || z == 0) continue;
    auto it = decisions.find(z);
    if (it == decisions.end() || it->second.global_id == kNoInstance) continue;
    const double score = panoptic_score[i];
    if (!(score > theta_instance)) continue;
    NdtVoxel& voxel = map.voxel(slot);
    voxel.instances.Add(it->second.global_id, score);
    ++voxel.instance_updates;
    ++voxel.revision;
    ++updates;
  }
  return updates;
}

std::size_t UpdateSemantics(PanopticMap& map, const PanopticImage& labels,
                            const PanopticFrame& frame,
                            const FrameVoxelCache& cache,
                            double theta_semantic) {
  std::size_t updates = 0;
  const ClassTable& table = map.class_table();
  for (std::size_t i = 0; i < cache.slots.size(); ++i) {
    const VoxelSlot slot = cache.slots[i];
    const ClassId c = labels.class_id[i];
    if (slot == kNoSlot || c == kVoidClass) continue;
    const double score = frame.SemanticScore(i);
    if (!(score > theta_semantic)) continue;
    NdtVoxel& voxel = map.voxel(slot);
    voxel.semantic.Add(c, score, table);
    ++voxel.semantic_updates;
    ++voxel.revision;
    ++updates;
  }
  return updates;
}

FrameStats ProcessFrame(PanopticMap& map, const PanopticFrame& frame,
                        const MappingParams& params,
                        std::vector<MatchDecision>* trace) {
  params.Validate();
  frame.Validate();
  if (std::abs(params.voxel_size - map.voxel_size()) > 0.0) {
    throw std::invalid_argument("parameters and map disagree on voxel size");
  }
  const PanopticImage labels =
      MergePanoptic(frame.semantic, frame.instance, map.class_table());

  // Geometry first, so brand-new voxels exist for the label updates. Their
  // histograms are still empty and cannot leak into the masks below.
  FrameVoxelCache cache = ForwardMap(frame, map, params.max_depth);
  FrameStats stats;
  std::vector<Eigen::Vector3d> endpoints;
  for (std::size_t i = 0; i < cache.slots.size(); ++i) {
    if (cache.slots[i] == kNoSlot) continue;
    map.voxel(cache.slots[i]).shape.Add(cache.points[i]);
    endpoints.push_back(cache.points[i]);
  }
  stats.pixels_integrated = endpoints.size();
  stats.voxels_touched = cache.touched.size();
  if (params.integrate_free_space) {
    map.IntegrateScan(frame.pose.translation(), endpoints);
  } else {
    for (VoxelSlot slot : cache.touched) {
      map.voxel(slot).occupancy.Apply(Occupancy::kHit);
    }
  }

  const auto masks =
      BuildMasks(cache, map, frame.intrinsics, frame.pose, params);
  const MatchDecisions decisions = MatchInstances(
      masks, labels.instance_id, params.theta_match, params.theta_new, map);
  for (const auto& [z, d] : decisions) {
    switch (d.outcome) {
      case MatchOutcome::kMatched:
        ++stats.instances_matched;
        break;
      case MatchOutcome::kNew:
        ++stats.instances_new;
        break;
      case MatchOutcome::kIgnored:
        ++stats.instances_ignored;
        break;
    }
    if (trace) trace->push_back(d);
  }

  const Raster<double> panoptic_score =
      PanopticScore(frame.semantic_score, frame.instance_score, frame.width(),
                    frame.height());
  stats.instance_updates = UpdateInstances(map, labels, panoptic_score, cache,
                                           decisions, params.theta_instance);
  stats.semantic_updates =
      UpdateSemantics(map, labels, frame, cache, params.theta_semantic);
  map.AdvanceFrame();
  return stats;
}

}  // namespace panmap
