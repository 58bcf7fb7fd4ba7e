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

#include "panmap/label_propagation.h"

#include "panmap/instance_tracker.h"

namespace panmap {
namespace {

bool CacheValid(const NdtVoxel& voxel, const MappingParams& params) {
  return voxel.label_cache && voxel.label_cache->revision == voxel.revision &&
         voxel.label_cache->theta_stuff == params.theta_stuff &&
         voxel.label_cache->theta_observation == params.theta_observation;
}

CachedLabel ComputeLabel(const NdtVoxel& voxel, const ClassTable& table,
                         const MappingParams& params) {
  CachedLabel c;
  c.panoptic = PropagateLabel(voxel, table, params.theta_stuff,
                              params.theta_observation);
  c.semantic = voxel.semantic.Argmax();
  c.revision = voxel.revision;
  c.theta_stuff = params.theta_stuff;
  c.theta_observation = params.theta_observation;
  return c;
}

}  // namespace

bool PtThing(const NdtVoxel& voxel, double theta_stuff,
             double theta_observation) {
  if (voxel.semantic_updates == 0) return false;
  if (!IsThing(voxel, theta_stuff)) return false;
  const double ratio = static_cast<double>(voxel.instance_updates) /
                       static_cast<double>(voxel.semantic_updates);
  return ratio >= theta_observation;
}

PanopticLabel3D PropagateLabel(const NdtVoxel& voxel, const ClassTable& table,
                               double theta_stuff, double theta_observation) {
  if (voxel.semantic_updates == 0) return {};
  if (PtThing(voxel, theta_stuff, theta_observation)) {
    if (auto thing = voxel.semantic.ArgmaxThing(table)) {
      return {*thing, voxel.instances.Argmax()};
    }
  }
  return {voxel.semantic.Argmax().value_or(kVoidClass), kNoInstance};
}

PanopticLabel3D CachedOrPropagate(const NdtVoxel& voxel,
                                  const ClassTable& table,
                                  const MappingParams& params) {
  if (CacheValid(voxel, params)) return voxel.label_cache->panoptic;
  return PropagateLabel(voxel, table, params.theta_stuff,
                        params.theta_observation);
}

std::vector<VoxelLabelRecord> ExportLabels(const PanopticMap& map,
                                           const MappingParams& params) {
  std::vector<VoxelLabelRecord> out;
  const auto voxels = map.voxels();
  for (std::size_t i = 0; i < voxels.size(); ++i) {
    const NdtVoxel& voxel = voxels[i];
    if (voxel.semantic_updates == 0) continue;
    auto dist = VoxelDistribution(voxel);
    if (!dist) continue;
    const CachedLabel label =
        CacheValid(voxel, params)
            ? *voxel.label_cache
            : ComputeLabel(voxel, map.class_table(), params);
    VoxelLabelRecord r;
    r.index = voxel.index;
    r.slot = static_cast<VoxelSlot>(i);
    r.label = label.panoptic;
    r.semantic = label.semantic.value_or(kVoidClass);
    r.mean = dist->mean;
    r.covariance = dist->covariance;
    r.logodds = voxel.occupancy.logodds;
    out.push_back(r);
  }
  return out;
}

void RefreshLabelCache(PanopticMap& map, const MappingParams& params) {
  for (NdtVoxel& voxel : map.voxels()) {
    if (voxel.semantic_updates == 0 || CacheValid(voxel, params)) continue;
    voxel.label_cache = ComputeLabel(voxel, map.class_table(), params);
  }
}

}  // namespace panmap
