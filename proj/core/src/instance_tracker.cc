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

#include "panmap/instance_tracker.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "panmap/projection_renderer.h"

namespace panmap {

FrameVoxelCache ForwardMap(const PanopticFrame& frame, PanopticMap& map,
                           double max_depth) {
  FrameVoxelCache cache;
  cache.width = frame.width();
  cache.height = frame.height();
  const std::size_t n = static_cast<std::size_t>(cache.width) * cache.height;
  cache.slots.assign(n, kNoSlot);
  cache.points.assign(n, Eigen::Vector3d::Zero());
  std::unordered_set<VoxelSlot> seen;
  for (int v = 0; v < cache.height; ++v) {
    for (int u = 0; u < cache.width; ++u) {
      const std::size_t i = static_cast<std::size_t>(v) * cache.width + u;
      const double d = frame.depth[i];
      if (!(d <= max_depth)) continue;  // also rejects NaN
      auto point = Unproject({u, v}, d, frame.intrinsics, frame.pose);
      if (!point) continue;
      const VoxelSlot slot = map.FindOrCreate(*point);
      cache.slots[i] = slot;
      cache.points[i] = *point;
      if (seen.insert(slot).second) cache.touched.push_back(slot);
    }
  }
  return cache;
}

bool IsThing(const NdtVoxel& voxel, double theta_stuff) {
  const double total = voxel.semantic.total();
  if (!(total > 0.0)) return false;
  return voxel.semantic.stuff_mass() / total < theta_stuff;
}

bool IsInTopZ(const InstanceHistogram& histogram, GlobalId id,
              double theta_backproject) {
  const double total = histogram.total();
  if (!(total > 0.0) || histogram.mass(id) <= 0.0) return false;
  std::vector<InstanceEntry> ascending(histogram.entries().begin(),
                                       histogram.entries().end());
  std::sort(ascending.begin(), ascending.end(),
            [](const InstanceEntry& a, const InstanceEntry& b) {
              if (a.mass != b.mass) return a.mass < b.mass;
              return a.id < b.id;
            });
  double cumulative = 0.0;
  for (const auto& e : ascending) {
    cumulative += e.mass;
    if (e.id == id) break;
  }
  return cumulative / total >= 1.0 - theta_backproject;
}

namespace {

struct GatedVoxel {
  double depth = 0.0;
  std::vector<GlobalId> ids;
  std::vector<Pixel> footprint;
};

bool Carries(const GatedVoxel& g, GlobalId id) {
  return std::find(g.ids.begin(), g.ids.end(), id) != g.ids.end();
}

}  // namespace

std::vector<InstanceMask> BuildMasks(const FrameVoxelCache& cache,
                                     const PanopticMap& map,
                                     const Intrinsics& intrinsics,
                                     const Pose& pose,
                                     const MappingParams& params) {
  std::vector<GatedVoxel> gated;
  for (VoxelSlot slot : cache.touched) {
    const NdtVoxel& voxel = map.voxel(slot);
    if (voxel.instances.empty() || !IsThing(voxel, params.theta_stuff)) {
      continue;
    }
    GatedVoxel g;
    for (const auto& e : voxel.instances.entries()) {
      if (IsInTopZ(voxel.instances, e.id, params.theta_backproject)) {
        g.ids.push_back(e.id);
      }
    }
    if (g.ids.empty()) continue;
    auto dist = VoxelDistribution(voxel);
    if (!dist) continue;
    auto projected = ProjectGaussian(*dist, intrinsics, pose);
    if (!projected) continue;
    g.depth = projected->depth;
    g.footprint = Footprint(*projected, intrinsics, params.k_sigma);
    if (g.footprint.empty()) continue;
    gated.push_back(std::move(g));
  }

  const int w = intrinsics.width;
  Raster<double> zmin(w, intrinsics.height,
                      std::numeric_limits<double>::infinity());
  Raster<std::int32_t> front(w, intrinsics.height, -1);
  for (std::size_t k = 0; k < gated.size(); ++k) {
    for (const Pixel& p : gated[k].footprint) {
      if (gated[k].depth < zmin(p.u, p.v)) {
        zmin(p.u, p.v) = gated[k].depth;
        front(p.u, p.v) = static_cast<std::int32_t>(k);
      }
    }
  }

  std::map<GlobalId, InstanceMask> masks;
  for (const auto& g : gated) {
    for (GlobalId id : g.ids) {
      auto [it, inserted] = masks.try_emplace(id);
      if (inserted) {
        it->second.id = id;
        it->second.mask = Raster<std::uint8_t>(w, intrinsics.height, 0);
      }
      auto& mask = it->second.mask;
      for (const Pixel& p : g.footprint) {
        const bool visible = g.depth <= zmin(p.u, p.v);
        if (visible || Carries(gated[front(p.u, p.v)], id)) {
          mask(p.u, p.v) = 1;
        }
      }
    }
  }

  std::vector<InstanceMask> out;
  out.reserve(masks.size());
  for (auto& [id, m] : masks) {
    m.area = static_cast<std::size_t>(
        std::count(m.mask.pixels().begin(), m.mask.pixels().end(), 1));
    out.push_back(std::move(m));
  }
  return out;
}

double ComputeIou(const Raster<std::uint8_t>& a,
                  const Raster<std::uint8_t>& b) {
  if (!a.SameShape(b)) {
    throw std::invalid_argument("iou: mask shapes differ");
  }
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] != 0;
    const bool y = b[i] != 0;
    inter += x && y;
    uni += x || y;
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

MatchDecisions MatchInstances(const std::vector<InstanceMask>& masks,
                              const Raster<LocalInstanceId>& observed,
                              double theta_match, double theta_new,
                              PanopticMap& map) {
  if (theta_match < theta_new) {
    throw std::invalid_argument(
        "matching: theta_match must not be below theta_new");
  }
  std::map<LocalInstanceId, std::size_t> observed_area;
  for (LocalInstanceId z : observed.pixels()) {
    if (z != 0) ++observed_area[z];
  }

  // intersections[k][z]: overlap of mask k with observed instance z.
  std::vector<std::unordered_map<LocalInstanceId, std::size_t>> intersections(
      masks.size());
  for (std::size_t k = 0; k < masks.size(); ++k) {
    if (!masks[k].mask.SameShape(observed)) {
      throw std::invalid_argument("matching: mask shape differs from frame");
    }
    const auto& m = masks[k].mask;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0 && observed[i] != 0) ++intersections[k][observed[i]];
    }
  }

  MatchDecisions decisions;
  for (const auto& [z, area] : observed_area) {
    double best_iou = 0.0;
    GlobalId best_id = kNoInstance;
    for (std::size_t k = 0; k < masks.size(); ++k) {
      auto it = intersections[k].find(z);
      const std::size_t inter = it == intersections[k].end() ? 0 : it->second;
      const std::size_t uni = masks[k].area + area - inter;
      const double iou = uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
      if (iou > best_iou ||
          (iou == best_iou && iou > 0.0 && masks[k].id < best_id)) {
        best_iou = iou;
        best_id = masks[k].id;
      }
    }
    MatchDecision d;
    d.local_id = z;
    d.best_iou = best_iou;
    if (best_iou > theta_match) {
      d.outcome = MatchOutcome::kMatched;
      d.global_id = best_id;
    } else if (best_iou <= theta_new) {
      d.outcome = MatchOutcome::kNew;
      d.global_id = map.AllocateGlobalId();
    } else {
      d.outcome = MatchOutcome::kIgnored;
    }
    decisions.emplace(z, d);
  }
  return decisions;
}

std::string ToString(MatchOutcome outcome) {
  switch (outcome) {
    case MatchOutcome::kMatched:
      return "matched";
    case MatchOutcome::kNew:
      return "new";
    case MatchOutcome::kIgnored:
      return "ignored";
  }
  return "ignored";
}

std::string FormatDecision(std::uint64_t frame_index,
                           const MatchDecision& decision) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%llu %u %s %llu %.6f",
                static_cast<unsigned long long>(frame_index),
                static_cast<unsigned>(decision.local_id),
                ToString(decision.outcome).c_str(),
                static_cast<unsigned long long>(decision.global_id),
                decision.best_iou);
  return buf;
}

}  // namespace panmap
