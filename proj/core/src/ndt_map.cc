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

#include "panmap/ndt_map.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace panmap {
namespace {

constexpr int kMortonBits = 21;
constexpr std::int64_t kMortonOffset = std::int64_t{1} << (kMortonBits - 1);

std::uint64_t Spread(std::uint64_t v) {
  v &= 0x1fffff;
  v = (v | v << 32) & 0x1f00000000ffff;
  v = (v | v << 16) & 0x1f0000ff0000ff;
  v = (v | v << 8) & 0x100f00f00f00f00f;
  v = (v | v << 4) & 0x10c30c30c30c30c3;
  v = (v | v << 2) & 0x1249249249249249;
  return v;
}

std::uint64_t Compact(std::uint64_t v) {
  v &= 0x1249249249249249;
  v = (v ^ (v >> 2)) & 0x10c30c30c30c30c3;
  v = (v ^ (v >> 4)) & 0x100f00f00f00f00f;
  v = (v ^ (v >> 8)) & 0x1f0000ff0000ff;
  v = (v ^ (v >> 16)) & 0x1f00000000ffff;
  v = (v ^ (v >> 32)) & 0x1fffff;
  return v;
}

std::uint64_t Biased(std::int64_t c) {
  if (c < -kMortonOffset || c >= kMortonOffset) {
    throw std::out_of_range("voxel index outside the addressable octree");
  }
  return static_cast<std::uint64_t>(c + kMortonOffset);
}

}  // namespace

VoxelIndex ToVoxelIndex(const Eigen::Vector3d& point, double voxel_size) {
  if (!(voxel_size > 0.0)) {
    throw std::invalid_argument("voxel size must be positive");
  }
  if (!point.allFinite()) {
    throw std::invalid_argument("cannot index a non-finite point");
  }
  return {static_cast<std::int64_t>(std::floor(point.x() / voxel_size)),
          static_cast<std::int64_t>(std::floor(point.y() / voxel_size)),
          static_cast<std::int64_t>(std::floor(point.z() / voxel_size))};
}

Eigen::Vector3d VoxelMinCorner(const VoxelIndex& index, double voxel_size) {
  return Eigen::Vector3d(static_cast<double>(index.x),
                         static_cast<double>(index.y),
                         static_cast<double>(index.z)) *
         voxel_size;
}

Eigen::Vector3d VoxelCenter(const VoxelIndex& index, double voxel_size) {
  return VoxelMinCorner(index, voxel_size) +
         Eigen::Vector3d::Constant(0.5 * voxel_size);
}

std::uint64_t MortonKey(const VoxelIndex& index) {
  return Spread(Biased(index.x)) | Spread(Biased(index.y)) << 1 |
         Spread(Biased(index.z)) << 2;
}

VoxelIndex FromMortonKey(std::uint64_t key) {
  return {static_cast<std::int64_t>(Compact(key)) - kMortonOffset,
          static_cast<std::int64_t>(Compact(key >> 1)) - kMortonOffset,
          static_cast<std::int64_t>(Compact(key >> 2)) - kMortonOffset};
}

void NdtShape::Add(const Eigen::Vector3d& point) {
  const Eigen::Vector3d d = point - anchor_;
  ++count_;
  sum_ += d;
  sqsum_.noalias() += d * d.transpose();
}

void NdtShape::SetStatistics(std::uint64_t count, const Eigen::Vector3d& sum,
                             const Eigen::Matrix3d& sqsum) {
  count_ = count;
  sum_ = sum;
  sqsum_ = sqsum;
}

Eigen::Vector3d NdtShape::Mean() const {
  return anchor_ + sum_ / static_cast<double>(count_);
}

Eigen::Matrix3d NdtShape::Covariance() const {
  const double n = static_cast<double>(count_);
  Eigen::Matrix3d cov = (sqsum_ - sum_ * sum_.transpose() / n) / (n - 1.0);
  return 0.5 * (cov + cov.transpose());
}

void Occupancy::Apply(double delta) {
  logodds = std::clamp(logodds + delta, kMin, kMax);
}

void NdtVoxel::IntegratePoint(const Eigen::Vector3d& point, double voxel_size) {
  if (!(ToVoxelIndex(point, voxel_size) == index)) {
    throw std::invalid_argument("point lies outside the voxel");
  }
  shape.Add(point);
}

std::optional<Gaussian> VoxelDistribution(const NdtShape& shape) {
  if (shape.count() < kMinDistributionPoints) return std::nullopt;
  Gaussian g;
  g.mean = shape.Mean();
  g.covariance =
      shape.Covariance() + kCovarianceEpsilon * Eigen::Matrix3d::Identity();
  return g;
}

PanopticMap::PanopticMap(double voxel_size, ClassTable class_table)
    : voxel_size_(voxel_size), class_table_(std::move(class_table)) {
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    throw std::invalid_argument("voxel size must be positive");
  }
}

std::optional<VoxelSlot> PanopticMap::FindSlot(const VoxelIndex& index) const {
  auto it = index_.find(MortonKey(index));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const NdtVoxel* PanopticMap::Find(const VoxelIndex& index) const {
  auto slot = FindSlot(index);
  return slot ? &voxels_[*slot] : nullptr;
}

const NdtVoxel* PanopticMap::Find(const Eigen::Vector3d& point) const {
  return Find(ToVoxelIndex(point, voxel_size_));
}

VoxelSlot PanopticMap::FindOrCreate(const VoxelIndex& index) {
  const std::uint64_t key = MortonKey(index);
  auto [it, inserted] =
      index_.try_emplace(key, static_cast<VoxelSlot>(voxels_.size()));
  if (inserted) {
    if (voxels_.size() >= std::numeric_limits<VoxelSlot>::max()) {
      index_.erase(it);
      throw std::length_error("voxel map is full");
    }
    voxels_.emplace_back(index, voxel_size_);
  }
  return it->second;
}

void PanopticMap::TraverseRay(
    const Eigen::Vector3d& origin, const Eigen::Vector3d& endpoint,
    const std::function<void(const VoxelIndex&)>& visit) const {
  const VoxelIndex start = ToVoxelIndex(origin, voxel_size_);
  const VoxelIndex end = ToVoxelIndex(endpoint, voxel_size_);
  const Eigen::Vector3d dir = endpoint - origin;

  std::int64_t cur[3] = {start.x, start.y, start.z};
  const std::int64_t last[3] = {end.x, end.y, end.z};
  std::int64_t step[3];
  double t_max[3];
  double t_delta[3];
  std::int64_t remaining = 0;
  for (int a = 0; a < 3; ++a) {
    remaining += std::abs(last[a] - cur[a]);
    if (dir[a] > 0.0) {
      step[a] = 1;
      t_delta[a] = voxel_size_ / dir[a];
      t_max[a] = ((cur[a] + 1) * voxel_size_ - origin[a]) / dir[a];
    } else if (dir[a] < 0.0) {
      step[a] = -1;
      t_delta[a] = -voxel_size_ / dir[a];
      t_max[a] = (cur[a] * voxel_size_ - origin[a]) / dir[a];
    } else {
      step[a] = 0;
      t_delta[a] = std::numeric_limits<double>::infinity();
      t_max[a] = std::numeric_limits<double>::infinity();
    }
  }

  // The lattice path from start to end has exactly `remaining` face steps.
  // Steps along an axis that already reached its target are suppressed so
  // rounding at voxel boundaries cannot overshoot.
  for (; remaining > 0; --remaining) {
    visit({cur[0], cur[1], cur[2]});
    int axis = -1;
    for (int a = 0; a < 3; ++a) {
      if (cur[a] == last[a]) continue;
      if (axis < 0 || t_max[a] < t_max[axis]) axis = a;
    }
    cur[axis] += step[axis];
    t_max[axis] += t_delta[axis];
  }
}

void PanopticMap::UpdateOccupancy(const Eigen::Vector3d& origin,
                                  const Eigen::Vector3d& endpoint,
                                  bool is_hit) {
  if (origin == endpoint) return;
  TraverseRay(origin, endpoint, [this](const VoxelIndex& index) {
    voxels_[FindOrCreate(index)].occupancy.Apply(Occupancy::kMiss);
  });
  if (is_hit) {
    voxels_[FindOrCreate(endpoint)].occupancy.Apply(Occupancy::kHit);
  }
}

void PanopticMap::IntegrateScan(const Eigen::Vector3d& origin,
                                std::span<const Eigen::Vector3d> endpoints) {
  std::unordered_set<std::uint64_t> hit_keys;
  std::vector<VoxelIndex> hits;
  for (const auto& p : endpoints) {
    const VoxelIndex index = ToVoxelIndex(p, voxel_size_);
    if (hit_keys.insert(MortonKey(index)).second) hits.push_back(index);
  }
  std::unordered_set<std::uint64_t> free_keys;
  std::vector<VoxelIndex> free;
  for (const auto& p : endpoints) {
    if (p == origin) continue;
    TraverseRay(origin, p, [&](const VoxelIndex& index) {
      const std::uint64_t key = MortonKey(index);
      if (hit_keys.count(key) == 0 && free_keys.insert(key).second) {
        free.push_back(index);
      }
    });
  }
  for (const auto& index : free) {
    voxels_[FindOrCreate(index)].occupancy.Apply(Occupancy::kMiss);
  }
  for (const auto& index : hits) {
    voxels_[FindOrCreate(index)].occupancy.Apply(Occupancy::kHit);
  }
}

void PanopticMap::AssignVoxels(std::vector<NdtVoxel> voxels) {
  std::unordered_map<std::uint64_t, VoxelSlot> index;
  index.reserve(voxels.size());
  for (std::size_t i = 0; i < voxels.size(); ++i) {
    if (!index
             .try_emplace(MortonKey(voxels[i].index), static_cast<VoxelSlot>(i))
             .second) {
      throw std::invalid_argument("duplicate voxel index");
    }
  }
  voxels_ = std::move(voxels);
  index_ = std::move(index);
}

}  // namespace panmap
