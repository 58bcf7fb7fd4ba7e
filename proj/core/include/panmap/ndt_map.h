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

// Occupancy-NDT voxel map.
//
// Every voxel carries an incremental Gaussian of the surface points that fell
// into it, an occupancy log-odds value, and the semantic and instance
// histograms used for panoptic mapping. Voxels live in a linear octree: each
// lattice index is interleaved into a 63-bit Morton key, which addresses the
// leaf directly without storing the interior nodes.

#ifndef PANMAP_NDT_MAP_H_
#define PANMAP_NDT_MAP_H_

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "panmap/class_table.h"
#include "panmap/histograms.h"
#include "panmap/labels.h"

namespace panmap {

struct VoxelIndex {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend bool operator==(const VoxelIndex&, const VoxelIndex&) = default;
};

// Per-axis floor(point / voxel_size). Throws std::invalid_argument for a
// non-finite point or non-positive voxel size.
VoxelIndex ToVoxelIndex(const Eigen::Vector3d& point, double voxel_size);
Eigen::Vector3d VoxelCenter(const VoxelIndex& index, double voxel_size);
Eigen::Vector3d VoxelMinCorner(const VoxelIndex& index, double voxel_size);

// Each axis must lie in [-2^20, 2^20); throws std::out_of_range otherwise.
std::uint64_t MortonKey(const VoxelIndex& index);
VoxelIndex FromMortonKey(std::uint64_t key);

// Sufficient statistics (n, sum p, sum p p^T) of the points in a voxel. Sums
// are taken relative to a fixed anchor, the voxel's min corner, so the
// covariance does not suffer cancellation far from the world origin.
class NdtShape {
 public:
  NdtShape() = default;
  explicit NdtShape(const Eigen::Vector3d& anchor) : anchor_(anchor) {}

  void Add(const Eigen::Vector3d& point);

  std::uint64_t count() const { return count_; }
  const Eigen::Vector3d& anchor() const { return anchor_; }
  // Anchored sums as stored on disk.
  const Eigen::Vector3d& sum() const { return sum_; }
  const Eigen::Matrix3d& sqsum() const { return sqsum_; }
  void SetStatistics(std::uint64_t count, const Eigen::Vector3d& sum,
                     const Eigen::Matrix3d& sqsum);

  // Requires count() >= 1.
  Eigen::Vector3d Mean() const;
  // Sample covariance (divides by n - 1). Requires count() >= 2.
  Eigen::Matrix3d Covariance() const;

  friend bool operator==(const NdtShape&, const NdtShape&) = default;

 private:
  Eigen::Vector3d anchor_ = Eigen::Vector3d::Zero();
  std::uint64_t count_ = 0;
  Eigen::Vector3d sum_ = Eigen::Vector3d::Zero();
  Eigen::Matrix3d sqsum_ = Eigen::Matrix3d::Zero();
};

struct Occupancy {
  static constexpr double kHit = 0.85;
  static constexpr double kMiss = -0.4;
  static constexpr double kMin = -2.0;
  static constexpr double kMax = 3.5;

  double logodds = 0.0;

  void Apply(double delta);

  friend bool operator==(const Occupancy&, const Occupancy&) = default;
};

// Minimum point count for a usable distribution.
inline constexpr std::uint64_t kMinDistributionPoints = 3;
// Isotropic regularization added at query time, in m^2.
inline constexpr double kCovarianceEpsilon = 1e-6;

struct Gaussian {
  Eigen::Vector3d mean;
  Eigen::Matrix3d covariance;
};

struct CachedLabel {
  PanopticLabel3D panoptic;
  std::optional<ClassId> semantic;
  std::uint64_t revision = 0;
  double theta_stuff = 0.0;
  double theta_observation = 0.0;
};

struct NdtVoxel {
  NdtVoxel() = default;
  NdtVoxel(const VoxelIndex& voxel_index, double voxel_size)
      : index(voxel_index), shape(VoxelMinCorner(voxel_index, voxel_size)) {}

  VoxelIndex index;
  NdtShape shape;
  Occupancy occupancy;
  SemanticHistogram semantic;
  InstanceHistogram instances;
  std::uint64_t semantic_updates = 0;  // n^L
  std::uint64_t instance_updates = 0;  // n^Z
  // Bumped on every histogram write; stamps the cached label.
  std::uint64_t revision = 0;
  std::optional<CachedLabel> label_cache;

  // Adds a surface point. Throws std::invalid_argument if the point does not
  // fall inside this voxel.
  void IntegratePoint(const Eigen::Vector3d& point, double voxel_size);
};

// Mean and regularized covariance; nullopt below kMinDistributionPoints.
std::optional<Gaussian> VoxelDistribution(const NdtShape& shape);
inline std::optional<Gaussian> VoxelDistribution(const NdtVoxel& voxel) {
  return VoxelDistribution(voxel.shape);
}

using VoxelSlot = std::uint32_t;

class PanopticMap {
 public:
  // Throws std::invalid_argument for a non-positive voxel size.
  PanopticMap(double voxel_size, ClassTable class_table);

  double voxel_size() const { return voxel_size_; }
  const ClassTable& class_table() const { return class_table_; }

  std::size_t size() const { return voxels_.size(); }
  std::span<NdtVoxel> voxels() { return voxels_; }
  std::span<const NdtVoxel> voxels() const { return voxels_; }
  NdtVoxel& voxel(VoxelSlot slot) { return voxels_[slot]; }
  const NdtVoxel& voxel(VoxelSlot slot) const { return voxels_[slot]; }

  std::optional<VoxelSlot> FindSlot(const VoxelIndex& index) const;
  const NdtVoxel* Find(const VoxelIndex& index) const;
  // findnode: the voxel containing `point`, if it exists.
  const NdtVoxel* Find(const Eigen::Vector3d& point) const;
  VoxelSlot FindOrCreate(const VoxelIndex& index);
  VoxelSlot FindOrCreate(const Eigen::Vector3d& point) {
    return FindOrCreate(ToVoxelIndex(point, voxel_size_));
  }

  // Casts a ray on the voxel lattice. Every voxel traversed before the
  // endpoint's voxel receives a miss; the endpoint voxel receives a hit if
  // `is_hit`. A zero-length ray is a no-op.
  void UpdateOccupancy(const Eigen::Vector3d& origin,
                       const Eigen::Vector3d& endpoint, bool is_hit);

  // Batched variant for one scan: each voxel is updated at most once, and a
  // voxel that holds an endpoint is never also marked free.
  void IntegrateScan(const Eigen::Vector3d& origin,
                     std::span<const Eigen::Vector3d> endpoints);

  GlobalId AllocateGlobalId() { return next_global_id_++; }
  GlobalId next_global_id() const { return next_global_id_; }
  void set_next_global_id(GlobalId id) { next_global_id_ = id; }

  std::uint64_t frame_counter() const { return frame_counter_; }
  void AdvanceFrame() { ++frame_counter_; }

  // Replaces all voxels (used by deserialization). Throws on duplicates.
  void AssignVoxels(std::vector<NdtVoxel> voxels);

 private:
  // Visits voxels from the origin's voxel up to, excluding, the endpoint's.
  void TraverseRay(const Eigen::Vector3d& origin,
                   const Eigen::Vector3d& endpoint,
                   const std::function<void(const VoxelIndex&)>& visit) const;

  double voxel_size_;
  ClassTable class_table_;
  std::vector<NdtVoxel> voxels_;
  std::unordered_map<std::uint64_t, VoxelSlot> index_;
  GlobalId next_global_id_ = 1;
  std::uint64_t frame_counter_ = 0;
};

}  // namespace panmap

#endif  // PANMAP_NDT_MAP_H_
