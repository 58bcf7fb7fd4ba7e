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

// Synthetic scenes built from axis-aligned boxes and spheres inside a box
// room, rendered into labeled depth frames.

#ifndef PANMAP_SCENE_SIMULATOR_H_
#define PANMAP_SCENE_SIMULATOR_H_

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "panmap/class_table.h"
#include "panmap/dataset_io.h"
#include "panmap/evaluation.h"
#include "panmap/geometry.h"

namespace panmap {

struct Box {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();
};

struct Sphere {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 0.0;
};

struct SceneObject {
  std::variant<Box, Sphere> shape;
  ClassId class_id = kVoidClass;
  GlobalId gt_instance_id = kNoInstance;
};

enum class WallSide { kMinX, kMaxX, kMinY, kMaxY };

// Opening in one wall, starting at floor level. `center` is measured along
// the wall in world coordinates.
struct Doorway {
  WallSide side = WallSide::kMinX;
  double center = 0.0;
  double width = 0.0;
  double height = 0.0;
};

struct Room {
  Box bounds;
  ClassId wall = kVoidClass;
  ClassId floor = kVoidClass;
  ClassId ceiling = kVoidClass;
  std::optional<Doorway> doorway;
};

struct SceneSpec {
  ClassTable classes;
  Room room;
  std::vector<SceneObject> objects;
  std::vector<Pose> trajectory;
  Intrinsics intrinsics;

  std::size_t frame_count() const { return trajectory.size(); }
  // Throws std::invalid_argument unless the room is non-degenerate with stuff
  // surfaces, every object is a thing lying inside the room, and ground-truth
  // instance ids are unique and positive.
  void Validate() const;
};

// `n` cameras on a horizontal circle at height `height`, all aimed at
// `center`.
std::vector<Pose> Orbit(const Eigen::Vector3d& center, double radius,
                        double height, std::size_t n, double start_angle = 0.0,
                        bool clockwise = false);

struct RayHit {
  double t = 0.0;  // along the (unnormalized) direction
  ClassId class_id = kVoidClass;
  GlobalId instance_id = kNoInstance;
  int object = -1;  // index into SceneSpec::objects, -1 for the room
};

std::optional<RayHit> CastRay(const SceneSpec& scene,
                              const Eigen::Vector3d& origin,
                              const Eigen::Vector3d& direction);

// Noise-free frame for trajectory[pose_index]. Depth is camera z, 0 where
// nothing is hit. Frame-local instance ids are a per-frame permutation of
// 1..objects, derived from `id_seed`. Ground truth carries the scene ids.
// Throws std::out_of_range for a bad pose index.
LabeledFrame RaycastFrame(const SceneSpec& scene, std::size_t pose_index,
                          std::uint64_t id_seed = 0);

struct NoiseSpec {
  // Standard deviation of depth noise at 1 m; grows with depth squared.
  double depth_sigma_at_1m = 0.0;
  double sem_flip_prob = 0.0;
  // Classes a label may be flipped to. Classes without entries never flip.
  std::map<ClassId, std::vector<ClassId>> confusable;
  int border_erode_px = 0;
  std::uint64_t seed = 0;

  void Validate() const;
};

inline constexpr double kFlippedScore = 0.6;

// Corrupts the input channels of `frame`; ground truth is left untouched.
// Deterministic in (noise, frame_index).
LabeledFrame ApplyNoise(const LabeledFrame& frame, const NoiseSpec& noise,
                        std::size_t frame_index);

// Uniform samples on every primitive face, round(area * density) per face
// (room walls skip the doorway opening).
GroundTruthCloud SampleGtCloud(const SceneSpec& scene,
                               double points_per_square_meter,
                               std::uint64_t seed);

// Unprojects every labeled pixel and keeps one point per `cell` sized cube:
// the centroid, labeled with the most frequent (class, instance).
GroundTruthCloud GtCloudFromFrames(std::span<const LabeledFrame> frames,
                                   double cell = 0.01);

// Room with a doorway, three thing objects (two boxes and a sphere) and a
// 60-frame orbit at 160x120.
SceneSpec DemoScene(std::size_t frames = 60);
// Confusion table for DemoScene classes.
NoiseSpec DemoNoise(double sem_flip_prob, double depth_sigma_at_1m,
                    int border_erode_px, std::uint64_t seed);

}  // namespace panmap

#endif  // PANMAP_SCENE_SIMULATOR_H_
