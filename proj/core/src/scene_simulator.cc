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

#include "panmap/scene_simulator.h"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace panmap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distribution helpers on top of mt19937_64, whose output sequence is fixed
// by the standard (the std:: distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() { return (engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  std::size_t Index(std::size_t n) { return engine_() % n; }
  double Normal() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::optional<double> IntersectBox(const Box& box, const Eigen::Vector3d& o,
                                   const Eigen::Vector3d& d) {
  double t_near = -kInf;
  double t_far = kInf;
  for (int i = 0; i < 3; ++i) {
    if (d(i) == 0.0) {
      if (o(i) < box.min(i) || o(i) > box.max(i)) return std::nullopt;
      continue;
    }
    double t1 = (box.min(i) - o(i)) / d(i);
    double t2 = (box.max(i) - o(i)) / d(i);
    if (t1 > t2) std::swap(t1, t2);
    t_near = std::max(t_near, t1);
    t_far = std::min(t_far, t2);
  }
  if (t_near > t_far || !(t_near > 0.0)) return std::nullopt;
  return t_near;
}

std::optional<double> IntersectSphere(const Sphere& s, const Eigen::Vector3d& o,
                                      const Eigen::Vector3d& d) {
  const Eigen::Vector3d oc = o - s.center;
  const double a = d.squaredNorm();
  const double b = oc.dot(d);
  const double c = oc.squaredNorm() - s.radius * s.radius;
  const double disc = b * b - a * c;
  if (disc < 0.0) return std::nullopt;
  const double t = (-b - std::sqrt(disc)) / a;
  if (!(t > 0.0)) return std::nullopt;
  return t;
}

bool InDoorway(const Room& room, WallSide side, const Eigen::Vector3d& p) {
  if (!room.doorway || room.doorway->side != side) return false;
  const Doorway& door = *room.doorway;
  const bool along_y = side == WallSide::kMinX || side == WallSide::kMaxX;
  const double along = along_y ? p.y() : p.x();
  return std::abs(along - door.center) <= 0.5 * door.width &&
         p.z() <= room.bounds.min.z() + door.height;
}

// Exit point of a ray leaving the room from inside.
std::optional<RayHit> IntersectRoom(const Room& room, const Eigen::Vector3d& o,
                                    const Eigen::Vector3d& d) {
  double t_exit = kInf;
  int axis = -1;
  bool positive = false;
  for (int i = 0; i < 3; ++i) {
    if (d(i) == 0.0) continue;
    const double bound = d(i) > 0.0 ? room.bounds.max(i) : room.bounds.min(i);
    const double t = (bound - o(i)) / d(i);
    if (t < t_exit) {
      t_exit = t;
      axis = i;
      positive = d(i) > 0.0;
    }
  }
  if (axis < 0 || !(t_exit > 0.0)) return std::nullopt;
  RayHit hit;
  hit.t = t_exit;
  if (axis == 2) {
    hit.class_id = positive ? room.ceiling : room.floor;
    return hit;
  }
  const WallSide side = axis == 0
                            ? (positive ? WallSide::kMaxX : WallSide::kMinX)
                            : (positive ? WallSide::kMaxY : WallSide::kMinY);
  if (InDoorway(room, side, o + t_exit * d)) return std::nullopt;
  hit.class_id = room.wall;
  return hit;
}

bool Inside(const Box& inner, const Box& outer) {
  return (inner.min.array() >= outer.min.array()).all() &&
         (inner.max.array() <= outer.max.array()).all();
}

Box Bounds(const SceneObject& object) {
  if (const auto* box = std::get_if<Box>(&object.shape)) return *box;
  const auto& s = std::get<Sphere>(object.shape);
  const Eigen::Vector3d r = Eigen::Vector3d::Constant(s.radius);
  return {s.center - r, s.center + r};
}

// Uniform samples on the axis-aligned rectangle of `box` at `axis` = value.
void SampleRectangle(const Box& box, int axis, double value, double density,
                     ClassId class_id, GlobalId instance_id, Rng& rng,
                     const std::function<bool(const Eigen::Vector3d&)>& skip,
                     GroundTruthCloud& out) {
  const int a = (axis + 1) % 3;
  const int b = (axis + 2) % 3;
  const double area = (box.max(a) - box.min(a)) * (box.max(b) - box.min(b));
  const long long n = std::llround(area * density);
  for (long long k = 0; k < n; ++k) {
    Eigen::Vector3d p;
    p(axis) = value;
    p(a) = rng.Uniform(box.min(a), box.max(a));
    p(b) = rng.Uniform(box.min(b), box.max(b));
    if (skip && skip(p)) continue;
    out.push_back({p, class_id, instance_id});
  }
}

}  // namespace

void SceneSpec::Validate() const {
  intrinsics.Validate();
  const Box& b = room.bounds;
  if (!((b.max - b.min).array() > 0.0).all()) {
    throw std::invalid_argument("scene: room box is degenerate");
  }
  for (ClassId c : {room.wall, room.floor, room.ceiling}) {
    if (!classes.IsStuff(c)) {
      throw std::invalid_argument("scene: room surfaces must be stuff classes");
    }
  }
  std::set<GlobalId> ids;
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const SceneObject& o = objects[k];
    const std::string name = "scene: object " + std::to_string(k);
    if (!classes.IsThing(o.class_id)) {
      throw std::invalid_argument(name + " must have a thing class");
    }
    if (o.gt_instance_id == kNoInstance ||
        !ids.insert(o.gt_instance_id).second) {
      throw std::invalid_argument(name + " needs a unique positive id");
    }
    if (const auto* s = std::get_if<Sphere>(&o.shape);
        s && !(s->radius > 0.0)) {
      throw std::invalid_argument(name + " has a non-positive radius");
    }
    const Box ob = Bounds(o);
    if (!((ob.max - ob.min).array() > 0.0).all() || !Inside(ob, b)) {
      throw std::invalid_argument(name + " is degenerate or outside the room");
    }
  }
}

std::vector<Pose> Orbit(const Eigen::Vector3d& center, double radius,
                        double height, std::size_t n, double start_angle,
                        bool clockwise) {
  std::vector<Pose> poses;
  poses.reserve(n);
  const double sign = clockwise ? -1.0 : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = start_angle + sign * 2.0 * std::numbers::pi * i / n;
    const Eigen::Vector3d eye(center.x() + radius * std::cos(a),
                              center.y() + radius * std::sin(a), height);
    poses.push_back(Pose::LookAt(eye, center));
  }
  return poses;
}

std::optional<RayHit> CastRay(const SceneSpec& scene,
                              const Eigen::Vector3d& origin,
                              const Eigen::Vector3d& direction) {
  std::optional<RayHit> best = IntersectRoom(scene.room, origin, direction);
  for (std::size_t k = 0; k < scene.objects.size(); ++k) {
    const SceneObject& o = scene.objects[k];
    const std::optional<double> t =
        std::holds_alternative<Box>(o.shape)
            ? IntersectBox(std::get<Box>(o.shape), origin, direction)
            : IntersectSphere(std::get<Sphere>(o.shape), origin, direction);
    if (!t || (best && !(*t <= best->t))) continue;
    best = RayHit{*t, o.class_id, o.gt_instance_id, static_cast<int>(k)};
  }
  return best;
}

LabeledFrame RaycastFrame(const SceneSpec& scene, std::size_t pose_index,
                          std::uint64_t id_seed) {
  if (pose_index >= scene.trajectory.size()) {
    throw std::out_of_range("scene: pose index " + std::to_string(pose_index) +
                            " beyond trajectory");
  }
  const Intrinsics& intr = scene.intrinsics;
  const Pose& pose = scene.trajectory[pose_index];
  const int w = intr.width;
  const int h = intr.height;

  // Per-frame permutation of local ids.
  std::vector<LocalInstanceId> local(scene.objects.size());
  for (std::size_t k = 0; k < local.size(); ++k) {
    local[k] = static_cast<LocalInstanceId>(k + 1);
  }
  Rng rng(Mix(id_seed) ^ Mix(pose_index + 1));
  for (std::size_t k = local.size(); k > 1; --k) {
    std::swap(local[k - 1], local[rng.Index(k)]);
  }

  LabeledFrame lf;
  PanopticFrame& f = lf.frame;
  f.pose = pose;
  f.intrinsics = intr;
  f.depth = Raster<double>(w, h, 0.0);
  f.semantic = Raster<ClassId>(w, h, kVoidClass);
  f.instance = Raster<LocalInstanceId>(w, h, 0);
  lf.gt_class = Raster<ClassId>(w, h, kVoidClass);
  lf.gt_instance = Raster<GlobalId>(w, h, kNoInstance);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const Eigen::Vector3d dir = pose.rotation() * CameraRay(u, v, intr);
      const auto hit = CastRay(scene, pose.translation(), dir);
      if (!hit) continue;
      f.depth(u, v) = hit->t;
      f.semantic(u, v) = hit->class_id;
      lf.gt_class(u, v) = hit->class_id;
      if (hit->object >= 0) {
        f.instance(u, v) = local[hit->object];
        lf.gt_instance(u, v) = hit->instance_id;
      }
    }
  }
  return lf;
}

void NoiseSpec::Validate() const {
  if (!(depth_sigma_at_1m >= 0.0) || !std::isfinite(depth_sigma_at_1m)) {
    throw std::invalid_argument("noise: depth sigma must be non-negative");
  }
  if (!(sem_flip_prob >= 0.0 && sem_flip_prob <= 1.0)) {
    throw std::invalid_argument("noise: flip probability must lie in [0, 1]");
  }
  if (border_erode_px < 0) {
    throw std::invalid_argument("noise: erosion must be non-negative");
  }
  for (const auto& [from, to] : confusable) {
    if (to.empty()) {
      throw std::invalid_argument("noise: empty confusion list for class " +
                                  std::to_string(from));
    }
  }
}

LabeledFrame ApplyNoise(const LabeledFrame& input, const NoiseSpec& noise,
                        std::size_t frame_index) {
  noise.Validate();
  LabeledFrame out = input;
  PanopticFrame& f = out.frame;
  const int w = f.width();
  const int h = f.height();
  Rng rng(Mix(noise.seed) ^ Mix(frame_index + 1));

  if (noise.depth_sigma_at_1m > 0.0) {
    for (std::size_t i = 0; i < f.depth.size(); ++i) {
      const double z = f.depth[i];
      if (!(z > 0.0)) continue;
      const double noisy = z + noise.depth_sigma_at_1m * z * z * rng.Normal();
      f.depth[i] = noisy > 0.0 ? noisy : 0.0;
    }
  }

  if (noise.sem_flip_prob > 0.0) {
    for (std::size_t i = 0; i < f.semantic.size(); ++i) {
      const auto it = noise.confusable.find(f.semantic[i]);
      if (it == noise.confusable.end()) continue;
      if (!(rng.Uniform() < noise.sem_flip_prob)) continue;
      f.semantic[i] = it->second[rng.Index(it->second.size())];
      if (f.semantic_score.empty()) {
        f.semantic_score = Raster<double>(w, h, 1.0);
      }
      f.semantic_score[i] = kFlippedScore;
    }
  }

  if (noise.border_erode_px > 0) {
    const int r = noise.border_erode_px;
    const Raster<LocalInstanceId> original = input.frame.instance;
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        const LocalInstanceId z = original(u, v);
        if (z == 0) continue;
        bool border = false;
        for (int dv = -r; dv <= r && !border; ++dv) {
          for (int du = -r; du <= r; ++du) {
            const int nu = u + du;
            const int nv = v + dv;
            if (original.Contains(nu, nv) && original(nu, nv) != z) {
              border = true;
              break;
            }
          }
        }
        if (!border) continue;
        f.instance(u, v) = 0;
        f.semantic(u, v) = kVoidClass;
      }
    }
  }
  return out;
}

GroundTruthCloud SampleGtCloud(const SceneSpec& scene,
                               double points_per_square_meter,
                               std::uint64_t seed) {
  if (!(points_per_square_meter > 0.0) ||
      !std::isfinite(points_per_square_meter)) {
    throw std::invalid_argument("gt cloud: density must be positive");
  }
  Rng rng(Mix(seed));
  GroundTruthCloud cloud;
  const Room& room = scene.room;
  const Box& rb = room.bounds;
  const double d = points_per_square_meter;
  SampleRectangle(rb, 2, rb.min.z(), d, room.floor, kNoInstance, rng, {},
                  cloud);
  SampleRectangle(rb, 2, rb.max.z(), d, room.ceiling, kNoInstance, rng, {},
                  cloud);
  const std::array<std::pair<WallSide, std::pair<int, bool>>, 4> walls = {{
      {WallSide::kMinX, {0, false}},
      {WallSide::kMaxX, {0, true}},
      {WallSide::kMinY, {1, false}},
      {WallSide::kMaxY, {1, true}},
  }};
  for (const auto& [side, face] : walls) {
    const auto [axis, at_max] = face;
    const WallSide s = side;
    SampleRectangle(
        rb, axis, at_max ? rb.max(axis) : rb.min(axis), d, room.wall,
        kNoInstance, rng,
        [&room, s](const Eigen::Vector3d& p) { return InDoorway(room, s, p); },
        cloud);
  }
  for (const SceneObject& o : scene.objects) {
    if (const auto* box = std::get_if<Box>(&o.shape)) {
      for (int axis = 0; axis < 3; ++axis) {
        for (double value : {box->min(axis), box->max(axis)}) {
          SampleRectangle(*box, axis, value, d, o.class_id, o.gt_instance_id,
                          rng, {}, cloud);
        }
      }
      continue;
    }
    const Sphere& s = std::get<Sphere>(o.shape);
    const long long n =
        std::llround(4.0 * std::numbers::pi * s.radius * s.radius * d);
    for (long long k = 0; k < n; ++k) {
      Eigen::Vector3d g(rng.Normal(), rng.Normal(), rng.Normal());
      while (g.norm() < 1e-12) g = {rng.Normal(), rng.Normal(), rng.Normal()};
      cloud.push_back(
          {s.center + s.radius * g.normalized(), o.class_id, o.gt_instance_id});
    }
  }
  return cloud;
}

GroundTruthCloud GtCloudFromFrames(std::span<const LabeledFrame> frames,
                                   double cell) {
  if (!(cell > 0.0)) throw std::invalid_argument("gt cloud: cell must be > 0");
  struct Cell {
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    std::size_t n = 0;
    std::map<std::pair<ClassId, GlobalId>, std::size_t> votes;
  };
  std::map<std::array<std::int64_t, 3>, Cell> cells;
  for (const LabeledFrame& lf : frames) {
    if (!lf.has_ground_truth()) continue;
    const PanopticFrame& f = lf.frame;
    for (int v = 0; v < f.height(); ++v) {
      for (int u = 0; u < f.width(); ++u) {
        const ClassId c = lf.gt_class(u, v);
        if (c == kVoidClass) continue;
        const auto p = Unproject({u, v}, f.depth(u, v), f.intrinsics, f.pose);
        if (!p) continue;
        const std::array<std::int64_t, 3> key = {
            static_cast<std::int64_t>(std::floor(p->x() / cell)),
            static_cast<std::int64_t>(std::floor(p->y() / cell)),
            static_cast<std::int64_t>(std::floor(p->z() / cell))};
        Cell& entry = cells[key];
        entry.sum += *p;
        ++entry.n;
        ++entry.votes[{c, lf.gt_instance(u, v)}];
      }
    }
  }
  GroundTruthCloud cloud;
  cloud.reserve(cells.size());
  for (const auto& [key, entry] : cells) {
    auto best = entry.votes.begin();
    for (auto it = entry.votes.begin(); it != entry.votes.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    cloud.push_back({entry.sum / static_cast<double>(entry.n),
                     best->first.first, best->first.second});
  }
  return cloud;
}

SceneSpec DemoScene(std::size_t frames) {
  SceneSpec s;
  s.classes = ClassTable::FromNames({"wall", "floor", "ceiling"},
                                    {"chair", "table", "sofa", "ball"});
  s.room.bounds = {{-3.0, -2.5, 0.0}, {3.0, 2.5, 2.8}};
  s.room.wall = s.classes.Find("wall");
  s.room.floor = s.classes.Find("floor");
  s.room.ceiling = s.classes.Find("ceiling");
  s.room.doorway = Doorway{WallSide::kMaxY, 1.5, 0.9, 2.0};
  s.objects = {
      {Box{{-0.9, -0.5, 0.0}, {-0.3, 0.3, 0.75}}, s.classes.Find("table"), 1},
      {Box{{0.4, -0.9, 0.0}, {1.4, -0.2, 0.8}}, s.classes.Find("sofa"), 2},
      {Sphere{{0.3, 0.8, 0.35}, 0.35}, s.classes.Find("ball"), 3},
  };
  s.intrinsics = {120.0, 120.0, 79.5, 59.5, 160, 120};
  s.trajectory = Orbit({0.0, 0.0, 0.4}, 2.0, 1.6, frames);
  return s;
}

NoiseSpec DemoNoise(double sem_flip_prob, double depth_sigma_at_1m,
                    int border_erode_px, std::uint64_t seed) {
  const ClassTable t = DemoScene(1).classes;
  NoiseSpec n;
  n.sem_flip_prob = sem_flip_prob;
  n.depth_sigma_at_1m = depth_sigma_at_1m;
  n.border_erode_px = border_erode_px;
  n.seed = seed;
  auto id = [&t](const char* name) { return t.Find(name); };
  n.confusable = {
      {id("wall"), {id("ceiling")}}, {id("floor"), {id("wall")}},
      {id("ceiling"), {id("wall")}}, {id("chair"), {id("sofa")}},
      {id("table"), {id("sofa")}},   {id("sofa"), {id("chair")}},
      {id("ball"), {id("chair")}},
  };
  return n;
}

}  // namespace panmap
