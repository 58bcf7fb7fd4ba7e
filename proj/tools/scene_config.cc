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

#include "scene_config.h"

#include <stdexcept>

#include "json.hpp"

namespace panmap {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& key, const std::string& what) {
  throw std::invalid_argument("scene config: '" + key + "' " + what);
}

const json& Require(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) Bad(key, "is required");
  return j.at(key);
}

double Number(const json& j, const std::string& key) {
  const json& v = Require(j, key);
  if (!v.is_number()) Bad(key, "must be a number");
  return v.get<double>();
}

double NumberOr(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? Number(j, key) : fallback;
}

Eigen::Vector3d Vec3(const json& j, const std::string& key) {
  const json& v = Require(j, key);
  if (!v.is_array() || v.size() != 3) Bad(key, "must be an array of 3 numbers");
  Eigen::Vector3d out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_number()) Bad(key, "must be an array of 3 numbers");
    out(i) = v[i].get<double>();
  }
  return out;
}

ClassId ClassByName(const ClassTable& table, const json& j,
                    const std::string& key) {
  const json& v = Require(j, key);
  if (!v.is_string()) Bad(key, "must be a class name");
  const ClassId id = table.Find(v.get<std::string>());
  if (id == table.size()) Bad(key, "names unknown class " + v.dump());
  return id;
}

ClassTable ParseClasses(const json& j) {
  const json& c = Require(j, "classes");
  std::vector<std::string> stuff, things;
  for (const char* kind : {"stuff", "things"}) {
    const json& list = Require(c, kind);
    if (!list.is_array()) Bad(kind, "must be an array of names");
    for (const json& name : list) {
      if (!name.is_string()) Bad(kind, "must be an array of names");
      (std::string(kind) == "stuff" ? stuff : things)
          .push_back(name.get<std::string>());
    }
  }
  return ClassTable::FromNames(stuff, things);
}

WallSide ParseSide(const std::string& s) {
  if (s == "min_x") return WallSide::kMinX;
  if (s == "max_x") return WallSide::kMaxX;
  if (s == "min_y") return WallSide::kMinY;
  if (s == "max_y") return WallSide::kMaxY;
  Bad("side", "must be one of min_x, max_x, min_y, max_y");
}

}  // namespace

SimulationConfig ParseSimulationConfig(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scene config: ") + e.what());
  }
  SimulationConfig cfg;
  SceneSpec& s = cfg.scene;
  s.classes = ParseClasses(j);

  const json& room = Require(j, "room");
  s.room.bounds = {Vec3(room, "min"), Vec3(room, "max")};
  s.room.wall = ClassByName(s.classes, room, "wall");
  s.room.floor = ClassByName(s.classes, room, "floor");
  s.room.ceiling = ClassByName(s.classes, room, "ceiling");
  if (room.contains("doorway")) {
    const json& d = room.at("doorway");
    const json& side = Require(d, "side");
    if (!side.is_string()) Bad("side", "must be a string");
    s.room.doorway =
        Doorway{ParseSide(side.get<std::string>()), Number(d, "center"),
                Number(d, "width"), Number(d, "height")};
  }

  if (j.contains("objects")) {
    for (const json& o : j.at("objects")) {
      const json& type = Require(o, "type");
      SceneObject obj;
      if (type == "box") {
        obj.shape = Box{Vec3(o, "min"), Vec3(o, "max")};
      } else if (type == "sphere") {
        obj.shape = Sphere{Vec3(o, "center"), Number(o, "radius")};
      } else {
        Bad("type", "must be box or sphere");
      }
      obj.class_id = ClassByName(s.classes, o, "class");
      const json& id = Require(o, "id");
      if (!id.is_number_unsigned()) Bad("id", "must be a positive integer");
      obj.gt_instance_id = id.get<GlobalId>();
      s.objects.push_back(obj);
    }
  }

  const json& in = Require(j, "intrinsics");
  s.intrinsics = {Number(in, "fx"),
                  Number(in, "fy"),
                  Number(in, "cx"),
                  Number(in, "cy"),
                  static_cast<int>(Number(in, "width")),
                  static_cast<int>(Number(in, "height"))};

  if (j.contains("poses")) {
    for (const json& p : j.at("poses")) {
      if (!p.is_array() || p.size() != 16) Bad("poses", "need 16 numbers each");
      Eigen::Matrix4d m;
      for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = p[k].get<double>();
      s.trajectory.push_back(Pose::FromMatrix(m));
    }
  } else {
    const json& orbit = Require(j, "orbit");
    const double frames = Number(orbit, "frames");
    if (!(frames >= 1.0)) Bad("frames", "must be at least 1");
    s.trajectory = Orbit(
        Vec3(orbit, "center"), Number(orbit, "radius"), Number(orbit, "height"),
        static_cast<std::size_t>(frames), NumberOr(orbit, "start_angle", 0.0),
        orbit.value("clockwise", false));
  }

  if (j.contains("noise")) {
    const json& n = j.at("noise");
    cfg.noise.depth_sigma_at_1m = NumberOr(n, "depth_sigma_at_1m", 0.0);
    cfg.noise.sem_flip_prob = NumberOr(n, "sem_flip_prob", 0.0);
    cfg.noise.border_erode_px =
        static_cast<int>(NumberOr(n, "border_erode_px", 0.0));
    cfg.noise.seed = static_cast<std::uint64_t>(NumberOr(n, "seed", 0.0));
    if (n.contains("confusable")) {
      for (const auto& [from, to] : n.at("confusable").items()) {
        const ClassId f = s.classes.Find(from);
        if (f == s.classes.size()) Bad("confusable", "names unknown " + from);
        for (const json& name : to) {
          const ClassId t = s.classes.Find(name.get<std::string>());
          if (t == s.classes.size()) {
            Bad("confusable", "names unknown " + name.dump());
          }
          cfg.noise.confusable[f].push_back(t);
        }
      }
    }
  }
  cfg.id_seed = static_cast<std::uint64_t>(NumberOr(j, "id_seed", 0.0));
  s.Validate();
  cfg.noise.Validate();
  return cfg;
}

std::string DemoSceneConfig() {
  const SceneSpec s = DemoScene();
  json j;
  j["classes"] = {{"stuff", {"wall", "floor", "ceiling"}},
                  {"things", {"chair", "table", "sofa", "ball"}}};
  j["room"] = {
      {"min", {-3.0, -2.5, 0.0}},
      {"max", {3.0, 2.5, 2.8}},
      {"wall", "wall"},
      {"floor", "floor"},
      {"ceiling", "ceiling"},
      {"doorway",
       {{"side", "max_y"}, {"center", 1.5}, {"width", 0.9}, {"height", 2.0}}}};
  j["objects"] = json::array();
  for (const SceneObject& o : s.objects) {
    json obj;
    if (const auto* b = std::get_if<Box>(&o.shape)) {
      obj = {{"type", "box"},
             {"min", {b->min.x(), b->min.y(), b->min.z()}},
             {"max", {b->max.x(), b->max.y(), b->max.z()}}};
    } else {
      const auto& sp = std::get<Sphere>(o.shape);
      obj = {{"type", "sphere"},
             {"center", {sp.center.x(), sp.center.y(), sp.center.z()}},
             {"radius", sp.radius}};
    }
    obj["class"] = s.classes.at(o.class_id).name;
    obj["id"] = o.gt_instance_id;
    j["objects"].push_back(obj);
  }
  const Intrinsics& in = s.intrinsics;
  j["intrinsics"] = {{"fx", in.fx}, {"fy", in.fy},       {"cx", in.cx},
                     {"cy", in.cy}, {"width", in.width}, {"height", in.height}};
  j["orbit"] = {{"center", {0.0, 0.0, 0.4}},
                {"radius", 2.0},
                {"height", 1.6},
                {"frames", s.frame_count()}};
  return j.dump(2) + "\n";
}

}  // namespace panmap
