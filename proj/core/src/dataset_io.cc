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

#include "panmap/dataset_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "panmap/pgm.h"

namespace panmap {
namespace fs = std::filesystem;
namespace {

constexpr double kScoreScale = 65535.0;

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint16_t DepthToMillimeters(double d) {
  if (!std::isfinite(d) || d <= 0.0) return 0;
  const long long mm = std::llround(d * 1000.0);
  return mm > 65535 ? 0 : static_cast<std::uint16_t>(mm);
}

std::uint16_t ScoreToWord(double s) {
  return static_cast<std::uint16_t>(
      std::llround(std::clamp(s, 0.0, 1.0) * kScoreScale));
}

template <typename T>
Raster<std::uint16_t> ToWords(const Raster<T>& in, std::uint64_t limit,
                              const char* what) {
  Raster<std::uint16_t> out(in.width(), in.height(), 0);
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (static_cast<std::uint64_t>(in[i]) > limit) {
      throw std::invalid_argument(std::string(what) + " value " +
                                  std::to_string(in[i]) + " not encodable");
    }
    out[i] = static_cast<std::uint16_t>(in[i]);
  }
  return out;
}

template <typename T>
Raster<T> FromWords(const Raster<std::uint16_t>& in) {
  Raster<T> out(in.width(), in.height(), T{});
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = static_cast<T>(in[i]);
  return out;
}

Raster<std::uint16_t> ReadSized(const fs::path& path, const Intrinsics& intr,
                                std::uint16_t expected_maxval) {
  std::uint16_t maxval = 0;
  Raster<std::uint16_t> r = ReadPgm(path, &maxval);
  if (!r.SameShape(intr.width, intr.height)) {
    throw std::runtime_error(
        path.string() + ": raster is " + std::to_string(r.width()) + "x" +
        std::to_string(r.height()) + ", intrinsics say " +
        std::to_string(intr.width) + "x" + std::to_string(intr.height));
  }
  if ((expected_maxval > 255) != (maxval > 255)) {
    throw std::runtime_error(path.string() + ": unexpected sample width");
  }
  return r;
}

}  // namespace

std::string FrameFileName(std::size_t index, const std::string& extension) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu", index);
  return buf + extension;
}

std::string FormatClassTable(const ClassTable& table) {
  std::ostringstream os;
  for (const auto& c : table.classes()) {
    os << c.id << " " << c.name << " " << ToString(c.kind) << "\n";
  }
  return os.str();
}

ClassTable ParseClassTable(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<ClassInfo> classes;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long id = -1;
    std::string name, kind, extra;
    if (!(ls >> id >> name >> kind) || (ls >> extra) || id < 0 || id > 65535) {
      throw std::runtime_error("classes: malformed line " +
                               std::to_string(line_no));
    }
    classes.push_back({static_cast<ClassId>(id), name, ParseClassKind(kind)});
  }
  return ClassTable(std::move(classes));
}

std::string FormatIntrinsics(const Intrinsics& intr) {
  return Fmt(intr.fx) + " " + Fmt(intr.fy) + " " + Fmt(intr.cx) + " " +
         Fmt(intr.cy) + " " + std::to_string(intr.width) + " " +
         std::to_string(intr.height) + "\n";
}

Intrinsics ParseIntrinsics(const std::string& text) {
  std::istringstream in(text);
  Intrinsics intr;
  std::string extra;
  if (!(in >> intr.fx >> intr.fy >> intr.cx >> intr.cy >> intr.width >>
        intr.height) ||
      (in >> extra)) {
    throw std::runtime_error("intrinsics: expected fx fy cx cy width height");
  }
  intr.Validate();
  return intr;
}

std::string FormatPose(const Pose& pose) {
  const Eigen::Matrix4d m = pose.Matrix();
  std::string out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      out += Fmt(m(r, c));
      out += c == 3 ? "\n" : " ";
    }
  }
  return out;
}

Pose ParsePose(const std::string& text) {
  std::istringstream in(text);
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (!(in >> m(r, c))) {
        throw std::runtime_error("pose: expected 16 numbers");
      }
    }
  }
  std::string extra;
  if (in >> extra) throw std::runtime_error("pose: trailing data");
  return Pose::FromMatrix(m);
}

LabeledFrame QuantizeFrame(const LabeledFrame& in) {
  LabeledFrame out = in;
  for (std::size_t i = 0; i < out.frame.depth.size(); ++i) {
    out.frame.depth[i] = DepthToMillimeters(in.frame.depth[i]) / 1000.0;
  }
  for (auto* scores : {&out.frame.semantic_score, &out.frame.instance_score}) {
    for (std::size_t i = 0; i < scores->size(); ++i) {
      (*scores)[i] = ScoreToWord((*scores)[i]) / kScoreScale;
    }
  }
  out.frame.pose = ParsePose(FormatPose(in.frame.pose));
  out.frame.intrinsics = ParseIntrinsics(FormatIntrinsics(in.frame.intrinsics));
  return out;
}

void WriteDatasetHeader(const fs::path& dir, const ClassTable& classes,
                        const Intrinsics& intrinsics) {
  intrinsics.Validate();
  fs::create_directories(dir);
  for (const char* sub : {"pose", "depth", "semantic", "instance"}) {
    fs::create_directories(dir / sub);
  }
  WriteFileBytes(dir / "classes.txt", FormatClassTable(classes));
  WriteFileBytes(dir / "intrinsics.txt", FormatIntrinsics(intrinsics));
}

void WriteFrame(const fs::path& dir, std::size_t index,
                const LabeledFrame& lf) {
  const PanopticFrame& f = lf.frame;
  f.Validate();
  const std::string pgm = FrameFileName(index, ".pgm");
  Raster<std::uint16_t> depth(f.width(), f.height(), 0);
  for (std::size_t i = 0; i < depth.size(); ++i) {
    depth[i] = DepthToMillimeters(f.depth[i]);
  }
  auto put = [&](const char* sub, const Raster<std::uint16_t>& r,
                 std::uint16_t maxval) {
    fs::create_directories(dir / sub);
    WritePgm(dir / sub / pgm, r, maxval);
  };
  put("depth", depth, 65535);
  put("semantic", ToWords(f.semantic, 255, "class id"), 255);
  put("instance", ToWords(f.instance, 65535, "instance id"), 65535);
  for (auto [sub, scores] : {std::pair{"semantic_score", &f.semantic_score},
                             std::pair{"instance_score", &f.instance_score}}) {
    if (scores->empty()) continue;
    Raster<std::uint16_t> words(f.width(), f.height(), 0);
    for (std::size_t i = 0; i < words.size(); ++i) {
      words[i] = ScoreToWord((*scores)[i]);
    }
    put(sub, words, 65535);
  }
  if (lf.has_ground_truth()) {
    if (!lf.gt_class.SameShape(f.width(), f.height()) ||
        !lf.gt_instance.SameShape(lf.gt_class)) {
      throw std::invalid_argument("ground-truth raster size mismatch");
    }
    put("gt_semantic", ToWords(lf.gt_class, 255, "class id"), 255);
    put("gt_instance", ToWords(lf.gt_instance, 65535, "instance id"), 65535);
  }
  fs::create_directories(dir / "pose");
  WriteFileBytes(dir / "pose" / FrameFileName(index, ".txt"),
                 FormatPose(f.pose));
}

DatasetInfo ReadDatasetInfo(const fs::path& dir) {
  DatasetInfo info;
  info.classes = ParseClassTable(ReadFileBytes(dir / "classes.txt"));
  info.intrinsics = ParseIntrinsics(ReadFileBytes(dir / "intrinsics.txt"));
  std::size_t count = 0;
  if (fs::is_directory(dir / "pose")) {
    for (const auto& entry : fs::directory_iterator(dir / "pose")) {
      if (entry.path().extension() == ".txt") ++count;
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!fs::exists(dir / "pose" / FrameFileName(i, ".txt"))) {
      throw std::runtime_error("dataset: pose files are not contiguous, " +
                               FrameFileName(i, ".txt") + " missing");
    }
  }
  info.num_frames = count;
  return info;
}

LabeledFrame ReadFrame(const fs::path& dir, const DatasetInfo& info,
                       std::size_t index) {
  const Intrinsics& intr = info.intrinsics;
  const std::string pgm = FrameFileName(index, ".pgm");
  LabeledFrame lf;
  PanopticFrame& f = lf.frame;
  f.intrinsics = intr;
  f.pose =
      ParsePose(ReadFileBytes(dir / "pose" / FrameFileName(index, ".txt")));
  const auto depth = ReadSized(dir / "depth" / pgm, intr, 65535);
  f.depth = Raster<double>(intr.width, intr.height, 0.0);
  for (std::size_t i = 0; i < depth.size(); ++i) f.depth[i] = depth[i] / 1000.0;
  f.semantic = FromWords<ClassId>(ReadSized(dir / "semantic" / pgm, intr, 255));
  f.instance = FromWords<LocalInstanceId>(
      ReadSized(dir / "instance" / pgm, intr, 65535));
  for (auto [sub, scores] : {std::pair{"semantic_score", &f.semantic_score},
                             std::pair{"instance_score", &f.instance_score}}) {
    const fs::path p = dir / sub / pgm;
    if (!fs::exists(p)) continue;
    const auto words = ReadSized(p, intr, 65535);
    *scores = Raster<double>(intr.width, intr.height, 0.0);
    for (std::size_t i = 0; i < words.size(); ++i) {
      (*scores)[i] = words[i] / kScoreScale;
    }
  }
  const fs::path gt_sem = dir / "gt_semantic" / pgm;
  if (fs::exists(gt_sem)) {
    lf.gt_class = FromWords<ClassId>(ReadSized(gt_sem, intr, 255));
    lf.gt_instance =
        FromWords<GlobalId>(ReadSized(dir / "gt_instance" / pgm, intr, 65535));
  }
  for (ClassId c : f.semantic.pixels()) {
    if (!info.classes.Contains(c)) {
      throw std::runtime_error(pgm + ": unknown class id " + std::to_string(c));
    }
  }
  return lf;
}

void WriteGroundTruthCloud(const fs::path& path,
                           const GroundTruthCloud& cloud) {
  std::string out;
  for (const auto& p : cloud) {
    out += Fmt(p.point.x()) + " " + Fmt(p.point.y()) + " " + Fmt(p.point.z()) +
           " " + std::to_string(p.class_id) + " " +
           std::to_string(p.instance_id) + "\n";
  }
  WriteFileBytes(path, out);
}

GroundTruthCloud ReadGroundTruthCloud(const fs::path& path) {
  std::istringstream in(ReadFileBytes(path));
  GroundTruthCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    GroundTruthPoint p;
    long cls = -1;
    std::string extra;
    if (!(ls >> p.point.x() >> p.point.y() >> p.point.z() >> cls >>
          p.instance_id) ||
        (ls >> extra) || cls < 0 || cls > 65535) {
      throw std::runtime_error(path.string() + ": malformed line " +
                               std::to_string(line_no));
    }
    p.class_id = static_cast<ClassId>(cls);
    cloud.push_back(p);
  }
  return cloud;
}

}  // namespace panmap
