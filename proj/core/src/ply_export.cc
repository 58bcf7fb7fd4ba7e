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

#include "panmap/ply_export.h"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "panmap/label_propagation.h"
#include "panmap/pgm.h"

namespace panmap {
namespace {

constexpr Rgb kPalette[] = {
    {174, 199, 232}, {152, 223, 138}, {31, 119, 180},  {255, 187, 120},
    {188, 189, 34},  {140, 86, 75},   {255, 152, 150}, {214, 39, 40},
    {197, 176, 213}, {148, 103, 189}, {196, 156, 148}, {23, 190, 207},
    {247, 182, 210}, {219, 219, 141}, {255, 127, 14},  {158, 218, 229},
    {44, 160, 44},   {112, 128, 144}, {227, 119, 194}, {82, 84, 163},
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

ColorMode ParseColorMode(const std::string& text) {
  if (text == "semantic") return ColorMode::kSemantic;
  if (text == "instance") return ColorMode::kInstance;
  if (text == "panoptic") return ColorMode::kPanoptic;
  throw std::invalid_argument("unknown color mode '" + text + "'");
}

Rgb ClassColor(ClassId class_id) {
  if (class_id == kVoidClass) return {0, 0, 0};
  return kPalette[(class_id - 1) % kPaletteSize];
}

Rgb InstanceColor(GlobalId instance_id) {
  if (instance_id == kNoInstance) return {128, 128, 128};
  const std::uint64_t h = Mix(instance_id);
  // Keep away from the grey used for id 0.
  return {static_cast<std::uint8_t>(32 + (h & 0xbf)),
          static_cast<std::uint8_t>(32 + ((h >> 8) & 0xbf)),
          static_cast<std::uint8_t>((h >> 16) & 0xff)};
}

Rgb PanopticColor(ClassId class_id, GlobalId instance_id) {
  Rgb c = ClassColor(class_id);
  if (instance_id == kNoInstance) return c;
  const std::uint64_t h = Mix(instance_id);
  for (int i = 0; i < 3; ++i) {
    const int offset = static_cast<int>((h >> (8 * i)) % 61) - 30;
    c[i] = static_cast<std::uint8_t>(std::clamp(c[i] + offset, 0, 255));
  }
  return c;
}

std::string ExportPly(const PanopticMap& map, ColorMode mode,
                      const MappingParams& params) {
  std::string body;
  std::size_t count = 0;
  char line[160];
  for (const NdtVoxel& v : map.voxels()) {
    const auto dist = VoxelDistribution(v);
    if (!dist) continue;
    const PanopticLabel3D label =
        CachedOrPropagate(v, map.class_table(), params);
    Rgb c;
    switch (mode) {
      case ColorMode::kSemantic:
        c = ClassColor(v.semantic.Argmax().value_or(kVoidClass));
        break;
      case ColorMode::kInstance:
        c = InstanceColor(label.instance_id);
        break;
      case ColorMode::kPanoptic:
        c = PanopticColor(label.class_id, label.instance_id);
        break;
    }
    std::snprintf(line, sizeof(line), "%.9g %.9g %.9g %u %u %u %u %llu\n",
                  dist->mean.x(), dist->mean.y(), dist->mean.z(), c[0], c[1],
                  c[2], static_cast<unsigned>(label.class_id),
                  static_cast<unsigned long long>(label.instance_id));
    body += line;
    ++count;
  }
  std::string out =
      "ply\nformat ascii 1.0\nelement vertex " + std::to_string(count) +
      "\nproperty float x\nproperty float y\nproperty float z\n"
      "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      "property ushort class\nproperty uint instance\nend_header\n";
  return out + body;
}

void WritePly(const PanopticMap& map, const std::filesystem::path& path,
              ColorMode mode, const MappingParams& params) {
  WriteFileBytes(path, ExportPly(map, mode, params));
}

}  // namespace panmap
