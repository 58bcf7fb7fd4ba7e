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

// ASCII PLY export of voxel means with label colors.

#ifndef PANMAP_PLY_EXPORT_H_
#define PANMAP_PLY_EXPORT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "panmap/ndt_map.h"
#include "panmap/params.h"

namespace panmap {

enum class ColorMode { kSemantic, kInstance, kPanoptic };

ColorMode ParseColorMode(const std::string& text);

using Rgb = std::array<std::uint8_t, 3>;

// Fixed palette; void is black.
Rgb ClassColor(ClassId class_id);
// Distinct colors per id; id 0 is grey.
Rgb InstanceColor(GlobalId instance_id);
// Class color nudged by a small id-dependent offset; id 0 keeps the class
// color.
Rgb PanopticColor(ClassId class_id, GlobalId instance_id);

// One vertex per voxel with a valid distribution, in storage order.
std::string ExportPly(const PanopticMap& map, ColorMode mode,
                      const MappingParams& params);
void WritePly(const PanopticMap& map, const std::filesystem::path& path,
              ColorMode mode, const MappingParams& params);

}  // namespace panmap

#endif  // PANMAP_PLY_EXPORT_H_
