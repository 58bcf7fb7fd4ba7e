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

// Binary map files. All integers and floats are little-endian:
//
//   "PNDT" | u32 version | f64 voxel_size
//   u32 class_count, per class: u32 id | u8 kind | u32 name_length | name
//   u64 next_global_id | u64 voxel_count
//   per voxel: 3 x i64 index | u64 n | 3 x f64 sum | 6 x f64 sqsum (xx xy xz
//   yy yz zz) | f64 logodds | u64 n^L | u64 n^Z | class_count x f64 semantic
//   histogram | u8 entry_count | entry_count x (u64 id | f64 mass)
//
// Point sums are relative to the voxel's minimum corner. Label caches are
// not stored; they are rebuilt on demand.

#ifndef PANMAP_MAP_IO_H_
#define PANMAP_MAP_IO_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "panmap/ndt_map.h"

namespace panmap {

inline constexpr std::uint32_t kMapFormatVersion = 1;

// Raised for malformed map files. `offset` is the byte position of the
// failing read; `record` the voxel record index, or -1 inside the header.
class MapFormatError : public std::runtime_error {
 public:
  MapFormatError(const std::string& message, std::size_t offset,
                 std::int64_t record);
  std::size_t offset() const { return offset_; }
  std::int64_t record() const { return record_; }

 private:
  std::size_t offset_;
  std::int64_t record_;
};

std::string SerializeMap(const PanopticMap& map);
PanopticMap DeserializeMap(std::string_view bytes);

void SaveMap(const PanopticMap& map, const std::filesystem::path& path);
PanopticMap LoadMap(const std::filesystem::path& path);

}  // namespace panmap

#endif  // PANMAP_MAP_IO_H_
