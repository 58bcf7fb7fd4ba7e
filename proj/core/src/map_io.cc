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

#include "panmap/map_io.h"

#include <bit>
#include <cmath>
#include <vector>

#include "panmap/pgm.h"

namespace panmap {
namespace {

constexpr char kMagic[4] = {'P', 'N', 'D', 'T'};

class Writer {
 public:
  void U8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void U64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void I64(std::int64_t v) { U64(static_cast<std::uint64_t>(v)); }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void Bytes(std::string_view s) { out_.append(s); }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_++]))
           << (8 * i);
    }
    return v;
  }
  std::int64_t I64() { return static_cast<std::int64_t>(U64()); }
  double F64() { return std::bit_cast<double>(U64()); }
  double FiniteF64(const char* what) {
    const std::size_t at = pos_;
    const double v = F64();
    if (!std::isfinite(v)) Fail(std::string(what) + " is not finite", at);
    return v;
  }
  std::string_view Bytes(std::size_t n) {
    Need(n);
    std::string_view s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void set_record(std::int64_t record) { record_ = record; }

  [[noreturn]] void Fail(const std::string& message, std::size_t at) const {
    std::string where = "byte " + std::to_string(at);
    if (record_ >= 0) where += ", voxel record " + std::to_string(record_);
    throw MapFormatError("map file: " + message + " (" + where + ")", at,
                         record_);
  }
  [[noreturn]] void Fail(const std::string& message) const {
    Fail(message, pos_);
  }

 private:
  void Need(std::size_t n) const {
    if (remaining() < n) Fail("unexpected end of file");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
  std::int64_t record_ = -1;
};

}  // namespace

MapFormatError::MapFormatError(const std::string& message, std::size_t offset,
                               std::int64_t record)
    : std::runtime_error(message), offset_(offset), record_(record) {}

std::string SerializeMap(const PanopticMap& map) {
  const ClassTable& table = map.class_table();
  Writer w;
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(kMapFormatVersion);
  w.F64(map.voxel_size());
  w.U32(static_cast<std::uint32_t>(table.size()));
  for (const auto& c : table.classes()) {
    w.U32(c.id);
    w.U8(static_cast<std::uint8_t>(c.kind));
    w.U32(static_cast<std::uint32_t>(c.name.size()));
    w.Bytes(c.name);
  }
  w.U64(map.next_global_id());
  w.U64(map.size());
  for (const NdtVoxel& v : map.voxels()) {
    w.I64(v.index.x);
    w.I64(v.index.y);
    w.I64(v.index.z);
    w.U64(v.shape.count());
    for (int i = 0; i < 3; ++i) w.F64(v.shape.sum()(i));
    const Eigen::Matrix3d& s = v.shape.sqsum();
    for (int r = 0; r < 3; ++r) {
      for (int c = r; c < 3; ++c) w.F64(s(r, c));
    }
    w.F64(v.occupancy.logodds);
    w.U64(v.semantic_updates);
    w.U64(v.instance_updates);
    for (std::size_t c = 0; c < table.size(); ++c) {
      w.F64(v.semantic.mass(static_cast<ClassId>(c)));
    }
    w.U8(static_cast<std::uint8_t>(v.instances.size()));
    for (const auto& e : v.instances.entries()) {
      w.U64(e.id);
      w.F64(e.mass);
    }
  }
  return std::move(w.str());
}

PanopticMap DeserializeMap(std::string_view bytes) {
  Reader r(bytes);
  if (r.Bytes(4) != std::string_view(kMagic, 4)) r.Fail("bad magic", 0);
  const std::size_t version_at = r.pos();
  const std::uint32_t version = r.U32();
  if (version != kMapFormatVersion) {
    r.Fail("unsupported version " + std::to_string(version), version_at);
  }
  const std::size_t voxel_size_at = r.pos();
  const double voxel_size = r.F64();
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) {
    r.Fail("voxel size must be positive", voxel_size_at);
  }
  const std::size_t class_count_at = r.pos();
  const std::uint32_t class_count = r.U32();
  if (class_count == 0 || class_count > 65536 ||
      class_count > r.remaining() / 9) {
    r.Fail("implausible class count", class_count_at);
  }
  std::vector<ClassInfo> classes;
  for (std::uint32_t i = 0; i < class_count; ++i) {
    const std::size_t at = r.pos();
    ClassInfo c;
    const std::uint32_t id = r.U32();
    const std::uint8_t kind = r.U8();
    if (id != i || kind > 2) r.Fail("bad class entry " + std::to_string(i), at);
    c.id = static_cast<ClassId>(id);
    c.kind = static_cast<ClassKind>(kind);
    const std::uint32_t len = r.U32();
    c.name = std::string(r.Bytes(len));
    classes.push_back(std::move(c));
  }
  ClassTable table;
  try {
    table = ClassTable(std::move(classes));
  } catch (const std::invalid_argument& e) {
    r.Fail(e.what(), class_count_at);
  }
  const std::uint64_t next_global_id = r.U64();
  if (next_global_id == 0) r.Fail("next global id must be positive");
  const std::size_t count_at = r.pos();
  const std::uint64_t voxel_count = r.U64();
  // Truncation surfaces in the record where the data runs out; the count only
  // bounds the allocation.
  const std::size_t min_record =
      8 * (3 + 1 + 3 + 6 + 1 + 2) + 8 * table.size() + 1;
  std::vector<NdtVoxel> voxels;
  voxels.reserve(static_cast<std::size_t>(
      std::min<std::uint64_t>(voxel_count, r.remaining() / min_record)));
  std::vector<double> bins(table.size());
  for (std::uint64_t k = 0; k < voxel_count; ++k) {
    r.set_record(static_cast<std::int64_t>(k));
    const std::size_t record_at = r.pos();
    VoxelIndex index;
    index.x = r.I64();
    index.y = r.I64();
    index.z = r.I64();
    try {
      MortonKey(index);
    } catch (const std::out_of_range&) {
      r.Fail("voxel index out of range", record_at);
    }
    NdtVoxel v(index, voxel_size);
    const std::uint64_t n = r.U64();
    Eigen::Vector3d sum;
    for (int i = 0; i < 3; ++i) sum(i) = r.FiniteF64("point sum");
    Eigen::Matrix3d sq;
    for (int row = 0; row < 3; ++row) {
      for (int c = row; c < 3; ++c) {
        sq(row, c) = sq(c, row) = r.FiniteF64("square sum");
      }
    }
    v.shape.SetStatistics(n, sum, sq);
    const std::size_t logodds_at = r.pos();
    v.occupancy.logodds = r.F64();
    if (!(v.occupancy.logodds >= Occupancy::kMin &&
          v.occupancy.logodds <= Occupancy::kMax)) {
      r.Fail("log-odds outside clamp range", logodds_at);
    }
    v.semantic_updates = r.U64();
    v.instance_updates = r.U64();
    const std::size_t bins_at = r.pos();
    for (double& b : bins) b = r.F64();
    try {
      v.semantic.Assign(bins, table);
    } catch (const std::invalid_argument& e) {
      r.Fail(e.what(), bins_at);
    }
    const std::size_t entries_at = r.pos();
    const std::uint8_t entry_count = r.U8();
    if (entry_count > InstanceHistogram::kCapacity) {
      r.Fail("instance entry count " + std::to_string(entry_count) +
                 " exceeds " + std::to_string(InstanceHistogram::kCapacity),
             entries_at);
    }
    std::vector<InstanceEntry> entries(entry_count);
    for (auto& e : entries) {
      e.id = r.U64();
      e.mass = r.F64();
    }
    try {
      v.instances.Assign(std::move(entries));
    } catch (const std::invalid_argument& e) {
      r.Fail(e.what(), entries_at);
    }
    voxels.push_back(std::move(v));
  }
  r.set_record(-1);
  if (r.remaining() != 0) r.Fail("trailing bytes after last voxel record");

  PanopticMap map(voxel_size, std::move(table));
  try {
    map.AssignVoxels(std::move(voxels));
  } catch (const std::invalid_argument& e) {
    r.Fail(e.what(), count_at);
  }
  map.set_next_global_id(next_global_id);
  return map;
}

void SaveMap(const PanopticMap& map, const std::filesystem::path& path) {
  WriteFileBytes(path, SerializeMap(map));
}

PanopticMap LoadMap(const std::filesystem::path& path) {
  const std::string bytes = ReadFileBytes(path);
  try {
    return DeserializeMap(bytes);
  } catch (const MapFormatError& e) {
    throw MapFormatError(path.string() + ": " + e.what(), e.offset(),
                         e.record());
  }
}

}  // namespace panmap
