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

#ifndef PANMAP_CLASS_TABLE_H_
#define PANMAP_CLASS_TABLE_H_

#include <cstdint>
#include <string>
#include <vector>

namespace panmap {

using ClassId = std::uint16_t;
using LocalInstanceId = std::uint16_t;
using GlobalId = std::uint64_t;

inline constexpr ClassId kVoidClass = 0;
inline constexpr GlobalId kNoInstance = 0;

enum class ClassKind : std::uint8_t { kVoid = 0, kStuff = 1, kThing = 2 };

struct ClassInfo {
  ClassId id = kVoidClass;
  std::string name;
  ClassKind kind = ClassKind::kVoid;

  friend bool operator==(const ClassInfo&, const ClassInfo&) = default;
};

// Semantic classes with their stuff/thing split. Class 0 is void; ids are
// contiguous so a class id doubles as a histogram bin.
class ClassTable {
 public:
  ClassTable() = default;
  // Throws std::invalid_argument unless ids are 0..n-1 in order, class 0 is
  // the only void class, and every other class is stuff or thing.
  explicit ClassTable(std::vector<ClassInfo> classes);

  // Convenience: void + the given stuff names + the given thing names.
  static ClassTable FromNames(const std::vector<std::string>& stuff,
                              const std::vector<std::string>& things);

  std::size_t size() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  const ClassInfo& at(ClassId id) const;

  bool Contains(ClassId id) const { return id < classes_.size(); }
  bool IsThing(ClassId id) const {
    return Contains(id) && classes_[id].kind == ClassKind::kThing;
  }
  bool IsStuff(ClassId id) const {
    return Contains(id) && classes_[id].kind == ClassKind::kStuff;
  }
  // Returns size() if no class carries `name`.
  ClassId Find(const std::string& name) const;

  friend bool operator==(const ClassTable&, const ClassTable&) = default;

 private:
  std::vector<ClassInfo> classes_;
};

std::string ToString(ClassKind kind);
// Parses "stuff", "thing" or "void"; throws std::invalid_argument otherwise.
ClassKind ParseClassKind(const std::string& text);

}  // namespace panmap

#endif  // PANMAP_CLASS_TABLE_H_
