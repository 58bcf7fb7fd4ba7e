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

#include "panmap/class_table.h"

#include <limits>
#include <stdexcept>

namespace panmap {

ClassTable::ClassTable(std::vector<ClassInfo> classes)
    : classes_(std::move(classes)) {
  if (classes_.empty()) {
    throw std::invalid_argument("class table: must contain the void class");
  }
  if (classes_.size() > std::numeric_limits<ClassId>::max()) {
    throw std::invalid_argument("class table: too many classes");
  }
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const ClassInfo& info = classes_[i];
    if (info.id != i) {
      throw std::invalid_argument("class table: ids must be contiguous from 0");
    }
    const bool is_void = info.kind == ClassKind::kVoid;
    if (is_void != (i == 0)) {
      throw std::invalid_argument(
          "class table: class 0 must be void and no other class may be void");
    }
  }
}

ClassTable ClassTable::FromNames(const std::vector<std::string>& stuff,
                                 const std::vector<std::string>& things) {
  std::vector<ClassInfo> classes;
  classes.push_back({kVoidClass, "void", ClassKind::kVoid});
  for (const auto& name : stuff) {
    classes.push_back(
        {static_cast<ClassId>(classes.size()), name, ClassKind::kStuff});
  }
  for (const auto& name : things) {
    classes.push_back(
        {static_cast<ClassId>(classes.size()), name, ClassKind::kThing});
  }
  return ClassTable(std::move(classes));
}

const ClassInfo& ClassTable::at(ClassId id) const {
  if (!Contains(id)) {
    throw std::out_of_range("class table: unknown class id " +
                            std::to_string(id));
  }
  return classes_[id];
}

ClassId ClassTable::Find(const std::string& name) const {
  for (const auto& info : classes_) {
    if (info.name == name) return info.id;
  }
  return static_cast<ClassId>(classes_.size());
}

std::string ToString(ClassKind kind) {
  switch (kind) {
    case ClassKind::kVoid:
      return "void";
    case ClassKind::kStuff:
      return "stuff";
    case ClassKind::kThing:
      return "thing";
  }
  return "void";
}

ClassKind ParseClassKind(const std::string& text) {
  if (text == "stuff") return ClassKind::kStuff;
  if (text == "thing") return ClassKind::kThing;
  if (text == "void") return ClassKind::kVoid;
  throw std::invalid_argument("unknown class kind '" + text + "'");
}

}  // namespace panmap
