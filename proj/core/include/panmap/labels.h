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

#ifndef PANMAP_LABELS_H_
#define PANMAP_LABELS_H_

#include "panmap/class_table.h"

namespace panmap {

// Pixel-level panoptic label with a frame-local instance id.
struct PanopticLabel2D {
  ClassId class_id = kVoidClass;
  LocalInstanceId instance_id = 0;

  friend bool operator==(const PanopticLabel2D&,
                         const PanopticLabel2D&) = default;
};

// Voxel-level panoptic label with a map-global instance id.
struct PanopticLabel3D {
  ClassId class_id = kVoidClass;
  GlobalId instance_id = kNoInstance;

  friend bool operator==(const PanopticLabel3D&,
                         const PanopticLabel3D&) = default;
};

}  // namespace panmap

#endif  // PANMAP_LABELS_H_
