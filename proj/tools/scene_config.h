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

// JSON scene descriptions for the `simulate` command.

#ifndef PANMAP_TOOLS_SCENE_CONFIG_H_
#define PANMAP_TOOLS_SCENE_CONFIG_H_

#include <string>

#include "panmap/scene_simulator.h"

namespace panmap {

struct SimulationConfig {
  SceneSpec scene;
  NoiseSpec noise;
  std::uint64_t id_seed = 0;
};

// Parses a JSON scene description. Throws std::invalid_argument with the
// offending key on malformed input.
SimulationConfig ParseSimulationConfig(const std::string& json_text);

// The JSON form of DemoScene, usable as a template.
std::string DemoSceneConfig();

}  // namespace panmap

#endif  // PANMAP_TOOLS_SCENE_CONFIG_H_
