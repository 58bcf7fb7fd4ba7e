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

// Micro-benchmarks for the mapping hot paths.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "panmap/map_integrator.h"
#include "panmap/map_io.h"
#include "panmap/projection_renderer.h"
#include "panmap/scene_simulator.h"

namespace panmap {
namespace {

const SceneSpec& Scene() {
  static const SceneSpec scene = DemoScene(60);
  return scene;
}

const std::vector<LabeledFrame>& Frames() {
  static const std::vector<LabeledFrame> frames = [] {
    std::vector<LabeledFrame> out;
    for (std::size_t i = 0; i < Scene().frame_count(); ++i) {
      out.push_back(RaycastFrame(Scene(), i, 1));
    }
    return out;
  }();
  return frames;
}

PanopticMap BuildMap(double voxel_size) {
  MappingParams params;
  params.voxel_size = voxel_size;
  PanopticMap map(voxel_size, Scene().classes);
  for (const LabeledFrame& f : Frames()) ProcessFrame(map, f.frame, params);
  return map;
}

// Arg: voxel size in millimetres.
void BM_ProcessFrame(benchmark::State& state) {
  MappingParams params;
  params.voxel_size = state.range(0) / 1000.0;
  const auto& frames = Frames();
  PanopticMap map(params.voxel_size, Scene().classes);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ProcessFrame(map, frames[i % frames.size()].frame, params));
    ++i;
  }
  state.counters["voxels"] = static_cast<double>(map.size());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ProcessFrame)->Arg(100)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_CastRay(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Eigen::Vector3d> dirs(1024);
  for (auto& d : dirs) d = Eigen::Vector3d(n(rng), n(rng), n(rng)).normalized();
  const Eigen::Vector3d origin(0.0, 0.0, 1.2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(CastRay(Scene(), origin, dirs[i++ % dirs.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CastRay);

void BM_RaycastFrame(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RaycastFrame(Scene(), i++ % Scene().frame_count()));
  }
}
BENCHMARK(BM_RaycastFrame)->Unit(benchmark::kMillisecond);

// Arg: k-sigma in tenths.
void BM_Footprint(benchmark::State& state) {
  const Intrinsics intr{300.0, 300.0, 159.5, 119.5, 320, 240};
  ImageGaussian g;
  g.center = Eigen::Vector2d(160.2, 120.7);
  g.covariance << 40.0, 12.0, 12.0, 25.0;
  g.depth = 2.0;
  const double k = state.range(0) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(Footprint(g, intr, k));
}
BENCHMARK(BM_Footprint)->Arg(10)->Arg(20)->Arg(30);

void BM_RenderView(benchmark::State& state) {
  const PanopticMap map = BuildMap(0.1);
  const MappingParams params;
  const LabeledFrame& f = Frames().front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RenderView(map, f.frame.intrinsics, f.frame.pose, params));
  }
  state.counters["voxels"] = static_cast<double>(map.size());
}
BENCHMARK(BM_RenderView)->Unit(benchmark::kMillisecond);

void BM_SerializeMap(benchmark::State& state) {
  const PanopticMap map = BuildMap(0.05);
  std::size_t bytes = 0;
  for (auto _ : state) {
    const std::string s = SerializeMap(map);
    bytes = s.size();
    benchmark::DoNotOptimize(s.data());
  }
  state.SetBytesProcessed(
      static_cast<std::int64_t>(bytes * state.iterations()));
}
BENCHMARK(BM_SerializeMap)->Unit(benchmark::kMillisecond);

void BM_DeserializeMap(benchmark::State& state) {
  const std::string bytes = SerializeMap(BuildMap(0.05));
  for (auto _ : state) benchmark::DoNotOptimize(DeserializeMap(bytes));
  state.SetBytesProcessed(
      static_cast<std::int64_t>(bytes.size() * state.iterations()));
}
BENCHMARK(BM_DeserializeMap)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace panmap

BENCHMARK_MAIN();
