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

#include "cli.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "panmap/dataset_io.h"
#include "panmap/evaluation.h"
#include "panmap/instance_tracker.h"
#include "panmap/map_integrator.h"
#include "panmap/map_io.h"
#include "panmap/pgm.h"
#include "panmap/ply_export.h"
#include "panmap/projection_renderer.h"
#include "panmap/scene_simulator.h"
#include "scene_config.h"

namespace panmap {
namespace {

namespace fs = std::filesystem;

// Threshold flags shared by every command that maps or reads labels.
struct ParamFlags {
  std::string profile = "default";
  std::optional<double> voxel_size;
  std::optional<double> theta_st, theta_m, theta_n, theta_b, theta_l, theta_z,
      theta_o;
  std::optional<double> max_depth, k_sigma;
  bool no_free_space = false;

  void Register(CLI::App* app, bool with_voxel_size) {
    app->add_option("--profile", profile, "Threshold profile")
        ->check(CLI::IsMember({"default", "application"}));
    if (with_voxel_size) {
      app->add_option("--voxel-size", voxel_size, "Voxel edge length (m)");
      app->add_flag("--no-free-space", no_free_space,
                    "Skip free-space ray casting");
    }
    app->add_option("--theta-st", theta_st, "Stuff proportion threshold");
    app->add_option("--theta-m", theta_m, "Instance match IoU");
    app->add_option("--theta-n", theta_n, "New instance IoU");
    app->add_option("--theta-b", theta_b, "Back-projection mass share");
    app->add_option("--theta-l", theta_l, "Semantic score gate");
    app->add_option("--theta-z", theta_z, "Instance score gate");
    app->add_option("--theta-o", theta_o, "Observation ratio");
    app->add_option("--max-depth", max_depth, "Maximum depth (m)");
    app->add_option("--k-sigma", k_sigma, "Footprint radius (sigmas)");
  }

  MappingParams Build() const {
    MappingParams p = profile == "application"
                          ? MappingParams::ApplicationProfile()
                          : MappingParams();
    auto set = [](double& field, const std::optional<double>& v) {
      if (v) field = *v;
    };
    set(p.voxel_size, voxel_size);
    set(p.theta_stuff, theta_st);
    set(p.theta_match, theta_m);
    set(p.theta_new, theta_n);
    set(p.theta_backproject, theta_b);
    set(p.theta_semantic, theta_l);
    set(p.theta_instance, theta_z);
    set(p.theta_observation, theta_o);
    set(p.max_depth, max_depth);
    set(p.k_sigma, k_sigma);
    p.integrate_free_space = !no_free_space;
    p.Validate();
    return p;
  }
};

MappingParams ForMap(const ParamFlags& flags, const PanopticMap& map) {
  ParamFlags f = flags;
  f.voxel_size = map.voxel_size();
  return f.Build();
}

void WriteText(const std::string& path, const std::string& text) {
  WriteFileBytes(path, text);
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string preset;
  std::string out;
  std::optional<std::size_t> frames;
  std::optional<double> flip_prob, depth_sigma;
  std::optional<int> erode;
  std::optional<std::uint64_t> seed;
  std::string gt_cloud = "frames";
  double gt_density = 400.0;
  bool dump_config = false;
};

int Simulate(const SimulateArgs& a, std::ostream& out) {
  if (a.dump_config) {
    out << DemoSceneConfig();
    return 0;
  }
  if (a.out.empty()) throw std::invalid_argument("--out is required");
  SimulationConfig cfg;
  if (!a.config.empty()) {
    cfg = ParseSimulationConfig(ReadFileBytes(a.config));
    if (a.frames) throw std::invalid_argument("--frames needs --preset");
  } else {
    cfg.scene = DemoScene(a.frames.value_or(60));
    cfg.noise = DemoNoise(0.0, 0.0, 0, 0);
  }
  if (a.flip_prob) cfg.noise.sem_flip_prob = *a.flip_prob;
  if (a.depth_sigma) cfg.noise.depth_sigma_at_1m = *a.depth_sigma;
  if (a.erode) cfg.noise.border_erode_px = *a.erode;
  if (a.seed) {
    cfg.noise.seed = *a.seed;
    cfg.id_seed = *a.seed;
  }
  cfg.scene.Validate();
  cfg.noise.Validate();

  const fs::path dir = a.out;
  WriteDatasetHeader(dir, cfg.scene.classes, cfg.scene.intrinsics);
  std::vector<LabeledFrame> clean;
  for (std::size_t i = 0; i < cfg.scene.frame_count(); ++i) {
    LabeledFrame f = RaycastFrame(cfg.scene, i, cfg.id_seed);
    WriteFrame(dir, i, ApplyNoise(f, cfg.noise, i));
    if (a.gt_cloud == "frames") clean.push_back(std::move(f));
  }
  if (a.gt_cloud == "frames") {
    WriteGroundTruthCloud(dir / "gt_cloud.txt", GtCloudFromFrames(clean));
  } else if (a.gt_cloud == "sample") {
    WriteGroundTruthCloud(
        dir / "gt_cloud.txt",
        SampleGtCloud(cfg.scene, a.gt_density, cfg.noise.seed));
  }
  out << "wrote " << cfg.scene.frame_count() << " frames to " << dir.string()
      << "\n";
  return 0;
}

// --- map / bench -----------------------------------------------------------

struct MapArgs {
  std::string dataset;
  std::string out;
  std::string trace;
  std::optional<std::size_t> max_frames;
  ParamFlags params;
};

struct MapRun {
  PanopticMap map;
  std::size_t frames = 0;
  double seconds = 0.0;
  FrameStats totals;
  std::string trace;
};

MapRun BuildMap(const std::string& dataset, const MappingParams& params,
                std::optional<std::size_t> max_frames, bool want_trace) {
  const DatasetInfo info = ReadDatasetInfo(dataset);
  const std::size_t n =
      std::min(info.num_frames, max_frames.value_or(SIZE_MAX));
  std::vector<LabeledFrame> frames;
  frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    frames.push_back(ReadFrame(dataset, info, i));
  }
  MapRun run{PanopticMap(params.voxel_size, info.classes)};
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<MatchDecision> decisions;
    const FrameStats s = ProcessFrame(run.map, frames[i].frame, params,
                                      want_trace ? &decisions : nullptr);
    run.totals.pixels_integrated += s.pixels_integrated;
    run.totals.instances_matched += s.instances_matched;
    run.totals.instances_new += s.instances_new;
    run.totals.instances_ignored += s.instances_ignored;
    run.totals.instance_updates += s.instance_updates;
    run.totals.semantic_updates += s.semantic_updates;
    for (const auto& d : decisions) run.trace += FormatDecision(i, d) + "\n";
  }
  run.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  run.frames = n;
  return run;
}

int Map(const MapArgs& a, std::ostream& out) {
  const MappingParams params = a.params.Build();
  MapRun run = BuildMap(a.dataset, params, a.max_frames, !a.trace.empty());
  SaveMap(run.map, a.out);
  if (!a.trace.empty()) WriteText(a.trace, run.trace);
  out << "frames=" << run.frames << "\n"
      << "voxels=" << run.map.size() << "\n"
      << "global_ids=" << run.map.next_global_id() - 1 << "\n"
      << "instances_matched=" << run.totals.instances_matched << "\n"
      << "instances_new=" << run.totals.instances_new << "\n"
      << "instances_ignored=" << run.totals.instances_ignored << "\n";
  return 0;
}

int Bench(const MapArgs& a, std::ostream& out) {
  const MappingParams params = a.params.Build();
  const MapRun run = BuildMap(a.dataset, params, a.max_frames, false);
  char line[160];
  std::snprintf(line, sizeof(line),
                "frames=%zu voxel_size=%.3f seconds=%.3f frames_per_second=%.2f"
                "\n",
                run.frames, params.voxel_size, run.seconds,
                run.seconds > 0.0 ? run.frames / run.seconds : 0.0);
  out << line;
  return 0;
}

// --- render ----------------------------------------------------------------

struct RenderArgs {
  std::string map;
  std::string dataset;
  std::size_t frame = 0;
  std::string pose;
  std::string intrinsics;
  std::string out;
  ParamFlags params;
};

int Render(const RenderArgs& a, std::ostream& out) {
  const PanopticMap map = LoadMap(a.map);
  const MappingParams params = ForMap(a.params, map);
  Intrinsics intr;
  Pose pose;
  if (!a.dataset.empty()) {
    const DatasetInfo info = ReadDatasetInfo(a.dataset);
    if (a.frame >= info.num_frames) {
      throw std::invalid_argument("frame index beyond dataset");
    }
    intr = info.intrinsics;
    pose = ParsePose(ReadFileBytes(fs::path(a.dataset) / "pose" /
                                   FrameFileName(a.frame, ".txt")));
  } else {
    if (a.pose.empty() || a.intrinsics.empty()) {
      throw std::invalid_argument(
          "render needs --dataset or --pose and "
          "--intrinsics");
    }
    intr = ParseIntrinsics(ReadFileBytes(a.intrinsics));
    pose = ParsePose(ReadFileBytes(a.pose));
  }
  const RenderedView view = RenderView(map, intr, pose, params);
  const fs::path dir = a.out;
  fs::create_directories(dir);
  auto words = [&](auto const& r, std::uint64_t limit, const char* what) {
    Raster<std::uint16_t> w(r.width(), r.height(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (static_cast<std::uint64_t>(r[i]) > limit) {
        throw std::runtime_error(std::string(what) + " exceeds PGM range");
      }
      w[i] = static_cast<std::uint16_t>(r[i]);
    }
    return w;
  };
  WritePgm(dir / "semantic.pgm", words(view.semantic, 255, "class id"), 255);
  WritePgm(dir / "panoptic_class.pgm",
           words(view.panoptic_class, 255, "class id"), 255);
  WritePgm(dir / "instance.pgm", words(view.instance, 65535, "instance id"),
           65535);
  Raster<std::uint16_t> depth(intr.width, intr.height, 0);
  for (std::size_t i = 0; i < depth.size(); ++i) {
    const double mm = std::round(view.depth[i] * 1000.0);
    depth[i] = mm > 65535.0 ? 0 : static_cast<std::uint16_t>(mm);
  }
  WritePgm(dir / "depth.pgm", depth, 65535);
  out << "wrote " << intr.width << "x" << intr.height << " rasters to "
      << dir.string() << "\n";
  return 0;
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string map;
  std::string dataset;
  std::string cloud;
  std::string records;
  std::size_t stride = 1;
  ParamFlags params;
};

int Eval2d(const EvalArgs& a, std::ostream& out) {
  const PanopticMap map = LoadMap(a.map);
  const MappingParams params = ForMap(a.params, map);
  const DatasetInfo info = ReadDatasetInfo(a.dataset);
  if (a.stride == 0) throw std::invalid_argument("--stride must be positive");
  if (!(info.classes == map.class_table())) {
    throw std::invalid_argument("dataset and map class tables differ");
  }
  std::vector<GroundTruthView> views;
  for (std::size_t i = 0; i < info.num_frames; i += a.stride) {
    const LabeledFrame f = ReadFrame(a.dataset, info, i);
    if (!f.has_ground_truth()) {
      throw std::runtime_error("frame " + FrameFileName(i, "") +
                               " has no ground truth");
    }
    views.push_back(f.ground_truth_view());
  }
  const EvalReport report = Evaluate2d(map, views, params);
  out << report.ToText();
  if (!a.records.empty()) WriteText(a.records, report.ToRecords());
  return 0;
}

int Eval3d(const EvalArgs& a, std::ostream& out) {
  const PanopticMap map = LoadMap(a.map);
  const MappingParams params = ForMap(a.params, map);
  std::string cloud_path = a.cloud;
  if (cloud_path.empty()) {
    if (a.dataset.empty()) {
      throw std::invalid_argument("eval3d needs --cloud or --dataset");
    }
    cloud_path = (fs::path(a.dataset) / "gt_cloud.txt").string();
  }
  const EvalReport report =
      Evaluate3d(map, ReadGroundTruthCloud(cloud_path), params);
  out << report.ToText();
  if (!a.records.empty()) WriteText(a.records, report.ToRecords());
  return 0;
}

// --- export-ply ------------------------------------------------------------

struct PlyArgs {
  std::string map;
  std::string out;
  std::string mode = "panoptic";
  ParamFlags params;
};

int ExportPlyCommand(const PlyArgs& a, std::ostream& out) {
  const PanopticMap map = LoadMap(a.map);
  const MappingParams params = ForMap(a.params, map);
  WritePly(map, a.out, ParseColorMode(a.mode), params);
  out << "wrote " << a.out << "\n";
  return 0;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Panoptic NDT mapping tool", "panmap"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Render a synthetic dataset");
  simulate->add_option("--config", sim.config, "JSON scene description")
      ->check(CLI::ExistingFile);
  simulate->add_option("--preset", sim.preset, "Built-in scene")
      ->check(CLI::IsMember({"demo"}));
  simulate->add_option("--out", sim.out, "Output dataset directory");
  simulate->add_option("--frames", sim.frames, "Orbit length (preset only)");
  simulate->add_option("--flip-prob", sim.flip_prob, "Semantic flip rate");
  simulate->add_option("--depth-sigma", sim.depth_sigma,
                       "Depth noise at 1 m (m)");
  simulate->add_option("--erode", sim.erode, "Instance border erosion (px)");
  simulate->add_option("--seed", sim.seed, "Noise and id seed");
  simulate->add_option("--gt-cloud", sim.gt_cloud, "Ground-truth cloud source")
      ->check(CLI::IsMember({"frames", "sample", "none"}));
  simulate->add_option("--gt-density", sim.gt_density,
                       "Points per square meter for --gt-cloud sample");
  simulate->add_flag("--dump-config", sim.dump_config,
                     "Print the demo scene as JSON and exit");

  MapArgs map_args;
  auto* map = app.add_subcommand("map", "Integrate a dataset into a map");
  map->add_option("--dataset", map_args.dataset)->required();
  map->add_option("--out", map_args.out, "Map file")->required();
  map->add_option("--trace", map_args.trace, "Instance decision log");
  map->add_option("--max-frames", map_args.max_frames);
  map_args.params.Register(map, true);

  MapArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Report mapping throughput");
  bench->add_option("--dataset", bench_args.dataset)->required();
  bench->add_option("--max-frames", bench_args.max_frames);
  bench_args.params.Register(bench, true);

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "Render map labels into a view");
  render->add_option("--map", render_args.map)->required();
  render->add_option("--dataset", render_args.dataset,
                     "Take the camera from "
                     "a dataset frame");
  render->add_option("--frame", render_args.frame);
  render->add_option("--pose", render_args.pose, "Pose file");
  render->add_option("--intrinsics", render_args.intrinsics, "Intrinsics file");
  render->add_option("--out", render_args.out, "Output directory")->required();
  render_args.params.Register(render, false);

  EvalArgs e2;
  auto* eval2d = app.add_subcommand("eval2d", "Score rendered labels");
  eval2d->add_option("--map", e2.map)->required();
  eval2d->add_option("--dataset", e2.dataset)->required();
  eval2d->add_option("--stride", e2.stride, "Use every n-th frame");
  eval2d->add_option("--records", e2.records, "Write key=value records");
  e2.params.Register(eval2d, false);

  EvalArgs e3;
  auto* eval3d = app.add_subcommand("eval3d", "Score the map against a cloud");
  eval3d->add_option("--map", e3.map)->required();
  eval3d->add_option("--cloud", e3.cloud, "x y z class instance file");
  eval3d->add_option("--dataset", e3.dataset, "Use <dataset>/gt_cloud.txt");
  eval3d->add_option("--records", e3.records, "Write key=value records");
  e3.params.Register(eval3d, false);

  PlyArgs ply;
  auto* export_ply = app.add_subcommand("export-ply", "Write a PLY cloud");
  export_ply->add_option("--map", ply.map)->required();
  export_ply->add_option("--out", ply.out)->required();
  export_ply->add_option("--mode", ply.mode)
      ->check(CLI::IsMember({"semantic", "instance", "panoptic"}));
  ply.params.Register(export_ply, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*simulate) return Simulate(sim, out);
    if (*map) return Map(map_args, out);
    if (*bench) return Bench(bench_args, out);
    if (*render) return Render(render_args, out);
    if (*eval2d) return Eval2d(e2, out);
    if (*eval3d) return Eval3d(e3, out);
    if (*export_ply) return ExportPlyCommand(ply, out);
  } catch (const std::exception& e) {
    err << "panmap: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace panmap
