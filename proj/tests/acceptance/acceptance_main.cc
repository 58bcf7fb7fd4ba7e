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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any gating criterion fails.

#include <Eigen/LU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "panmap/evaluation.h"
#include "panmap/instance_tracker.h"
#include "panmap/label_propagation.h"
#include "panmap/map_integrator.h"
#include "panmap/map_io.h"
#include "panmap/scene_simulator.h"
#include "random_map.h"

namespace panmap {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects named sub-checks; the first failures are reported.
class Checks {
 public:
  void Expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  void ExpectNear(double a, double b, double tol, const std::string& what) {
    Expect(std::abs(a - b) <= tol,
           what + " (" + Fmt("%.12g", a) + " vs " + Fmt("%.12g", b) + ")");
  }
  Outcome Finish(std::string detail = {}) const {
    Outcome o;
    o.pass = failures_.empty();
    std::ostringstream s;
    s << (total_ - failures_.size()) << "/" << total_ << " checks";
    if (!detail.empty()) s << ", " << detail;
    for (std::size_t i = 0; i < failures_.size() && i < 3; ++i) {
      s << "; failed: " << failures_[i];
    }
    o.detail = s.str();
    return o;
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
};

// void=0, wall=1, floor=2, chair=3, sofa=4, table=5.
ClassTable SmallTable() {
  return ClassTable::FromNames({"wall", "floor"}, {"chair", "sofa", "table"});
}
constexpr ClassId kWall = 1;
constexpr ClassId kChair = 3;
constexpr ClassId kSofa = 4;
constexpr ClassId kTable = 5;

// ------------------------------------------------------------ criterion 1

Outcome NdtOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> count(3, 10000);
  std::uniform_int_distribution<std::int64_t> cell(-20000, 20000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int set = 0; set < 100; ++set) {
    const double size = 0.05 * (1 + set % 4);
    const VoxelIndex index{cell(rng), cell(rng), cell(rng)};
    NdtVoxel voxel(index, size);
    const Eigen::Vector3d corner = VoxelMinCorner(index, size);
    // Anisotropic spread, some sets nearly planar.
    const Eigen::Vector3d spread(1.0, 0.2 + 0.8 * u(rng),
                                 set % 3 == 0 ? 0.01 : u(rng));
    std::vector<Eigen::Vector3d> pts(count(rng));
    for (auto& p : pts) {
      const Eigen::Vector3d r(u(rng), u(rng), u(rng));
      p = corner +
          size * (0.001 + 0.998 * r.cwiseProduct(spread).array()).matrix();
      voxel.IntegratePoint(p, size);
    }
    // Two-pass batch estimate.
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& p : pts) mean += p;
    mean /= static_cast<double>(pts.size());
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
    cov /= static_cast<double>(pts.size() - 1);
    cov += kCovarianceEpsilon * Eigen::Matrix3d::Identity();

    const auto g = VoxelDistribution(voxel);
    if (!g) return {false, "no distribution for set " + std::to_string(set)};
    worst = std::max(worst, (g->mean - mean).norm() / mean.norm());
    worst = std::max(worst, (g->covariance - cov).norm() / cov.norm());
  }
  const double t = Seconds(start);
  return {worst <= 1e-9 && t < 10.0, "max relative error " +
                                         Fmt("%.3g", worst) + ", " +
                                         Fmt("%.2f", t) + " s"};
}

// ------------------------------------------------------------ criterion 2

struct Grid {
  Grid(int w, int h) : width(w), cls(w * h, kVoidClass), ids(w * h, 0) {}
  void Fill(int u0, int u1, int v0, int v1, ClassId c, GlobalId id) {
    for (int v = v0; v < v1; ++v) {
      for (int u = u0; u < u1; ++u) {
        cls[v * width + u] = c;
        ids[v * width + u] = id;
      }
    }
  }
  Labeling labeling() const { return {cls, ids, width}; }
  int width;
  std::vector<ClassId> cls;
  std::vector<GlobalId> ids;
};

Outcome PqOracle() {
  Checks c;
  const ClassTable table = SmallTable();
  Grid gt(20, 10), pred(20, 10);
  gt.Fill(0, 10, 0, 10, kChair, 1);
  gt.Fill(10, 20, 0, 10, kWall, 0);
  pred.Fill(0, 8, 0, 10, kChair, 5);
  pred.Fill(8, 10, 0, 10, kChair, 6);
  pred.Fill(10, 20, 0, 10, kWall, 0);
  const PqScores s = PanopticQuality(pred.labeling(), gt.labeling(), table);
  c.ExpectNear(s.per_class[kChair].pq(), 8.0 / 15.0, 1e-12, "PQ chair");
  c.ExpectNear(s.per_class[kWall].pq(), 1.0, 1e-12, "PQ wall");
  c.ExpectNear(s.pq, (8.0 / 15.0 + 1.0) / 2.0, 1e-12, "PQ overall");
  c.ExpectNear(s.pq, 0.7667, 5e-5, "PQ overall rounded");

  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> cls(0, 5), id(0, 3);
  double worst = 0.0;
  std::size_t cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Grid p(8, 6), g(8, 6);
    for (std::size_t i = 0; i < g.cls.size(); ++i) {
      g.cls[i] = static_cast<ClassId>(cls(rng));
      g.ids[i] = table.IsThing(g.cls[i]) ? id(rng) : 0;
      if (rng() % 4 == 0) {
        p.cls[i] = static_cast<ClassId>(cls(rng));
        p.ids[i] = table.IsThing(p.cls[i]) ? id(rng) : 0;
      } else {
        p.cls[i] = g.cls[i];
        p.ids[i] = g.ids[i];
      }
    }
    const PqScores r = PanopticQuality(p.labeling(), g.labeling(), table);
    for (const PqClassStats& k : r.per_class) {
      if (!k.present()) continue;
      ++cases;
      worst = std::max(worst, std::abs(k.pq() - k.sq() * k.rq()));
    }
  }
  c.Expect(worst <= 1e-12, "PQ = SQ * RQ");
  return c.Finish(std::to_string(cases) +
                  " random class cases, max |PQ-SQ*RQ| " + Fmt("%.2g", worst));
}

// ------------------------------------------------------------ criterion 3

NdtVoxel LabeledVoxel(
    std::initializer_list<std::pair<ClassId, double>> semantic,
    std::initializer_list<std::pair<GlobalId, double>> instances,
    std::uint64_t n_l, std::uint64_t n_z) {
  NdtVoxel v;
  for (auto [k, m] : semantic) v.semantic.Add(k, m, SmallTable());
  for (auto [id, m] : instances) v.instances.Add(id, m);
  v.semantic_updates = n_l;
  v.instance_updates = n_z;
  return v;
}

InstanceMask RowMask(GlobalId id, int n, int begin, int end) {
  InstanceMask m{id, Raster<std::uint8_t>(n, 1, 0), 0};
  for (int u = begin; u < end; ++u) m.mask(u, 0) = 1;
  m.area = static_cast<std::size_t>(end - begin);
  return m;
}

PanopticFrame RowFrame(int width, ClassId c, LocalInstanceId z) {
  PanopticFrame f;
  f.intrinsics = Intrinsics{100.0, 100.0, 0.0, 0.0, width, 1};
  f.depth = Raster<double>(width, 1, 1.05);
  f.semantic = Raster<ClassId>(width, 1, c);
  f.instance = Raster<LocalInstanceId>(width, 1, z);
  return f;
}

Outcome OperationLevelChecks() {
  Checks c;
  const ClassTable table = SmallTable();
  const MappingParams params;

  // Forward mapping of pixels to voxels.
  {
    PanopticMap map(0.1, table);
    const FrameVoxelCache cache = ForwardMap(RowFrame(2, kWall, 0), map, 20.0);
    c.Expect(cache.touched.size() == 1, "forward map: one voxel");
    c.Expect(cache.slots[0] != kNoSlot && cache.slots[0] == cache.slots[1],
             "forward map: two cached pixels");
  }
  // Top-Z selection.
  {
    InstanceHistogram h;
    h.Add(7, 6.0);
    h.Add(3, 3.0);
    h.Add(9, 1.0);
    c.Expect(!IsInTopZ(h, 9, 0.8), "top-Z excludes id 9");
    c.Expect(IsInTopZ(h, 3, 0.8) && IsInTopZ(h, 7, 0.8), "top-Z keeps 3, 7");
    InstanceHistogram tied;
    tied.Add(1, 2.0);
    tied.Add(2, 2.0);
    c.Expect(IsInTopZ(tied, 1, 0.8) && IsInTopZ(tied, 2, 0.8), "top-Z ties");
  }
  // Three-band matching, including both boundaries.
  {
    const std::vector<InstanceMask> masks = {RowMask(7, 40, 0, 20)};
    const std::pair<int, MatchOutcome> bands[] = {{5, MatchOutcome::kMatched},
                                                  {1, MatchOutcome::kNew},
                                                  {3, MatchOutcome::kIgnored},
                                                  {4, MatchOutcome::kIgnored},
                                                  {2, MatchOutcome::kNew}};
    for (const auto& [px, expected] : bands) {
      PanopticMap map(0.1, table);
      Raster<LocalInstanceId> obs(40, 1, 0);
      for (int u = 0; u < px; ++u) obs(u, 0) = 1;
      const auto d = MatchInstances(masks, obs, 0.2, 0.1, map);
      c.Expect(d.at(1).outcome == expected,
               "match band at IoU " + Fmt("%.2f", px / 20.0));
    }
    PanopticMap map(0.1, table);
    bool threw = false;
    try {
      MatchInstances(masks, Raster<LocalInstanceId>(40, 1, 0), 0.05, 0.1, map);
    } catch (const std::invalid_argument&) {
      threw = true;
    }
    c.Expect(threw, "theta_match < theta_new rejected");
  }
  // Instance and semantic histogram updates with strict gates.
  {
    PanopticMap map(0.1, table);
    const PanopticFrame f = RowFrame(3, kChair, 1);
    const FrameVoxelCache cache = ForwardMap(f, map, 20.0);
    const PanopticImage labels = MergePanoptic(f.semantic, f.instance, table);
    MatchDecisions decisions;
    decisions[1] = MatchDecision{1, MatchOutcome::kMatched, 42, 0.5};
    Raster<double> at_gate(3, 1, 0.4);
    c.Expect(UpdateInstances(map, labels, at_gate, cache, decisions, 0.4) == 0,
             "instance gate is strict");
    Raster<double> scores(3, 1);
    scores[0] = 0.9;
    scores[1] = 0.8;
    scores[2] = 0.7;
    UpdateInstances(map, labels, scores, cache, decisions, 0.1);
    const NdtVoxel& v = map.voxel(cache.touched.front());
    c.ExpectNear(v.instances.mass(42), 2.4, 1e-12, "instance mass");
    c.Expect(v.instance_updates == 3, "instance update count");
    decisions[1].global_id = kNoInstance;
    decisions[1].outcome = MatchOutcome::kIgnored;
    c.Expect(UpdateInstances(map, labels, scores, cache, decisions, 0.1) == 0,
             "ignored instance not integrated");

    PanopticFrame gated = f;
    gated.semantic_score = Raster<double>(3, 1, 0.7);
    c.Expect(UpdateSemantics(map, labels, gated, cache, 0.7) == 0,
             "semantic gate is strict");
    PanopticMap ten(0.1, table);
    PanopticFrame row = RowFrame(10, kChair, 0);
    row.intrinsics.fx = 1000.0;
    const FrameVoxelCache cache10 = ForwardMap(row, ten, 20.0);
    UpdateSemantics(ten, MergePanoptic(row.semantic, row.instance, table), row,
                    cache10, 0.7);
    const NdtVoxel& w = ten.voxel(cache10.touched.front());
    c.ExpectNear(w.semantic.mass(kChair), 10.0, 0.0, "semantic mass");
    c.Expect(w.semantic_updates == 10, "semantic update count");
  }
  // Thing test and label propagation.
  {
    c.Expect(PtThing(LabeledVoxel({{kChair, 10}}, {{42, 5}}, 10, 5), 0.9, 0.25),
             "thing at ratio 0.5");
    c.Expect(
        !PtThing(LabeledVoxel({{kChair, 10}}, {{42, 1}}, 10, 1), 0.9, 0.25),
        "not thing at ratio 0.1");
    const NdtVoxel base = LabeledVoxel({{kChair, 6}, {kTable, 2}, {kWall, 2}},
                                       {{42, 5}, {7, 1}}, 10, 5);
    c.Expect(
        PropagateLabel(base, table, 0.9, 0.25) == PanopticLabel3D{kChair, 42},
        "propagate <chair, 42>");
    NdtVoxel sparse = base;
    sparse.instance_updates = 1;
    c.Expect(PropagateLabel(sparse, table, 0.9, 0.25) ==
                 PanopticLabel3D{kChair, kNoInstance},
             "propagate garbage <chair, 0>");
    c.Expect(PropagateLabel(LabeledVoxel({{kWall, 9}}, {}, 9, 0), table, 0.9,
                            0.25) == PanopticLabel3D{kWall, kNoInstance},
             "propagate stuff");
  }
  return c.Finish();
}

// ------------------------------------------------------- criteria 4, 5, 11

struct DemoRun {
  SceneSpec scene;
  std::vector<LabeledFrame> frames;
  std::vector<GroundTruthView> views;
  double simulate_seconds = 0.0;
};

const DemoRun& Demo() {
  static const DemoRun run = [] {
    const auto start = Clock::now();
    DemoRun r;
    r.scene = DemoScene(60);
    for (std::size_t i = 0; i < r.scene.frame_count(); ++i) {
      r.frames.push_back(RaycastFrame(r.scene, i, 1));
      r.views.push_back(r.frames.back().ground_truth_view());
    }
    r.simulate_seconds = Seconds(start);
    return r;
  }();
  return run;
}

struct VoxelRun {
  EvalReport report2d;
  double map_seconds = 0.0;
  std::size_t thing_ids = 0;
  std::size_t garbage_voxels = 0;
  std::optional<EvalReport> report3d;
};

MappingParams AtVoxelSize(double size) {
  MappingParams p;
  p.voxel_size = size;
  return p;
}

VoxelRun MapDemo(double voxel_size, bool with_3d) {
  const DemoRun& demo = Demo();
  const MappingParams params = AtVoxelSize(voxel_size);
  VoxelRun out;
  PanopticMap map(voxel_size, demo.scene.classes);
  const auto start = Clock::now();
  for (const LabeledFrame& f : demo.frames) ProcessFrame(map, f.frame, params);
  out.map_seconds = Seconds(start);
  std::set<GlobalId> ids;
  for (const auto& r : ExportLabels(map, params)) {
    if (r.label.instance_id != kNoInstance) {
      ids.insert(r.label.instance_id);
    } else if (map.class_table().IsThing(r.label.class_id)) {
      ++out.garbage_voxels;
    }
  }
  out.thing_ids = ids.size();
  out.report2d = Evaluate2d(map, demo.views, params);
  if (with_3d) {
    out.report3d = Evaluate3d(map, GtCloudFromFrames(demo.frames), params);
  }
  return out;
}

std::map<int, VoxelRun>& Runs() {
  static std::map<int, VoxelRun> runs;
  return runs;
}

Outcome GtRoundTrip() {
  const auto start = Clock::now();
  Demo();
  const VoxelRun& r = Runs()[5] = MapDemo(0.05, true);
  const double t = Seconds(start);
  Checks c;
  c.Expect(r.thing_ids == 3, "thing ids " + std::to_string(r.thing_ids));
  c.Expect(r.report2d.miou >= 0.90, "2D mIoU");
  c.Expect(r.report2d.pq >= 0.80, "2D PQ");
  c.Expect(r.report3d->matched_fraction >= 0.99, "3D matched fraction");
  c.Expect(t < 120.0, "runtime");
  return c.Finish("thing_ids=" + std::to_string(r.thing_ids) +
                  " garbage_voxels=" + std::to_string(r.garbage_voxels) +
                  " mIoU=" + Fmt("%.4f", r.report2d.miou) +
                  " PQ=" + Fmt("%.4f", r.report2d.pq) +
                  " matched=" + Fmt("%.6f", r.report3d->matched_fraction) +
                  " " + Fmt("%.1f", t) + " s");
}

Outcome VoxelSizeTrend() {
  Runs()[10] = MapDemo(0.10, false);
  Runs()[20] = MapDemo(0.20, false);
  const EvalReport& r20 = Runs()[20].report2d;
  const EvalReport& r10 = Runs()[10].report2d;
  const EvalReport& r5 = Runs()[5].report2d;
  Checks c;
  c.Expect(r20.miou <= r10.miou && r10.miou <= r5.miou, "mIoU trend");
  c.Expect(r20.pq <= r10.pq && r10.pq <= r5.pq, "PQ trend");
  return c.Finish("mIoU 20/10/5 cm = " + Fmt("%.4f", r20.miou) + "/" +
                  Fmt("%.4f", r10.miou) + "/" + Fmt("%.4f", r5.miou) +
                  ", PQ = " + Fmt("%.4f", r20.pq) + "/" + Fmt("%.4f", r10.pq) +
                  "/" + Fmt("%.4f", r5.pq));
}

Outcome Throughput() {
  const VoxelRun& r = Runs()[10];
  const double fps = Demo().frames.size() / r.map_seconds;
  return {true, "10 cm: " + Fmt("%.2f", fps) + " frames/s (" +
                    Fmt("%.2f", r.map_seconds) + " s for " +
                    std::to_string(Demo().frames.size()) + " frames)"};
}

// ------------------------------------------------------------ criterion 6

Outcome TemporalIntegration() {
  const DemoRun& demo = Demo();
  const NoiseSpec noise = DemoNoise(0.2, 0.0, 0, 7);
  const MappingParams params;
  PanopticMap map(params.voxel_size, demo.scene.classes);
  // Same flips, but without the lowered confidence on flipped pixels.
  PanopticMap unscored(params.voxel_size, demo.scene.classes);
  double input_miou = 0.0;
  for (std::size_t i = 0; i < demo.frames.size(); ++i) {
    LabeledFrame noisy = ApplyNoise(demo.frames[i], noise, i);
    input_miou +=
        SemanticMiou(noisy.frame.semantic.pixels(), noisy.gt_class.pixels(),
                     demo.scene.classes.size())
            .miou;
    ProcessFrame(map, noisy.frame, params);
    noisy.frame.semantic_score = {};
    ProcessFrame(unscored, noisy.frame, params);
  }
  input_miou /= static_cast<double>(demo.frames.size());
  const double map_miou = Evaluate2d(map, demo.views, params).miou;
  const double unscored_miou = Evaluate2d(unscored, demo.views, params).miou;
  return {map_miou > input_miou,
          "per-frame input mIoU " + Fmt("%.4f", input_miou) + ", map mIoU " +
              Fmt("%.4f", map_miou) + " (flips at full confidence: " +
              Fmt("%.4f", unscored_miou) + ")"};
}

// ------------------------------------------------------------ criterion 7

std::size_t ThingInstances(const PanopticMap& map,
                           const MappingParams& params) {
  std::set<GlobalId> ids;
  for (const auto& r : ExportLabels(map, params)) {
    if (r.label.instance_id != kNoInstance) ids.insert(r.label.instance_id);
  }
  return ids.size();
}

std::size_t MapTwoOrbits(bool clockwise, double start_angle,
                         std::uint64_t id_seed) {
  SceneSpec scene = DemoScene();
  const MappingParams params;
  PanopticMap map(params.voxel_size, scene.classes);
  scene.trajectory =
      Orbit({0.0, 0.0, 0.4}, 2.0, 1.6, 36, start_angle, clockwise);
  const auto second =
      Orbit({0.0, 0.0, 0.4}, 1.7, 1.2, 36, start_angle + 1.0, !clockwise);
  scene.trajectory.insert(scene.trajectory.end(), second.begin(), second.end());
  for (std::size_t i = 0; i < scene.frame_count(); ++i) {
    ProcessFrame(map, RaycastFrame(scene, i, id_seed + i).frame, params);
  }
  return ThingInstances(map, params);
}

Outcome TrackingStability() {
  Checks c;
  const DemoRun& demo = Demo();
  const MappingParams params;
  for (std::size_t i = 0; i < demo.frames.size(); i += 7) {
    PanopticMap map(params.voxel_size, demo.scene.classes);
    ProcessFrame(map, demo.frames[i].frame, params);
    const GlobalId next = map.next_global_id();
    const FrameStats again = ProcessFrame(map, demo.frames[i].frame, params);
    c.Expect(again.instances_new == 0 && map.next_global_id() == next,
             "re-fed frame " + std::to_string(i) + " allocated ids");
  }
  const std::size_t a = MapTwoOrbits(false, 0.0, 11);
  const std::size_t b = MapTwoOrbits(true, 2.5, 97);
  c.Expect(a == b, "instance counts differ");
  return c.Finish("instances per visitation order: " + std::to_string(a) +
                  " and " + std::to_string(b));
}

// ------------------------------------------------------------ criterion 8

Outcome HistogramBound() {
  Checks c;
  std::mt19937_64 rng(8);
  std::size_t evictions = 0;
  for (int trial = 0; trial < 500; ++trial) {
    InstanceHistogram h;
    std::map<GlobalId, double> oracle;
    std::uniform_int_distribution<GlobalId> id(1, 1 + trial % 60);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    for (int step = 0; step < 400; ++step) {
      const GlobalId z = id(rng);
      const double m = mass(rng);
      if (!oracle.count(z) && oracle.size() == InstanceHistogram::kCapacity) {
        auto victim = oracle.begin();
        for (auto it = oracle.begin(); it != oracle.end(); ++it) {
          if (it->second < victim->second ||
              (it->second == victim->second && it->first > victim->first)) {
            victim = it;
          }
        }
        c.Expect(std::none_of(oracle.begin(), oracle.end(),
                              [&](const auto& kv) {
                                return kv.second < victim->second;
                              }),
                 "victim is not minimal");
        oracle.erase(victim);
        ++evictions;
      }
      oracle[z] += m;
      h.Add(z, m);
      c.Expect(h.size() <= InstanceHistogram::kCapacity, "capacity exceeded");
      double sum = 0.0;
      bool same = h.size() == oracle.size();
      for (const InstanceEntry& e : h.entries()) {
        sum += e.mass;
        auto it = oracle.find(e.id);
        same = same && it != oracle.end() && it->second == e.mass;
      }
      c.Expect(same, "contents differ from oracle");
      c.Expect(std::abs(sum - h.total()) <= 1e-9, "total drift");
    }
  }
  c.Expect(evictions > 0, "no evictions exercised");
  return c.Finish(std::to_string(evictions) + " evictions");
}

// ------------------------------------------------------------ criterion 9

Outcome Serialization() {
  Checks c;
  std::mt19937_64 rng(9);
  const PanopticMap map = testing::RandomMap(rng, 10000);
  const std::string bytes = SerializeMap(map);
  const PanopticMap back = DeserializeMap(bytes);
  c.Expect(SerializeMap(back) == bytes, "in-memory round trip");
  const auto path =
      std::filesystem::temp_directory_path() / "panmap_acceptance_map.pndt";
  SaveMap(map, path);
  c.Expect(SerializeMap(LoadMap(path)) == bytes, "file round trip");
  std::filesystem::remove(path);

  std::size_t rejected = 0, attempts = 0;
  auto expect_rejected = [&](const std::string& bad, const std::string& what) {
    ++attempts;
    try {
      DeserializeMap(bad);
      c.Expect(false, what + " accepted");
    } catch (const MapFormatError& e) {
      const std::string msg = e.what();
      c.Expect(msg.find("byte") != std::string::npos, what + " diagnostic");
      ++rejected;
    }
  };
  expect_rejected(bytes.substr(0, bytes.size() / 2), "truncated file");
  expect_rejected(bytes.substr(0, 10), "truncated header");
  expect_rejected(bytes + "junk", "trailing bytes");
  std::string bad = bytes;
  bad[1] = '?';
  expect_rejected(bad, "bad magic");
  bad = bytes;
  bad[4] = 9;
  expect_rejected(bad, "bad version");
  {
    // A record claiming more instance entries than the histogram can hold.
    PanopticMap one(0.1, SmallTable());
    one.voxel(one.FindOrCreate(VoxelIndex{1, 2, 3})).instances.Add(5, 2.0);
    bad = SerializeMap(one);
    std::size_t entry_count = 4 + 4 + 8 + 4 + 8 + 8;
    for (const ClassInfo& k : one.class_table().classes()) {
      entry_count += 4 + 1 + 4 + k.name.size();
    }
    entry_count += 24 + 8 + 24 + 48 + 8 + 8 + 8 + 8 * one.class_table().size();
    c.Expect(bad[entry_count] == 1, "entry count offset");
    bad[entry_count] = 17;
    bad.append(16 * 16, '\0');
    expect_rejected(bad, "17 instance entries");
  }
  // Random corruption must never be accepted silently as garbage: anything
  // that loads must survive a further round trip.
  std::uniform_int_distribution<std::size_t> pos(0, bytes.size() - 1);
  for (int i = 0; i < 200; ++i) {
    bad = bytes;
    bad[pos(rng)] ^= static_cast<char>(1 + rng() % 255);
    try {
      const PanopticMap m = DeserializeMap(bad);
      c.Expect(DeserializeMap(SerializeMap(m)).size() == m.size(),
               "accepted corruption is inconsistent");
    } catch (const MapFormatError&) {
    }
  }
  return c.Finish(std::to_string(bytes.size()) + " bytes, " +
                  std::to_string(rejected) + "/" + std::to_string(attempts) +
                  " corrupted files rejected");
}

// ----------------------------------------------------------- criterion 10

double Mahalanobis(const NdtVoxel& v, const Eigen::Vector3d& p) {
  const Gaussian g = *VoxelDistribution(v);
  const Eigen::Vector3d d = p - g.mean;
  return std::sqrt(d.dot(g.covariance.inverse() * d));
}

Outcome MahalanobisMatcher() {
  Checks c;
  PanopticMap map(0.1, SmallTable());
  NdtVoxel& flat =
      map.voxel(map.FindOrCreate(Eigen::Vector3d(0.05, 0.05, 0.05)));
  for (double x : {0.005, 0.035, 0.065, 0.095}) {
    for (double y : {0.01, 0.09}) flat.IntegratePoint({x, y, 0.05}, 0.1);
  }
  flat.semantic.Add(kChair, 1.0, map.class_table());
  flat.semantic_updates = 1;
  NdtVoxel& diffuse =
      map.voxel(map.FindOrCreate(Eigen::Vector3d(0.15, 0.05, 0.05)));
  for (double x : {0.12, 0.18}) {
    for (double y : {0.02, 0.08}) {
      for (double z : {0.02, 0.08}) diffuse.IntegratePoint({x, y, z}, 0.1);
    }
  }
  diffuse.semantic.Add(kSofa, 1.0, map.class_table());
  diffuse.semantic_updates = 1;
  const NdtVoxel& f = *map.Find(Eigen::Vector3d(0.05, 0.05, 0.05));
  const NdtVoxel& d = *map.Find(Eigen::Vector3d(0.15, 0.05, 0.05));
  const Eigen::Vector3d mf = VoxelDistribution(f)->mean;
  const Eigen::Vector3d md = VoxelDistribution(d)->mean;
  const Eigen::Vector3d p(0.5 * (mf.x() + md.x()), 0.05, 0.05);
  c.ExpectNear((p - mf).norm(), (p - md).norm(), 1e-12, "equal Euclidean");
  const double df = Mahalanobis(f, p), dd = Mahalanobis(d, p);
  c.Expect(df < dd, "flat voxel closer in Mahalanobis terms");

  GroundTruthCloud cloud = {{p, kChair, 0}};
  for (int i = 0; i < 10; ++i) {
    cloud.push_back({Eigen::Vector3d(1.5 + 0.1 * i, 1.0, 1.0), kWall, 0});
  }
  const auto m = MatchPoints3d(map, cloud, MappingParams());
  c.Expect(m[0].matched && m[0].voxel == f.index, "assigned to flat voxel");
  c.Expect(m[0].semantic == kChair, "flat voxel label");
  c.ExpectNear(m[0].distance, df, 1e-9, "reported distance");
  bool unknown = true;
  for (std::size_t i = 1; i < m.size(); ++i) {
    unknown = unknown && !m[i].matched && m[i].panoptic == PanopticLabel3D{};
  }
  c.Expect(unknown, "far points unknown");
  return c.Finish("d_flat=" + Fmt("%.4f", df) +
                  " d_diffuse=" + Fmt("%.4f", dd));
}

struct Criterion {
  int id;
  const char* name;
  bool gating;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace panmap

int main() {
  using panmap::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "NDT incremental statistics match batch oracle", true,
       panmap::NdtOracle},
      {2, "PQ hand oracle and PQ = SQ * RQ", true, panmap::PqOracle},
      {3, "operation-level hand examples", true, panmap::OperationLevelChecks},
      {4, "ground-truth round trip at 5 cm", true, panmap::GtRoundTrip},
      {5, "voxel-size trend 20 -> 10 -> 5 cm", true, panmap::VoxelSizeTrend},
      {6, "temporal integration under 20% label flips", true,
       panmap::TemporalIntegration},
      {7, "instance tracking stability", true, panmap::TrackingStability},
      {8, "instance histogram bound", true, panmap::HistogramBound},
      {9, "map serialization", true, panmap::Serialization},
      {10, "Mahalanobis point matching", true, panmap::MahalanobisMatcher},
      {11, "throughput report (non-gating)", false, panmap::Throughput},
  };
  bool ok = true;
  for (const Criterion& c : criteria) {
    panmap::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
    if (c.gating && !o.pass) ok = false;
  }
  return ok ? 0 : 1;
}
