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

#include "panmap/evaluation.h"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "panmap/label_propagation.h"
#include "panmap/projection_renderer.h"

namespace panmap {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double MeanOfPresent(const std::vector<double>& values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    sum += v;
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

// Segments of one labeling. `of[i]` is the segment of element i, -1 if none.
struct Segments {
  std::vector<std::int32_t> of;
  std::vector<ClassId> class_id;
  std::vector<GlobalId> instance_id;
  std::vector<std::size_t> area;
};

void CheckLabeling(const Labeling& l) {
  if (l.class_id.size() != l.instance_id.size()) {
    throw std::invalid_argument("labeling: class/instance size mismatch");
  }
  if (l.width > 0 && l.class_id.size() % l.width != 0) {
    throw std::invalid_argument("labeling: size is not a multiple of width");
  }
}

Segments ExtractSegments(const Labeling& l, const ClassTable& table,
                         bool prediction) {
  CheckLabeling(l);
  const std::size_t n = l.class_id.size();
  Segments s;
  s.of.assign(n, -1);
  std::map<std::pair<ClassId, GlobalId>, std::int32_t> keyed;
  auto new_segment = [&](ClassId c, GlobalId z) {
    s.class_id.push_back(c);
    s.instance_id.push_back(z);
    s.area.push_back(0);
    return static_cast<std::int32_t>(s.class_id.size() - 1);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (s.of[i] >= 0) continue;
    const ClassId c = l.class_id[i];
    if (c == kVoidClass || !table.Contains(c)) continue;
    const bool thing = table.IsThing(c);
    const GlobalId z = thing ? l.instance_id[i] : kNoInstance;
    const bool garbage = prediction && thing && z == kNoInstance;
    if (garbage && l.width > 0) {
      // Flood fill one 4-connected garbage region.
      const std::int32_t id = new_segment(c, kNoInstance);
      const int w = l.width;
      const int h = static_cast<int>(n / w);
      std::vector<std::size_t> stack{i};
      s.of[i] = id;
      while (!stack.empty()) {
        const std::size_t j = stack.back();
        stack.pop_back();
        ++s.area[id];
        const int u = static_cast<int>(j % w);
        const int v = static_cast<int>(j / w);
        const int du[4] = {1, -1, 0, 0};
        const int dv[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
          const int nu = u + du[k];
          const int nv = v + dv[k];
          if (nu < 0 || nv < 0 || nu >= w || nv >= h) continue;
          const std::size_t q = static_cast<std::size_t>(nv) * w + nu;
          if (s.of[q] >= 0 || l.class_id[q] != c ||
              l.instance_id[q] != kNoInstance) {
            continue;
          }
          s.of[q] = id;
          stack.push_back(q);
        }
      }
      continue;
    }
    auto [it, inserted] = keyed.try_emplace({c, z}, 0);
    if (inserted) it->second = new_segment(c, z);
    s.of[i] = it->second;
    ++s.area[it->second];
  }
  return s;
}

struct Overlaps {
  // Sorted (pred, gt) -> intersection.
  std::vector<std::pair<std::pair<std::int32_t, std::int32_t>, std::size_t>>
      pairs;
  std::vector<std::size_t> pred_on_void;  // per pred segment
};

Overlaps ComputeOverlaps(const Segments& pred, const Segments& gt,
                         const Labeling& gt_labels) {
  if (pred.of.size() != gt.of.size()) {
    throw std::invalid_argument("labelings differ in size");
  }
  std::map<std::pair<std::int32_t, std::int32_t>, std::size_t> inter;
  Overlaps o;
  o.pred_on_void.assign(pred.area.size(), 0);
  for (std::size_t i = 0; i < pred.of.size(); ++i) {
    const std::int32_t p = pred.of[i];
    if (p < 0) continue;
    const std::int32_t g = gt.of[i];
    if (g >= 0) {
      ++inter[{p, g}];
    } else if (gt_labels.class_id[i] == kVoidClass) {
      ++o.pred_on_void[p];
    }
  }
  o.pairs.assign(inter.begin(), inter.end());
  return o;
}

double SegmentIou(const Segments& pred, const Segments& gt, const Overlaps& o,
                  std::int32_t p, std::int32_t g, std::size_t intersection) {
  const double uni = static_cast<double>(pred.area[p] - o.pred_on_void[p]) +
                     static_cast<double>(gt.area[g]) -
                     static_cast<double>(intersection);
  return uni <= 0.0 ? 0.0 : intersection / uni;
}

std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

// --- 3D matching -----------------------------------------------------------

std::vector<PointMatch> MatchPoints3d(const PanopticMap& map,
                                      const GroundTruthCloud& cloud,
                                      const MappingParams& params) {
  struct Prepared {
    bool valid = false;
    Eigen::Vector3d mean;
    Eigen::LLT<Eigen::Matrix3d> llt;
  };
  std::vector<std::optional<Prepared>> prepared(map.size());
  auto prepare = [&](VoxelSlot slot) -> const Prepared& {
    auto& entry = prepared[slot];
    if (!entry) {
      entry.emplace();
      if (auto dist = VoxelDistribution(map.voxel(slot))) {
        entry->mean = dist->mean;
        entry->llt.compute(dist->covariance);
        entry->valid = entry->llt.info() == Eigen::Success;
      }
    }
    return *entry;
  };

  std::vector<PointMatch> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Eigen::Vector3d& p = cloud[i].point;
    if (!p.allFinite()) continue;
    const VoxelIndex base = ToVoxelIndex(p, map.voxel_size());
    double best = std::numeric_limits<double>::infinity();
    std::optional<VoxelSlot> best_slot;
    for (int dz = -1; dz <= 1; ++dz) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          auto slot = map.FindSlot({base.x + dx, base.y + dy, base.z + dz});
          if (!slot) continue;
          const Prepared& g = prepare(*slot);
          if (!g.valid) continue;
          const Eigen::Vector3d w = g.llt.matrixL().solve(p - g.mean);
          const double d2 = w.squaredNorm();
          if (d2 < best) {
            best = d2;
            best_slot = slot;
          }
        }
      }
    }
    if (!best_slot) continue;
    const NdtVoxel& voxel = map.voxel(*best_slot);
    PointMatch& m = out[i];
    m.matched = true;
    m.distance = std::sqrt(best);
    m.voxel = voxel.index;
    m.panoptic = CachedOrPropagate(voxel, map.class_table(), params);
    m.semantic = voxel.semantic.Argmax().value_or(kVoidClass);
  }
  return out;
}

// --- Semantic IoU ------------------------------------------------------------

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes)
    : n_(num_classes), counts_(num_classes * num_classes, 0) {}

void ConfusionMatrix::Add(ClassId predicted, ClassId ground_truth) {
  if (ground_truth == kVoidClass) return;
  if (ground_truth >= n_ || predicted >= n_) {
    throw std::invalid_argument("confusion matrix: class id out of range");
  }
  ++counts_[ground_truth * n_ + predicted];
}

void ConfusionMatrix::Add(std::span<const ClassId> predicted,
                          std::span<const ClassId> ground_truth) {
  if (predicted.size() != ground_truth.size()) {
    throw std::invalid_argument("confusion matrix: size mismatch");
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    Add(predicted[i], ground_truth[i]);
  }
}

std::vector<double> ConfusionMatrix::PerClassIou() const {
  std::vector<double> iou(n_, kNaN);
  for (std::size_t c = 1; c < n_; ++c) {
    std::uint64_t tp = counts_[c * n_ + c];
    std::uint64_t fn = 0;
    std::uint64_t fp = 0;
    for (std::size_t k = 0; k < n_; ++k) {
      if (k == c) continue;
      fn += counts_[c * n_ + k];  // includes predicted void
      fp += counts_[k * n_ + c];  // GT void rows are never filled
    }
    const std::uint64_t denom = tp + fp + fn;
    if (denom > 0) iou[c] = static_cast<double>(tp) / denom;
  }
  return iou;
}

double ConfusionMatrix::MeanIou() const { return MeanOfPresent(PerClassIou()); }

SemanticScores SemanticMiou(std::span<const ClassId> predicted,
                            std::span<const ClassId> ground_truth,
                            std::size_t num_classes) {
  ConfusionMatrix cm(num_classes);
  cm.Add(predicted, ground_truth);
  SemanticScores s;
  s.per_class_iou = cm.PerClassIou();
  s.miou = MeanOfPresent(s.per_class_iou);
  return s;
}

// --- Panoptic quality --------------------------------------------------------

PanopticQualityAccumulator::PanopticQualityAccumulator(const ClassTable& table)
    : table_(table), stats_(table.size()) {}

void PanopticQualityAccumulator::Add(const Labeling& predicted,
                                     const Labeling& ground_truth) {
  const Segments pred = ExtractSegments(predicted, table_, true);
  const Segments gt = ExtractSegments(ground_truth, table_, false);
  const Overlaps o = ComputeOverlaps(pred, gt, ground_truth);

  std::vector<bool> pred_matched(pred.area.size(), false);
  std::vector<bool> gt_matched(gt.area.size(), false);
  for (const auto& [key, inter] : o.pairs) {
    const auto [p, g] = key;
    if (pred.class_id[p] != gt.class_id[g]) continue;
    const double iou = SegmentIou(pred, gt, o, p, g, inter);
    if (iou <= 0.5) continue;
    if (pred_matched[p] || gt_matched[g]) {
      throw std::logic_error("panoptic quality: IoU > 0.5 match not unique");
    }
    pred_matched[p] = gt_matched[g] = true;
    auto& st = stats_[pred.class_id[p]];
    ++st.tp;
    st.iou_sum += iou;
  }
  for (std::size_t p = 0; p < pred.area.size(); ++p) {
    if (pred_matched[p]) continue;
    // Predictions lying mostly on unlabeled ground truth are not penalized.
    if (o.pred_on_void[p] * 2 > pred.area[p]) continue;
    ++stats_[pred.class_id[p]].fp;
  }
  for (std::size_t g = 0; g < gt.area.size(); ++g) {
    if (!gt_matched[g]) ++stats_[gt.class_id[g]].fn;
  }
}

PqScores PanopticQualityAccumulator::Compute() const {
  PqScores s;
  s.per_class = stats_;
  std::vector<double> pq, sq, rq;
  for (const auto& st : stats_) {
    s.tp += st.tp;
    s.fp += st.fp;
    s.fn += st.fn;
    if (!st.present()) continue;
    pq.push_back(st.pq());
    sq.push_back(st.sq());
    rq.push_back(st.rq());
  }
  s.pq = MeanOfPresent(pq);
  s.sq = MeanOfPresent(sq);
  s.rq = MeanOfPresent(rq);
  return s;
}

PqScores PanopticQuality(const Labeling& predicted,
                         const Labeling& ground_truth,
                         const ClassTable& table) {
  PanopticQualityAccumulator acc(table);
  acc.Add(predicted, ground_truth);
  return acc.Compute();
}

// --- Average precision -------------------------------------------------------

double AveragePrecision(std::vector<std::pair<double, bool>> detections,
                        std::size_t num_ground_truth) {
  if (num_ground_truth == 0) return 0.0;
  std::stable_sort(
      detections.begin(), detections.end(),
      [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<double> precision;
  std::vector<double> recall;
  std::size_t tp = 0;
  for (std::size_t i = 0; i < detections.size(); ++i) {
    tp += detections[i].second;
    precision.push_back(static_cast<double>(tp) / (i + 1));
    recall.push_back(static_cast<double>(tp) / num_ground_truth);
  }
  // Precision envelope, then sum over recall steps.
  for (std::size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < precision.size(); ++i) {
    ap += (recall[i] - prev_recall) * precision[i];
    prev_recall = recall[i];
  }
  return ap;
}

Ap50Accumulator::Ap50Accumulator(
    const ClassTable& table, std::unordered_map<GlobalId, double> confidences)
    : table_(table),
      confidences_(std::move(confidences)),
      detections_(table.size()),
      num_gt_(table.size(), 0) {}

void Ap50Accumulator::Add(const Labeling& predicted,
                          const Labeling& ground_truth) {
  // Instances only: no connected-region splitting needed.
  Labeling pred_flat = predicted;
  pred_flat.width = 0;
  const Segments pred = ExtractSegments(pred_flat, table_, false);
  const Segments gt = ExtractSegments(ground_truth, table_, false);
  const Overlaps o = ComputeOverlaps(pred, gt, ground_truth);

  auto is_instance = [&](const Segments& s, std::size_t k) {
    return table_.IsThing(s.class_id[k]) && s.instance_id[k] != kNoInstance;
  };
  std::vector<std::vector<std::pair<std::int32_t, std::size_t>>> overlaps(
      pred.area.size());
  for (const auto& [key, inter] : o.pairs) {
    overlaps[key.first].push_back({key.second, inter});
  }

  struct Candidate {
    double confidence;
    GlobalId id;
    std::int32_t segment;
  };
  std::vector<Candidate> candidates;
  for (std::size_t p = 0; p < pred.area.size(); ++p) {
    if (!is_instance(pred, p)) continue;
    auto it = confidences_.find(pred.instance_id[p]);
    if (it == confidences_.end()) {
      throw std::invalid_argument("AP50: no confidence for instance " +
                                  std::to_string(pred.instance_id[p]));
    }
    candidates.push_back(
        {it->second, pred.instance_id[p], static_cast<std::int32_t>(p)});
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.confidence != b.confidence) {
                return a.confidence > b.confidence;
              }
              return a.id < b.id;
            });

  std::vector<bool> gt_used(gt.area.size(), false);
  for (std::size_t g = 0; g < gt.area.size(); ++g) {
    if (is_instance(gt, g)) ++num_gt_[gt.class_id[g]];
  }
  for (const Candidate& c : candidates) {
    const ClassId cls = pred.class_id[c.segment];
    double best_iou = 0.0;
    std::int32_t best_gt = -1;
    for (const auto& [g, inter] : overlaps[c.segment]) {
      if (gt_used[g] || !is_instance(gt, g) || gt.class_id[g] != cls) continue;
      const double iou = SegmentIou(pred, gt, o, c.segment, g, inter);
      if (iou >= 0.5 && iou > best_iou) {
        best_iou = iou;
        best_gt = g;
      }
    }
    if (best_gt >= 0) gt_used[best_gt] = true;
    detections_[cls].push_back({c.confidence, best_gt >= 0});
  }
}

ApScores Ap50Accumulator::Compute() const {
  ApScores s;
  s.per_class.assign(table_.size(), kNaN);
  for (std::size_t c = 0; c < table_.size(); ++c) {
    if (!table_.IsThing(static_cast<ClassId>(c)) || num_gt_[c] == 0) continue;
    s.per_class[c] = AveragePrecision(detections_[c], num_gt_[c]);
  }
  s.mean = MeanOfPresent(s.per_class);
  return s;
}

std::unordered_map<GlobalId, double> InstanceConfidences(
    const PanopticMap& map) {
  std::map<GlobalId, double> mass;
  for (const NdtVoxel& v : map.voxels()) {
    for (const auto& e : v.instances.entries()) mass[e.id] += e.mass;
  }
  double max_mass = 0.0;
  for (const auto& [id, m] : mass) max_mass = std::max(max_mass, m);
  std::unordered_map<GlobalId, double> out;
  for (const auto& [id, m] : mass) {
    out[id] = max_mass > 0.0 ? m / max_mass : 0.0;
  }
  return out;
}

// --- Reports -----------------------------------------------------------------

namespace {

EvalReport BuildReport(const ClassTable& table, const ConfusionMatrix& sem,
                       const ConfusionMatrix& pan,
                       const PanopticQualityAccumulator& pq,
                       const Ap50Accumulator& ap) {
  EvalReport r;
  const auto sem_iou = sem.PerClassIou();
  const auto pan_iou = pan.PerClassIou();
  const PqScores pq_scores = pq.Compute();
  const ApScores ap_scores = ap.Compute();
  for (const auto& info : table.classes()) {
    if (info.id == kVoidClass) continue;
    ClassReport c;
    c.id = info.id;
    c.name = info.name;
    c.kind = info.kind;
    c.iou = sem_iou[info.id];
    c.iou_panoptic = pan_iou[info.id];
    c.pq = pq_scores.per_class[info.id];
    c.ap50 = ap_scores.per_class[info.id];
    r.classes.push_back(c);
  }
  r.miou = MeanOfPresent(sem_iou);
  r.miou_panoptic = MeanOfPresent(pan_iou);
  r.pq = pq_scores.pq;
  r.sq = pq_scores.sq;
  r.rq = pq_scores.rq;
  r.tp = pq_scores.tp;
  r.fp = pq_scores.fp;
  r.fn = pq_scores.fn;
  r.ap50 = ap_scores.mean;
  return r;
}

}  // namespace

std::string EvalReport::ToText() const {
  std::ostringstream os;
  os << "elements          " << num_elements << "\n"
     << "matched_fraction  " << Num(matched_fraction) << "\n"
     << "mIoU              " << Num(miou) << "\n"
     << "mIoU_P            " << Num(miou_panoptic) << "\n"
     << "PQ                " << Num(pq) << "\n"
     << "SQ                " << Num(sq) << "\n"
     << "RQ                " << Num(rq) << "\n"
     << "AP50              " << Num(ap50) << "\n"
     << "TP/FP/FN          " << tp << "/" << fp << "/" << fn << "\n\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %-6s %9s %9s %9s %9s %9s %9s\n",
                "class", "kind", "IoU", "IoU_P", "PQ", "SQ", "RQ", "AP50");
  os << line;
  for (const auto& c : classes) {
    const bool present = c.pq.present();
    std::snprintf(line, sizeof(line), "%-16s %-6s %9s %9s %9s %9s %9s %9s\n",
                  c.name.c_str(), ToString(c.kind).c_str(), Num(c.iou).c_str(),
                  Num(c.iou_panoptic).c_str(),
                  Num(present ? c.pq.pq() : kNaN).c_str(),
                  Num(present ? c.pq.sq() : kNaN).c_str(),
                  Num(present ? c.pq.rq() : kNaN).c_str(), Num(c.ap50).c_str());
    os << line;
  }
  return os.str();
}

std::string EvalReport::ToRecords() const {
  std::ostringstream os;
  os << "elements=" << num_elements << "\n"
     << "matched_fraction=" << Num(matched_fraction) << "\n"
     << "miou=" << Num(miou) << "\n"
     << "miou_panoptic=" << Num(miou_panoptic) << "\n"
     << "pq=" << Num(pq) << "\n"
     << "sq=" << Num(sq) << "\n"
     << "rq=" << Num(rq) << "\n"
     << "ap50=" << Num(ap50) << "\n"
     << "tp=" << tp << "\n"
     << "fp=" << fp << "\n"
     << "fn=" << fn << "\n";
  for (const auto& c : classes) {
    const std::string k = "class." + c.name + ".";
    const bool present = c.pq.present();
    os << k << "iou=" << Num(c.iou) << "\n"
       << k << "iou_panoptic=" << Num(c.iou_panoptic) << "\n"
       << k << "pq=" << Num(present ? c.pq.pq() : kNaN) << "\n"
       << k << "sq=" << Num(present ? c.pq.sq() : kNaN) << "\n"
       << k << "rq=" << Num(present ? c.pq.rq() : kNaN) << "\n"
       << k << "ap50=" << Num(c.ap50) << "\n";
  }
  return os.str();
}

EvalReport Evaluate2d(const PanopticMap& map,
                      std::span<const GroundTruthView> views,
                      const MappingParams& params) {
  const ClassTable& table = map.class_table();
  const auto records = ExportLabels(map, params);
  ConfusionMatrix sem(table.size());
  ConfusionMatrix pan(table.size());
  PanopticQualityAccumulator pq(table);
  Ap50Accumulator ap(table, InstanceConfidences(map));
  std::size_t gt_pixels = 0;
  std::size_t covered = 0;
  for (const auto& view : views) {
    if (!view.class_id.SameShape(view.intrinsics.width,
                                 view.intrinsics.height) ||
        !view.instance_id.SameShape(view.class_id)) {
      throw std::invalid_argument("evaluate2d: view raster size mismatch");
    }
    const RenderedView r = RenderView(records, view.intrinsics, view.pose,
                                      params.k_sigma, params.max_depth);
    sem.Add(r.semantic.pixels(), view.class_id.pixels());
    pan.Add(r.panoptic_class.pixels(), view.class_id.pixels());
    const Labeling pred{r.panoptic_class.pixels(), r.instance.pixels(),
                        view.intrinsics.width};
    const Labeling gt{view.class_id.pixels(), view.instance_id.pixels(),
                      view.intrinsics.width};
    pq.Add(pred, gt);
    ap.Add(pred, gt);
    for (std::size_t i = 0; i < view.class_id.size(); ++i) {
      if (view.class_id[i] == kVoidClass) continue;
      ++gt_pixels;
      covered += r.depth[i] > 0.0;
    }
  }
  EvalReport report = BuildReport(table, sem, pan, pq, ap);
  report.num_elements = gt_pixels;
  report.matched_fraction =
      gt_pixels == 0 ? 0.0 : static_cast<double>(covered) / gt_pixels;
  return report;
}

EvalReport Evaluate3d(const PanopticMap& map, const GroundTruthCloud& cloud,
                      const MappingParams& params) {
  const ClassTable& table = map.class_table();
  const auto matches = MatchPoints3d(map, cloud, params);
  std::vector<ClassId> gt_class(cloud.size());
  std::vector<GlobalId> gt_inst(cloud.size());
  std::vector<ClassId> pred_sem(cloud.size());
  std::vector<ClassId> pred_class(cloud.size());
  std::vector<GlobalId> pred_inst(cloud.size());
  std::size_t gt_points = 0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    gt_class[i] = cloud[i].class_id;
    gt_inst[i] = cloud[i].instance_id;
    pred_sem[i] = matches[i].semantic;
    pred_class[i] = matches[i].panoptic.class_id;
    pred_inst[i] = matches[i].panoptic.instance_id;
    if (gt_class[i] != kVoidClass) {
      ++gt_points;
      matched += matches[i].matched;
    }
  }
  ConfusionMatrix sem(table.size());
  ConfusionMatrix pan(table.size());
  sem.Add(pred_sem, gt_class);
  pan.Add(pred_class, gt_class);
  PanopticQualityAccumulator pq(table);
  Ap50Accumulator ap(table, InstanceConfidences(map));
  const Labeling pred{pred_class, pred_inst, 0};
  const Labeling gt{gt_class, gt_inst, 0};
  pq.Add(pred, gt);
  ap.Add(pred, gt);
  EvalReport report = BuildReport(table, sem, pan, pq, ap);
  report.num_elements = gt_points;
  report.matched_fraction =
      gt_points == 0 ? 0.0 : static_cast<double>(matched) / gt_points;
  return report;
}

}  // namespace panmap
