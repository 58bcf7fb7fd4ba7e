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

// Map evaluation against ground truth.
//
// Semantic quality is reported as per-class IoU and mIoU, panoptic quality as
// PQ = SQ * RQ with segments matched at IoU > 0.5, and instance quality as
// AP at 50% overlap. Scoring runs either in 3D, where ground-truth points are
// matched to the NDT voxel of smallest Mahalanobis distance, or in 2D, where
// the map is rendered into the ground-truth cameras.
//
// Conventions:
//  - Ground-truth void is never scored. A void prediction on a non-void
//    ground-truth element is a false negative for the ground-truth class.
//  - Classes absent from both ground truth and prediction are dropped from
//    means; the mean of an empty set is 0.
//  - Stuff classes form one segment per class and view. Predicted <thing, 0>
//    regions (garbage segments) form one segment per 4-connected region on
//    grids, one per class otherwise.

#ifndef PANMAP_EVALUATION_H_
#define PANMAP_EVALUATION_H_

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "panmap/class_table.h"
#include "panmap/geometry.h"
#include "panmap/labels.h"
#include "panmap/ndt_map.h"
#include "panmap/params.h"
#include "panmap/raster.h"

namespace panmap {

struct GroundTruthPoint {
  Eigen::Vector3d point;
  ClassId class_id = kVoidClass;
  GlobalId instance_id = kNoInstance;
};
using GroundTruthCloud = std::vector<GroundTruthPoint>;

struct PointMatch {
  bool matched = false;      // false: unknown
  PanopticLabel3D panoptic;  // void when unmatched
  ClassId semantic = kVoidClass;
  double distance = 0.0;  // Mahalanobis distance to the chosen voxel
  VoxelIndex voxel;
};

// For each point, searches the containing voxel and its 26 neighbours for the
// valid distribution with the smallest Mahalanobis distance and takes that
// voxel's labels. Points without any candidate are unknown.
std::vector<PointMatch> MatchPoints3d(const PanopticMap& map,
                                      const GroundTruthCloud& cloud,
                                      const MappingParams& params);

// Per-element panoptic labels. A positive width arranges the elements as a
// row-major grid (enables connected regions for garbage segments).
struct Labeling {
  std::span<const ClassId> class_id;
  std::span<const GlobalId> instance_id;
  int width = 0;
};

class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes);
  // Ignores elements whose ground truth is void.
  void Add(std::span<const ClassId> predicted,
           std::span<const ClassId> ground_truth);
  void Add(ClassId predicted, ClassId ground_truth);

  std::size_t num_classes() const { return n_; }
  std::uint64_t count(ClassId gt, ClassId pred) const {
    return counts_[gt * n_ + pred];
  }
  // NaN for classes absent from both sides.
  std::vector<double> PerClassIou() const;
  double MeanIou() const;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> counts_;
};

struct SemanticScores {
  std::vector<double> per_class_iou;  // NaN for absent classes
  double miou = 0.0;
};

SemanticScores SemanticMiou(std::span<const ClassId> predicted,
                            std::span<const ClassId> ground_truth,
                            std::size_t num_classes);

struct PqClassStats {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double iou_sum = 0.0;

  bool present() const { return tp + fp + fn > 0; }
  double sq() const { return tp == 0 ? 0.0 : iou_sum / tp; }
  double rq() const {
    const double d = tp + 0.5 * fp + 0.5 * fn;
    return d == 0.0 ? 0.0 : tp / d;
  }
  double pq() const {
    const double d = tp + 0.5 * fp + 0.5 * fn;
    return d == 0.0 ? 0.0 : iou_sum / d;
  }
};

struct PqScores {
  std::vector<PqClassStats> per_class;
  double pq = 0.0;
  double sq = 0.0;
  double rq = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

// Accumulates true/false positives and matched IoU over any number of views
// before scoring once.
class PanopticQualityAccumulator {
 public:
  explicit PanopticQualityAccumulator(const ClassTable& table);
  void Add(const Labeling& predicted, const Labeling& ground_truth);
  PqScores Compute() const;

 private:
  ClassTable table_;
  std::vector<PqClassStats> stats_;
};

PqScores PanopticQuality(const Labeling& predicted,
                         const Labeling& ground_truth, const ClassTable& table);

// All-point interpolated area under the precision-recall curve of detections
// sorted by descending confidence.
double AveragePrecision(std::vector<std::pair<double, bool>> detections,
                        std::size_t num_ground_truth);

struct ApScores {
  std::vector<double> per_class;  // NaN for thing classes absent from GT
  double mean = 0.0;
};

// Greedy AP50 matching per view, pooled over views. Every predicted instance
// must have an entry in the confidence table.
class Ap50Accumulator {
 public:
  Ap50Accumulator(const ClassTable& table,
                  std::unordered_map<GlobalId, double> confidences);
  // Throws std::invalid_argument for a predicted instance without confidence.
  void Add(const Labeling& predicted, const Labeling& ground_truth);
  ApScores Compute() const;

 private:
  ClassTable table_;
  std::unordered_map<GlobalId, double> confidences_;
  std::vector<std::vector<std::pair<double, bool>>> detections_;
  std::vector<std::size_t> num_gt_;
};

// Total instance-histogram mass of every global id, divided by the largest.
std::unordered_map<GlobalId, double> InstanceConfidences(
    const PanopticMap& map);

struct ClassReport {
  ClassId id = kVoidClass;
  std::string name;
  ClassKind kind = ClassKind::kVoid;
  double iou = 0.0;           // NaN when absent
  double iou_panoptic = 0.0;  // NaN when absent
  PqClassStats pq;
  double ap50 = 0.0;  // NaN when absent or not a thing class
};

struct EvalReport {
  std::vector<ClassReport> classes;
  double miou = 0.0;
  double miou_panoptic = 0.0;
  double pq = 0.0;
  double sq = 0.0;
  double rq = 0.0;
  double ap50 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  // 3D: share of non-void ground-truth points matched to a voxel. 2D: share
  // of non-void ground-truth pixels covered by the rendering.
  double matched_fraction = 0.0;
  std::size_t num_elements = 0;

  std::string ToText() const;
  // Flat "key=value" lines.
  std::string ToRecords() const;
};

struct GroundTruthView {
  Pose pose;
  Intrinsics intrinsics;
  Raster<ClassId> class_id;
  Raster<GlobalId> instance_id;
};

EvalReport Evaluate2d(const PanopticMap& map,
                      std::span<const GroundTruthView> views,
                      const MappingParams& params);
EvalReport Evaluate3d(const PanopticMap& map, const GroundTruthCloud& cloud,
                      const MappingParams& params);

}  // namespace panmap

#endif  // PANMAP_EVALUATION_H_
