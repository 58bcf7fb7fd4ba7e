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

// Dataset directory layout:
//
//   classes.txt           one "id name stuff|thing" line per class (id 0 void)
//   intrinsics.txt        fx fy cx cy width height
//   pose/NNNNNN.txt       row-major 4x4 camera-to-world matrix
//   depth/NNNNNN.pgm      16-bit, millimeters, 0 = invalid
//   semantic/NNNNNN.pgm   8-bit class ids
//   instance/NNNNNN.pgm   16-bit frame-local instance ids
//   semantic_score/, instance_score/   optional, 16-bit, value / 65535
//   gt_semantic/, gt_instance/         optional ground truth (8/16-bit)
//   gt_cloud.txt          optional "x y z class instance" lines
//
// Frame files share a zero-padded six-digit index starting at 0.

#ifndef PANMAP_DATASET_IO_H_
#define PANMAP_DATASET_IO_H_

#include <filesystem>
#include <string>

#include "panmap/class_table.h"
#include "panmap/evaluation.h"
#include "panmap/geometry.h"
#include "panmap/panoptic_frame.h"
#include "panmap/raster.h"

namespace panmap {

// A frame plus optional per-pixel ground truth (empty rasters if absent).
struct LabeledFrame {
  PanopticFrame frame;
  Raster<ClassId> gt_class;
  Raster<GlobalId> gt_instance;

  bool has_ground_truth() const { return !gt_class.empty(); }
  GroundTruthView ground_truth_view() const {
    return {frame.pose, frame.intrinsics, gt_class, gt_instance};
  }
};

struct DatasetInfo {
  ClassTable classes;
  Intrinsics intrinsics;
  std::size_t num_frames = 0;
};

std::string FrameFileName(std::size_t index, const std::string& extension);

std::string FormatClassTable(const ClassTable& table);
ClassTable ParseClassTable(const std::string& text);
std::string FormatIntrinsics(const Intrinsics& intrinsics);
Intrinsics ParseIntrinsics(const std::string& text);
std::string FormatPose(const Pose& pose);
Pose ParsePose(const std::string& text);

// Rounds a frame to what the on-disk encoding can represent, so that
// ReadFrame(WriteFrame(f)) == QuantizeFrame(f).
LabeledFrame QuantizeFrame(const LabeledFrame& frame);

// Writes classes.txt and intrinsics.txt, creating the directory tree.
void WriteDatasetHeader(const std::filesystem::path& dir,
                        const ClassTable& classes,
                        const Intrinsics& intrinsics);
// Throws std::invalid_argument if a raster cannot be encoded (class id above
// 255, instance id above 65535, size mismatch).
void WriteFrame(const std::filesystem::path& dir, std::size_t index,
                const LabeledFrame& frame);

// Counts frames by their pose files, which must be contiguous from 0.
DatasetInfo ReadDatasetInfo(const std::filesystem::path& dir);
// Throws std::runtime_error for missing files or inconsistent raster sizes.
LabeledFrame ReadFrame(const std::filesystem::path& dir,
                       const DatasetInfo& info, std::size_t index);

void WriteGroundTruthCloud(const std::filesystem::path& path,
                           const GroundTruthCloud& cloud);
GroundTruthCloud ReadGroundTruthCloud(const std::filesystem::path& path);

}  // namespace panmap

#endif  // PANMAP_DATASET_IO_H_
