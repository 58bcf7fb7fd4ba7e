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

// Back-projection of voxels onto a camera plane.
//
// A voxel's footprint is the set of pixels inside the k-sigma confidence
// ellipse of its Gaussian, pushed through the first-order linearization of
// the pinhole projection at the mean.

#ifndef PANMAP_PROJECTION_RENDERER_H_
#define PANMAP_PROJECTION_RENDERER_H_

#include <Eigen/Core>
#include <span>
#include <vector>

#include "panmap/geometry.h"
#include "panmap/label_propagation.h"
#include "panmap/ndt_map.h"
#include "panmap/params.h"
#include "panmap/raster.h"

namespace panmap {

struct ImageGaussian {
  Eigen::Vector2d center;      // continuous pixel coordinates
  Eigen::Matrix2d covariance;  // pixels^2
  double depth = 0.0;          // camera-frame z of the mean
};

// nullopt when the mean is not in front of the camera.
std::optional<ImageGaussian> ProjectGaussian(const Gaussian& gaussian,
                                             const Intrinsics& intrinsics,
                                             const Pose& pose);

// Pixels of the k-sigma ellipse, clipped to the raster, in row-major order.
// The pixel nearest the projected mean is always included when it lies in
// the raster.
std::vector<Pixel> Footprint(const ImageGaussian& projected,
                             const Intrinsics& intrinsics, double k_sigma);

// vtou: empty for voxels without a valid distribution or behind the camera.
std::vector<Pixel> Vtou(const NdtVoxel& voxel, const Intrinsics& intrinsics,
                        const Pose& pose, double k_sigma);
std::vector<Pixel> Vtou(const Gaussian& gaussian, const Intrinsics& intrinsics,
                        const Pose& pose, double k_sigma);

// Map labels rendered into one camera. Uncovered pixels are void / instance 0
// / depth 0.
struct RenderedView {
  Raster<ClassId> semantic;        // argmax over all classes
  Raster<ClassId> panoptic_class;  // class of the propagated panoptic label
  Raster<GlobalId> instance;       // instance of the propagated panoptic label
  Raster<double> depth;
};

// Z-buffered rasterization of voxels whose mean projects into the raster no
// farther than `max_depth`: each pixel takes the labels of the voxel whose
// mean is nearest to the camera among those covering it. Ties keep the
// earlier record.
RenderedView RenderView(std::span<const VoxelLabelRecord> records,
                        const Intrinsics& intrinsics, const Pose& pose,
                        double k_sigma, double max_depth);
RenderedView RenderView(const PanopticMap& map, const Intrinsics& intrinsics,
                        const Pose& pose, const MappingParams& params);

}  // namespace panmap

#endif  // PANMAP_PROJECTION_RENDERER_H_
