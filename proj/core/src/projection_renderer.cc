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

#include "panmap/projection_renderer.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace panmap {

std::optional<ImageGaussian> ProjectGaussian(const Gaussian& gaussian,
                                             const Intrinsics& intrinsics,
                                             const Pose& pose) {
  const Eigen::Vector3d pc = pose.ToLocal(gaussian.mean);
  const double z = pc.z();
  if (!(z > 0.0)) return std::nullopt;
  const double inv_z = 1.0 / z;

  Eigen::Matrix<double, 2, 3> jacobian;
  jacobian << intrinsics.fx * inv_z, 0.0,
      -intrinsics.fx * pc.x() * inv_z * inv_z, 0.0, intrinsics.fy * inv_z,
      -intrinsics.fy * pc.y() * inv_z * inv_z;
  const Eigen::Matrix3d& r = pose.rotation();
  const Eigen::Matrix3d camera_cov = r.transpose() * gaussian.covariance * r;

  ImageGaussian out;
  out.center = {intrinsics.fx * pc.x() * inv_z + intrinsics.cx,
                intrinsics.fy * pc.y() * inv_z + intrinsics.cy};
  out.covariance = jacobian * camera_cov * jacobian.transpose();
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose());
  out.depth = z;
  return out;
}

std::vector<Pixel> Footprint(const ImageGaussian& projected,
                             const Intrinsics& intrinsics, double k_sigma) {
  std::vector<Pixel> pixels;
  const Eigen::Vector2d& c = projected.center;
  const Eigen::Matrix2d& cov = projected.covariance;
  if (!c.allFinite() || !cov.allFinite()) return pixels;

  const double cu = std::round(c.x());
  const double cv = std::round(c.y());
  const bool center_inside =
      cu >= 0.0 && cv >= 0.0 && cu < intrinsics.width && cv < intrinsics.height;

  const double det = cov(0, 0) * cov(1, 1) - cov(0, 1) * cov(0, 1);
  const double k2 = k_sigma * k_sigma;
  if (det > 0.0 && k_sigma > 0.0) {
    const double a = cov(1, 1) / det;  // inverse covariance entries
    const double b = -cov(0, 1) / det;
    const double d = cov(0, 0) / det;
    // Axis-aligned bounding box of the ellipse.
    const double half_u = k_sigma * std::sqrt(cov(0, 0));
    const double half_v = k_sigma * std::sqrt(cov(1, 1));
    const double u0 = std::max(0.0, std::ceil(c.x() - half_u));
    const double u1 =
        std::min(intrinsics.width - 1.0, std::floor(c.x() + half_u));
    const double v0 = std::max(0.0, std::ceil(c.y() - half_v));
    const double v1 =
        std::min(intrinsics.height - 1.0, std::floor(c.y() + half_v));
    for (double v = v0; v <= v1; v += 1.0) {
      const double dv = v - c.y();
      for (double u = u0; u <= u1; u += 1.0) {
        const double du = u - c.x();
        const double q = a * du * du + 2.0 * b * du * dv + d * dv * dv;
        if (q <= k2 || (u == cu && v == cv)) {
          pixels.push_back({static_cast<int>(u), static_cast<int>(v)});
        }
      }
    }
  }
  if (center_inside) {
    const Pixel center{static_cast<int>(cu), static_cast<int>(cv)};
    auto it = std::lower_bound(pixels.begin(), pixels.end(), center,
                               [](const Pixel& x, const Pixel& y) {
                                 return x.v != y.v ? x.v < y.v : x.u < y.u;
                               });
    if (it == pixels.end() || !(*it == center)) pixels.insert(it, center);
  }
  return pixels;
}

std::vector<Pixel> Vtou(const Gaussian& gaussian, const Intrinsics& intrinsics,
                        const Pose& pose, double k_sigma) {
  auto projected = ProjectGaussian(gaussian, intrinsics, pose);
  if (!projected) return {};
  return Footprint(*projected, intrinsics, k_sigma);
}

std::vector<Pixel> Vtou(const NdtVoxel& voxel, const Intrinsics& intrinsics,
                        const Pose& pose, double k_sigma) {
  auto dist = VoxelDistribution(voxel);
  if (!dist) return {};
  return Vtou(*dist, intrinsics, pose, k_sigma);
}

RenderedView RenderView(std::span<const VoxelLabelRecord> records,
                        const Intrinsics& intrinsics, const Pose& pose,
                        double k_sigma, double max_depth) {
  const int w = intrinsics.width;
  const int h = intrinsics.height;
  RenderedView view{
      Raster<ClassId>(w, h, kVoidClass), Raster<ClassId>(w, h, kVoidClass),
      Raster<GlobalId>(w, h, kNoInstance), Raster<double>(w, h, 0.0)};
  Raster<double> zbuffer(w, h, std::numeric_limits<double>::infinity());
  for (const auto& record : records) {
    if (!Project(record.mean, intrinsics, pose)) continue;
    auto projected =
        ProjectGaussian({record.mean, record.covariance}, intrinsics, pose);
    if (!projected || projected->depth > max_depth) continue;
    for (const Pixel& p : Footprint(*projected, intrinsics, k_sigma)) {
      if (projected->depth < zbuffer(p.u, p.v)) {
        zbuffer(p.u, p.v) = projected->depth;
        view.semantic(p.u, p.v) = record.semantic;
        view.panoptic_class(p.u, p.v) = record.label.class_id;
        view.instance(p.u, p.v) = record.label.instance_id;
        view.depth(p.u, p.v) = projected->depth;
      }
    }
  }
  return view;
}

RenderedView RenderView(const PanopticMap& map, const Intrinsics& intrinsics,
                        const Pose& pose, const MappingParams& params) {
  const auto records = ExportLabels(map, params);
  return RenderView(records, intrinsics, pose, params.k_sigma,
                    params.max_depth);
}

}  // namespace panmap
