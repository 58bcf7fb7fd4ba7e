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

#include "panmap/geometry.h"

#include <Eigen/Geometry>
#include <cmath>
#include <stdexcept>

namespace panmap {

void Intrinsics::Validate() const {
  if (!(fx > 0.0) || !(fy > 0.0) || !std::isfinite(fx) || !std::isfinite(fy)) {
    throw std::invalid_argument("intrinsics: focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("intrinsics: raster size must be positive");
  }
  if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height)) {
    throw std::invalid_argument(
        "intrinsics: principal point must lie inside the raster");
  }
}

Pose::Pose(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation)
    : rotation_(rotation), translation_(translation) {
  const double orthogonality =
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  if (!(orthogonality <= 1e-9) ||
      std::abs(rotation.determinant() - 1.0) > 1e-9) {
    throw std::invalid_argument("pose: rotation is not a proper rotation");
  }
  if (!translation.allFinite()) {
    throw std::invalid_argument("pose: translation is not finite");
  }
}

Pose Pose::FromTranslation(const Eigen::Vector3d& translation) {
  return Pose(Eigen::Matrix3d::Identity(), translation);
}

Pose Pose::FromMatrix(const Eigen::Matrix4d& matrix) {
  const Eigen::RowVector4d last_row = matrix.row(3);
  if ((last_row - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() >
      1e-12) {
    throw std::invalid_argument("pose: last matrix row must be 0 0 0 1");
  }
  return Pose(matrix.topLeftCorner<3, 3>(), matrix.topRightCorner<3, 1>());
}

Pose Pose::LookAt(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
                  const Eigen::Vector3d& up) {
  const Eigen::Vector3d forward = (target - eye).normalized();
  Eigen::Vector3d right = forward.cross(up);
  if (right.norm() < 1e-12) {
    throw std::invalid_argument("pose: look direction parallel to up vector");
  }
  right.normalize();
  const Eigen::Vector3d down = forward.cross(right);
  Eigen::Matrix3d rotation;
  rotation.col(0) = right;
  rotation.col(1) = down;
  rotation.col(2) = forward;
  // Re-orthonormalize so the 1e-9 check never trips on accumulated rounding.
  const Eigen::Quaterniond q(rotation);
  return Pose(q.normalized().toRotationMatrix(), eye);
}

Eigen::Matrix4d Pose::Matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation_;
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Pose Pose::operator*(const Pose& other) const {
  Pose out;
  out.rotation_ = rotation_ * other.rotation_;
  out.translation_ = rotation_ * other.translation_ + translation_;
  return out;
}

Pose Pose::Inverse() const {
  Pose out;
  out.rotation_ = rotation_.transpose();
  out.translation_ = -(out.rotation_ * translation_);
  return out;
}

Eigen::Vector3d CameraRay(double u, double v, const Intrinsics& intrinsics) {
  return {(u - intrinsics.cx) / intrinsics.fx,
          (v - intrinsics.cy) / intrinsics.fy, 1.0};
}

std::optional<Eigen::Vector3d> Unproject(const Pixel& pixel, double depth,
                                         const Intrinsics& intrinsics,
                                         const Pose& pose) {
  if (!std::isfinite(depth) || depth <= 0.0) return std::nullopt;
  const Eigen::Vector3d camera_point =
      CameraRay(pixel.u, pixel.v, intrinsics) * depth;
  return pose * camera_point;
}

std::optional<Projection> Project(const Eigen::Vector3d& point,
                                  const Intrinsics& intrinsics,
                                  const Pose& pose) {
  const Eigen::Vector3d camera_point = pose.ToLocal(point);
  const double z = camera_point.z();
  if (!(z > 0.0) || !std::isfinite(z)) return std::nullopt;
  const double u = intrinsics.fx * camera_point.x() / z + intrinsics.cx;
  const double v = intrinsics.fy * camera_point.y() / z + intrinsics.cy;
  // std::round rounds half away from zero.
  const double ru = std::round(u);
  const double rv = std::round(v);
  if (!(ru >= 0.0 && rv >= 0.0 && ru < intrinsics.width &&
        rv < intrinsics.height)) {
    return std::nullopt;
  }
  return Projection{{static_cast<int>(ru), static_cast<int>(rv)}, z};
}

}  // namespace panmap
