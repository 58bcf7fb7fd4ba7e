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

// Pinhole camera model and rigid-body transforms.
//
// Camera frame: +z forward, +x right, +y down. Depth values are camera-frame
// z, not ray length.

#ifndef PANMAP_GEOMETRY_H_
#define PANMAP_GEOMETRY_H_

#include <Eigen/Core>
#include <optional>

namespace panmap {

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  // Throws std::invalid_argument if the parameters are not a usable camera.
  void Validate() const;

  friend bool operator==(const Intrinsics&, const Intrinsics&) = default;
};

struct Pixel {
  int u = 0;
  int v = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Camera-to-world rigid transform.
class Pose {
 public:
  Pose() = default;
  // Throws std::invalid_argument unless `rotation` is orthonormal with
  // determinant +1 (tolerance 1e-9).
  Pose(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);

  static Pose Identity() { return Pose(); }
  static Pose FromTranslation(const Eigen::Vector3d& translation);
  // Accepts a row-major 4x4 homogeneous matrix; the last row must be 0 0 0 1.
  static Pose FromMatrix(const Eigen::Matrix4d& matrix);
  // Camera at `eye` looking at `target`; image rows follow -`up`.
  static Pose LookAt(const Eigen::Vector3d& eye, const Eigen::Vector3d& target,
                     const Eigen::Vector3d& up = Eigen::Vector3d::UnitZ());

  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }
  Eigen::Matrix4d Matrix() const;

  Eigen::Vector3d operator*(const Eigen::Vector3d& point) const {
    return rotation_ * point + translation_;
  }
  Pose operator*(const Pose& other) const;
  Pose Inverse() const;

  // World point expressed in this pose's local frame.
  Eigen::Vector3d ToLocal(const Eigen::Vector3d& world) const {
    return rotation_.transpose() * (world - translation_);
  }

 private:
  Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
};

// Pixel + depth -> world point. Returns nullopt for non-finite or
// non-positive depth.
std::optional<Eigen::Vector3d> Unproject(const Pixel& pixel, double depth,
                                         const Intrinsics& intrinsics,
                                         const Pose& pose);

// Same as above for a camera-frame ray through continuous image coordinates.
Eigen::Vector3d CameraRay(double u, double v, const Intrinsics& intrinsics);

struct Projection {
  Pixel pixel;
  double depth = 0.0;
};

// World point -> nearest pixel and camera-frame depth. Pixel coordinates are
// rounded half away from zero. Returns nullopt behind the camera or outside
// the raster.
std::optional<Projection> Project(const Eigen::Vector3d& point,
                                  const Intrinsics& intrinsics,
                                  const Pose& pose);

}  // namespace panmap

#endif  // PANMAP_GEOMETRY_H_
