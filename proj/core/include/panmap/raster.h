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

#ifndef PANMAP_RASTER_H_
#define PANMAP_RASTER_H_

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace panmap {

// Row-major 2D image. Pixel (u, v) is column u, row v.
template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 0 || height < 0) {
      throw std::invalid_argument("Raster dimensions must be non-negative");
    }
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  bool Contains(int u, int v) const {
    return u >= 0 && v >= 0 && u < width_ && v < height_;
  }
  bool SameShape(int width, int height) const {
    return width_ == width && height_ == height;
  }
  template <typename U>
  bool SameShape(const Raster<U>& other) const {
    return SameShape(other.width(), other.height());
  }

  T& operator()(int u, int v) { return data_[Offset(u, v)]; }
  const T& operator()(int u, int v) const { return data_[Offset(u, v)]; }
  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  std::span<T> pixels() { return data_; }
  std::span<const T> pixels() const { return data_; }

  void Fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t Offset(int u, int v) const {
    return static_cast<std::size_t>(v) * width_ + u;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

}  // namespace panmap

#endif  // PANMAP_RASTER_H_
