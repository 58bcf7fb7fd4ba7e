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

#include "panmap/pgm.h"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace panmap {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  long ReadNumber(const char* what) {
    SkipSpaceAndComments();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() &&
           std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) Fail(std::string(what) + " too large");
      ++pos_;
    }
    if (pos_ == start) Fail(std::string("expected ") + what);
    return value;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw std::runtime_error("pgm: " + message + " at byte " +
                             std::to_string(pos_));
  }

  std::size_t pos_ = 0;
  std::string_view bytes_;
};

}  // namespace

std::string EncodePgm(const Raster<std::uint16_t>& image,
                      std::uint16_t maxval) {
  if (maxval == 0) throw std::invalid_argument("pgm: maxval must be positive");
  std::ostringstream os;
  os << "P5\n"
     << image.width() << " " << image.height() << "\n"
     << maxval << "\n";
  std::string out = os.str();
  const bool wide = maxval > 255;
  out.reserve(out.size() + image.size() * (wide ? 2 : 1));
  for (std::uint16_t s : image.pixels()) {
    if (s > maxval) {
      throw std::invalid_argument("pgm: sample " + std::to_string(s) +
                                  " exceeds maxval");
    }
    if (wide) out.push_back(static_cast<char>(s >> 8));
    out.push_back(static_cast<char>(s & 0xff));
  }
  return out;
}

Raster<std::uint16_t> DecodePgm(std::string_view bytes, std::uint16_t* maxval) {
  HeaderReader r(bytes);
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    r.Fail("missing P5 magic");
  }
  r.pos_ = 2;
  const long w = r.ReadNumber("width");
  const long h = r.ReadNumber("height");
  const long m = r.ReadNumber("maxval");
  if (w <= 0 || h <= 0) r.Fail("empty image");
  if (m <= 0 || m > 65535) r.Fail("maxval out of range");
  if (r.pos_ >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[r.pos_]))) {
    r.Fail("expected whitespace after maxval");
  }
  ++r.pos_;
  const std::size_t bytes_per = m > 255 ? 2 : 1;
  const std::size_t need = static_cast<std::size_t>(w) * h * bytes_per;
  if (bytes.size() - r.pos_ < need) r.Fail("truncated pixel data");
  Raster<std::uint16_t> image(static_cast<int>(w), static_cast<int>(h), 0);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + r.pos_);
  for (std::size_t i = 0; i < image.size(); ++i) {
    std::uint16_t s =
        bytes_per == 2
            ? static_cast<std::uint16_t>((p[2 * i] << 8) | p[2 * i + 1])
            : p[i];
    if (s > m) r.Fail("sample exceeds maxval");
    image[i] = s;
  }
  if (maxval) *maxval = static_cast<std::uint16_t>(m);
  return image;
}

void WritePgm(const std::filesystem::path& path,
              const Raster<std::uint16_t>& image, std::uint16_t maxval) {
  WriteFileBytes(path, EncodePgm(image, maxval));
}

Raster<std::uint16_t> ReadPgm(const std::filesystem::path& path,
                              std::uint16_t* maxval) {
  const std::string bytes = ReadFileBytes(path);
  try {
    return DecodePgm(bytes, maxval);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace panmap
