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

// Binary greymap (P5) images. Maxval up to 255 stores one byte per sample,
// larger maxvals two bytes, most significant first.

#ifndef PANMAP_PGM_H_
#define PANMAP_PGM_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "panmap/raster.h"

namespace panmap {

// Throws std::invalid_argument for maxval 0 or a sample above maxval.
std::string EncodePgm(const Raster<std::uint16_t>& image, std::uint16_t maxval);

// Throws std::runtime_error on malformed input. Header comments are skipped.
Raster<std::uint16_t> DecodePgm(std::string_view bytes,
                                std::uint16_t* maxval = nullptr);

void WritePgm(const std::filesystem::path& path,
              const Raster<std::uint16_t>& image, std::uint16_t maxval);
Raster<std::uint16_t> ReadPgm(const std::filesystem::path& path,
                              std::uint16_t* maxval = nullptr);

// Whole-file helpers shared by the file formats. Throw std::runtime_error.
std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace panmap

#endif  // PANMAP_PGM_H_
