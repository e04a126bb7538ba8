// Copyright 2026 The bplmc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "bplmc/samplers.hpp"

namespace bplmc {

/// Sample batch file formats.
///
/// CSV: a header line "dim_1,dim_2,...,dim_d", then one retained sample per
/// line, values written with 17 significant digits ("%.17g") so they parse
/// back to the identical double. Lines end with '\n'.
///
/// Binary: a 16-byte header followed by the payload.
///   bytes 0..7    magic "BPLMCSB1" (ASCII, no terminator)
///   bytes 8..11   rows, unsigned 32-bit little-endian
///   bytes 12..15  cols, unsigned 32-bit little-endian
///   bytes 16..    rows*cols IEEE-754 binary64 values, little-endian, row-major
inline constexpr char kBinaryMagic[8] = {'B', 'P', 'L', 'M', 'C', 'S', 'B', '1'};

void write_samples_csv(const SampleBatch& batch, const std::string& path);
void write_samples_binary(const SampleBatch& batch, const std::string& path);

SampleBatch read_samples_csv(const std::string& path);
SampleBatch read_samples_binary(const std::string& path);
// Picks the format from the file's leading bytes. Throws FormatError on
// malformed or empty files.
SampleBatch read_samples(const std::string& path);

}  // namespace bplmc
