// SPDX-License-Identifier: Apache-2.0
//
// dqa - data quality assessment for wireless air-interface datasets
// Copyright (C) 2026 The dqa authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "dqa/matrix.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dqa
{
    // 8-bit grayscale image, row-major.
    struct GrayImage
    {
        std::size_t width = 0;
        std::size_t height = 0;
        std::vector<std::uint8_t> pixels;

        std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
    };

    // Maps matrix entries affinely from [min, max] to levels 0..255 (rounded to nearest); a
    // constant matrix maps to level 128. Rows become image rows.
    GrayImage to_gray_image(const RealMatrix &m);

    // Luminance quantization table (natural order) for a quality in 1..100, using the usual
    // scaling: factor 5000/q below 50, 200 - 2q otherwise, entries clamped to 1..255.
    std::array<std::uint16_t, 64> scaled_luminance_table(int quality);

    /*
    Baseline sequential JPEG (JFIF) encoder for single-channel images.

    Fixed choices so that output bytes are reproducible on every platform: 8x8 blocks with edge
    replication for partial blocks, an all-integer DCT (13-bit fixed-point cosine table with
    exact rounding at quantization), the standard luminance quantization table scaled by
    quality, the standard luminance DC/AC Huffman tables, no restart markers.
    */
    std::vector<std::uint8_t> encode_jpeg_gray(const GrayImage &img, int quality = 75);
}
