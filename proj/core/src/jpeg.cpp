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

#include "dqa/jpeg.hpp"
#include "dqa/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dqa
{
    namespace
    {
        // round(alpha(u) * cos((2x + 1) u pi / 16) * 2^13), alpha(0) = sqrt(1/8), alpha(u) = 1/2.
        constexpr int dct_shift = 13;
        constexpr std::int32_t dct_table[8][8] = {
            {2896, 2896, 2896, 2896, 2896, 2896, 2896, 2896},
            {4017, 3406, 2276, 799, -799, -2276, -3406, -4017},
            {3784, 1567, -1567, -3784, -3784, -1567, 1567, 3784},
            {3406, -799, -4017, -2276, 2276, 4017, 799, -3406},
            {2896, -2896, -2896, 2896, 2896, -2896, -2896, 2896},
            {2276, -4017, 799, 3406, -3406, -799, 4017, -2276},
            {1567, -3784, 3784, -1567, -1567, 3784, -3784, 1567},
            {799, -2276, 3406, -4017, 4017, -3406, 2276, -799},
        };

        constexpr std::uint8_t zigzag[64] = {
            0, 1, 8, 16, 9, 2, 3, 10,
            17, 24, 32, 25, 18, 11, 4, 5,
            12, 19, 26, 33, 40, 48, 41, 34,
            27, 20, 13, 6, 7, 14, 21, 28,
            35, 42, 49, 56, 57, 50, 43, 36,
            29, 22, 15, 23, 30, 37, 44, 51,
            58, 59, 52, 45, 38, 31, 39, 46,
            53, 60, 61, 54, 47, 55, 62, 63};

        constexpr std::uint16_t base_luminance[64] = {
            16, 11, 10, 16, 24, 40, 51, 61,
            12, 12, 14, 19, 26, 58, 60, 55,
            14, 13, 16, 24, 40, 57, 69, 56,
            14, 17, 22, 29, 51, 87, 80, 62,
            18, 22, 37, 56, 68, 109, 103, 77,
            24, 35, 55, 64, 81, 104, 113, 92,
            49, 64, 78, 87, 103, 121, 120, 101,
            72, 92, 95, 98, 112, 100, 103, 99};

        constexpr std::uint8_t dc_bits[16] = {0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0};
        constexpr std::uint8_t dc_vals[12] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};

        constexpr std::uint8_t ac_bits[16] = {0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7d};
        constexpr std::uint8_t ac_vals[162] = {
            0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51, 0x61, 0x07,
            0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xa1, 0x08, 0x23, 0x42, 0xb1, 0xc1, 0x15, 0x52, 0xd1, 0xf0,
            0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0a, 0x16, 0x17, 0x18, 0x19, 0x1a, 0x25, 0x26, 0x27, 0x28,
            0x29, 0x2a, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39, 0x3a, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49,
            0x4a, 0x53, 0x54, 0x55, 0x56, 0x57, 0x58, 0x59, 0x5a, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69,
            0x6a, 0x73, 0x74, 0x75, 0x76, 0x77, 0x78, 0x79, 0x7a, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89,
            0x8a, 0x92, 0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9a, 0xa2, 0xa3, 0xa4, 0xa5, 0xa6, 0xa7,
            0xa8, 0xa9, 0xaa, 0xb2, 0xb3, 0xb4, 0xb5, 0xb6, 0xb7, 0xb8, 0xb9, 0xba, 0xc2, 0xc3, 0xc4, 0xc5,
            0xc6, 0xc7, 0xc8, 0xc9, 0xca, 0xd2, 0xd3, 0xd4, 0xd5, 0xd6, 0xd7, 0xd8, 0xd9, 0xda, 0xe1, 0xe2,
            0xe3, 0xe4, 0xe5, 0xe6, 0xe7, 0xe8, 0xe9, 0xea, 0xf1, 0xf2, 0xf3, 0xf4, 0xf5, 0xf6, 0xf7, 0xf8,
            0xf9, 0xfa};

        struct HuffmanCode
        {
            std::uint16_t code = 0;
            std::uint8_t length = 0;
        };

        // Canonical code assignment from the BITS/HUFFVAL lists.
        std::array<HuffmanCode, 256> build_codes(const std::uint8_t (&bits)[16], const std::uint8_t *vals)
        {
            std::array<HuffmanCode, 256> table{};
            std::uint16_t code = 0;
            std::size_t k = 0;
            for (int len = 1; len <= 16; ++len)
            {
                for (int i = 0; i < bits[len - 1]; ++i)
                    table[vals[k++]] = {code++, static_cast<std::uint8_t>(len)};
                code = static_cast<std::uint16_t>(code << 1);
            }
            return table;
        }

        class BitWriter
        {
        public:
            explicit BitWriter(std::vector<std::uint8_t> &out) : out_(out) {}

            void put(std::uint32_t bits, int length)
            {
                for (int i = length - 1; i >= 0; --i)
                {
                    acc_ = static_cast<std::uint8_t>((acc_ << 1) | ((bits >> i) & 1u));
                    if (++count_ == 8)
                        emit();
                }
            }

            // Pads the last partial byte with one bits.
            void flush()
            {
                while (count_ != 0)
                    put(1, 1);
            }

        private:
            void emit()
            {
                out_.push_back(acc_);
                if (acc_ == 0xFF)
                    out_.push_back(0x00);
                acc_ = 0;
                count_ = 0;
            }

            std::vector<std::uint8_t> &out_;
            std::uint8_t acc_ = 0;
            int count_ = 0;
        };

        void put_u16(std::vector<std::uint8_t> &out, std::size_t v)
        {
            out.push_back(static_cast<std::uint8_t>(v >> 8));
            out.push_back(static_cast<std::uint8_t>(v & 0xFF));
        }

        void put_marker(std::vector<std::uint8_t> &out, std::uint8_t m)
        {
            out.push_back(0xFF);
            out.push_back(m);
        }

        int magnitude_category(int v)
        {
            int a = v < 0 ? -v : v;
            int n = 0;
            while (a)
            {
                ++n;
                a >>= 1;
            }
            return n;
        }

        std::uint32_t magnitude_bits(int v, int category)
        {
            return static_cast<std::uint32_t>(v < 0 ? v + (1 << category) - 1 : v);
        }

        // Symmetric rounding of num / den for den > 0.
        std::int64_t rounded_div(std::int64_t num, std::int64_t den)
        {
            return num >= 0 ? (num + den / 2) / den : -((-num + den / 2) / den);
        }
    }

    GrayImage to_gray_image(const RealMatrix &m)
    {
        if (m.empty())
            throw InvalidArgument("to_gray_image: empty matrix");
        GrayImage img;
        img.width = m.cols();
        img.height = m.rows();
        img.pixels.resize(m.size());
        const auto [lo_it, hi_it] = std::minmax_element(m.values().begin(), m.values().end());
        const double lo = *lo_it, hi = *hi_it;
        for (std::size_t i = 0; i < m.size(); ++i)
        {
            if (!std::isfinite(m.values()[i]))
                throw InvalidArgument("to_gray_image: non-finite entry");
            img.pixels[i] = hi > lo ? static_cast<std::uint8_t>(std::lround((m.values()[i] - lo) / (hi - lo) * 255.0))
                                    : std::uint8_t{128};
        }
        return img;
    }

    std::array<std::uint16_t, 64> scaled_luminance_table(int quality)
    {
        if (quality < 1 || quality > 100)
            throw InvalidArgument("jpeg quality must lie in 1..100, got " + std::to_string(quality));
        const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
        std::array<std::uint16_t, 64> q{};
        for (std::size_t i = 0; i < 64; ++i)
            q[i] = static_cast<std::uint16_t>(std::clamp((base_luminance[i] * scale + 50) / 100, 1, 255));
        return q;
    }

    std::vector<std::uint8_t> encode_jpeg_gray(const GrayImage &img, int quality)
    {
        if (img.width == 0 || img.height == 0 || img.pixels.size() != img.width * img.height)
            throw InvalidArgument("encode_jpeg_gray: invalid image dimensions");
        if (img.width > 65535 || img.height > 65535)
            throw InvalidArgument("encode_jpeg_gray: image too large");
        const auto qtable = scaled_luminance_table(quality);
        static const auto dc_codes = build_codes(dc_bits, dc_vals);
        static const auto ac_codes = build_codes(ac_bits, ac_vals);

        std::vector<std::uint8_t> out;
        put_marker(out, 0xD8); // SOI

        put_marker(out, 0xE0); // APP0 / JFIF 1.01, no density units, no thumbnail
        put_u16(out, 16);
        for (char c : {'J', 'F', 'I', 'F', '\0'})
            out.push_back(static_cast<std::uint8_t>(c));
        out.insert(out.end(), {0x01, 0x01, 0x00, 0x00, 0x01, 0x00, 0x01, 0x00, 0x00});

        put_marker(out, 0xDB); // DQT, 8-bit table 0, zigzag order
        put_u16(out, 67);
        out.push_back(0x00);
        for (std::size_t i = 0; i < 64; ++i)
            out.push_back(static_cast<std::uint8_t>(qtable[zigzag[i]]));

        put_marker(out, 0xC0); // SOF0
        put_u16(out, 11);
        out.push_back(8);
        put_u16(out, img.height);
        put_u16(out, img.width);
        out.insert(out.end(), {0x01, 0x01, 0x11, 0x00});

        put_marker(out, 0xC4); // DHT, DC table 0 and AC table 0
        put_u16(out, 2 + 17 + sizeof(dc_vals) + 17 + sizeof(ac_vals));
        out.push_back(0x00);
        out.insert(out.end(), std::begin(dc_bits), std::end(dc_bits));
        out.insert(out.end(), std::begin(dc_vals), std::end(dc_vals));
        out.push_back(0x10);
        out.insert(out.end(), std::begin(ac_bits), std::end(ac_bits));
        out.insert(out.end(), std::begin(ac_vals), std::end(ac_vals));

        put_marker(out, 0xDA); // SOS
        put_u16(out, 8);
        out.insert(out.end(), {0x01, 0x01, 0x00, 0x00, 0x3F, 0x00});

        BitWriter bw(out);
        int previous_dc = 0;
        const std::size_t blocks_x = (img.width + 7) / 8, blocks_y = (img.height + 7) / 8;
        for (std::size_t by = 0; by < blocks_y; ++by)
            for (std::size_t bx = 0; bx < blocks_x; ++bx)
            {
                std::int32_t block[8][8];
                for (std::size_t y = 0; y < 8; ++y)
                    for (std::size_t x = 0; x < 8; ++x)
                    {
                        const std::size_t row = std::min(by * 8 + y, img.height - 1);
                        const std::size_t col = std::min(bx * 8 + x, img.width - 1);
                        block[y][x] = static_cast<std::int32_t>(img.at(row, col)) - 128;
                    }

                // Separable integer DCT: rows then columns, scaled by 2^(2 * dct_shift).
                std::int64_t rows[8][8];
                for (int y = 0; y < 8; ++y)
                    for (int v = 0; v < 8; ++v)
                    {
                        std::int64_t acc = 0;
                        for (int x = 0; x < 8; ++x)
                            acc += static_cast<std::int64_t>(dct_table[v][x]) * block[y][x];
                        rows[y][v] = acc;
                    }
                int coef[64];
                for (int u = 0; u < 8; ++u)
                    for (int v = 0; v < 8; ++v)
                    {
                        std::int64_t acc = 0;
                        for (int y = 0; y < 8; ++y)
                            acc += static_cast<std::int64_t>(dct_table[u][y]) * rows[y][v];
                        const std::int64_t den = static_cast<std::int64_t>(qtable[u * 8 + v]) << (2 * dct_shift);
                        coef[u * 8 + v] = static_cast<int>(rounded_div(acc, den));
                    }

                const int dc = coef[0];
                const int diff = dc - previous_dc;
                previous_dc = dc;
                const int dc_cat = magnitude_category(diff);
                bw.put(dc_codes[dc_cat].code, dc_codes[dc_cat].length);
                if (dc_cat)
                    bw.put(magnitude_bits(diff, dc_cat), dc_cat);

                int run = 0;
                for (int k = 1; k < 64; ++k)
                {
                    const int v = coef[zigzag[k]];
                    if (v == 0)
                    {
                        ++run;
                        continue;
                    }
                    while (run > 15)
                    {
                        bw.put(ac_codes[0xF0].code, ac_codes[0xF0].length);
                        run -= 16;
                    }
                    const int cat = magnitude_category(v);
                    const auto &hc = ac_codes[(run << 4) | cat];
                    bw.put(hc.code, hc.length);
                    bw.put(magnitude_bits(v, cat), cat);
                    run = 0;
                }
                if (run > 0)
                    bw.put(ac_codes[0x00].code, ac_codes[0x00].length);
            }
        bw.flush();
        put_marker(out, 0xD9); // EOI
        return out;
    }
}
