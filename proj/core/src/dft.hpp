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

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace dqa::detail
{
    // Direct DFT of a fixed length with a precomputed twiddle table. Lengths here are small
    // (antenna rows, 52 subcarriers, a handful of snapshots), so O(N^2) is cheaper than planning.
    // Forward: X[k] = sum_n x[n] e^{-i 2 pi k n / N}. Inverse uses e^{+i...} and no 1/N scaling.
    class Dft
    {
    public:
        explicit Dft(std::size_t n) : n_(n), twiddle_(n)
        {
            for (std::size_t k = 0; k < n; ++k)
            {
                const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
                twiddle_[k] = {std::cos(phi), -std::sin(phi)};
            }
        }

        std::size_t size() const noexcept { return n_; }

        // in/out are strided views of length n.
        void forward(const std::complex<double> *in, std::size_t in_stride,
                     std::complex<double> *out, std::size_t out_stride) const
        {
            transform(in, in_stride, out, out_stride, false);
        }
        void inverse(const std::complex<double> *in, std::size_t in_stride,
                     std::complex<double> *out, std::size_t out_stride) const
        {
            transform(in, in_stride, out, out_stride, true);
        }

    private:
        void transform(const std::complex<double> *in, std::size_t in_stride,
                       std::complex<double> *out, std::size_t out_stride, bool inverse) const
        {
            for (std::size_t k = 0; k < n_; ++k)
            {
                std::complex<double> acc{0.0, 0.0};
                std::size_t idx = 0;
                for (std::size_t j = 0; j < n_; ++j)
                {
                    const auto &w = twiddle_[idx];
                    acc += in[j * in_stride] * (inverse ? std::conj(w) : w);
                    idx += k;
                    if (idx >= n_)
                        idx -= n_;
                }
                out[k * out_stride] = acc;
            }
        }

        std::size_t n_;
        std::vector<std::complex<double>> twiddle_;
    };
}
