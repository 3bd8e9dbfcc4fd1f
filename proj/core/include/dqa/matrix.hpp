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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dqa
{
    // Dense row-major real matrix. Vectors are stored as 1 x N, scalars as 1 x 1.
    class RealMatrix
    {
    public:
        RealMatrix() = default;
        RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
            : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
        RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

        static RealMatrix row_vector(std::vector<double> v)
        {
            const std::size_t n = v.size();
            return RealMatrix(1, n, std::move(v));
        }
        static RealMatrix scalar(double v) { return RealMatrix(1, 1, v); }

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        std::size_t size() const noexcept { return data_.size(); }
        bool empty() const noexcept { return data_.empty(); }

        double &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        std::span<double> values() noexcept { return data_; }
        std::span<const double> values() const noexcept { return data_; }
        std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

        RealMatrix transposed() const;

        bool operator==(const RealMatrix &) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<double> data_;
    };
}
