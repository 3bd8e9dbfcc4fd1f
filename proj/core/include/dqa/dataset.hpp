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

#include "dqa/random.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dqa
{
    using cfloat = std::complex<float>;
    using cdouble = std::complex<double>;

    // Planar transmit array layout; antenna a maps to (row a / n_h, column a % n_h).
    struct AntennaGrid
    {
        std::size_t n_v = 1;
        std::size_t n_h = 1;

        std::size_t size() const noexcept { return n_v * n_h; }
        bool operator==(const AntennaGrid &) const = default;
    };

    // Dimensions shared by all samples of a dataset.
    struct SampleShape
    {
        std::size_t n_antennas = 1;  // A
        std::size_t n_subcarriers = 1; // F
        std::size_t n_snapshots = 1;   // T
        AntennaGrid grid{};

        std::size_t element_count() const noexcept { return n_antennas * n_subcarriers * n_snapshots; }
        bool operator==(const SampleShape &) const = default;
    };

    /*
    One CSI measurement: complex gains H[a][f][t] for transmit antenna a, subcarrier f and time
    snapshot t, stored flat in antenna-major, then subcarrier, then snapshot order (the on-disk
    order). Values are kept in single precision so that a CSID round trip is bit-exact; all
    metrics promote to double.

    Immutable after construction; the constructor validates shape and finiteness.
    */
    class ChannelSample
    {
    public:
        ChannelSample(SampleShape shape, std::vector<cfloat> values);

        const SampleShape &shape() const noexcept { return shape_; }
        std::size_t n_antennas() const noexcept { return shape_.n_antennas; }
        std::size_t n_subcarriers() const noexcept { return shape_.n_subcarriers; }
        std::size_t n_snapshots() const noexcept { return shape_.n_snapshots; }
        const AntennaGrid &grid() const noexcept { return shape_.grid; }

        cfloat operator()(std::size_t a, std::size_t f, std::size_t t) const
        {
            return values_[(a * shape_.n_subcarriers + f) * shape_.n_snapshots + t];
        }
        std::span<const cfloat> values() const noexcept { return values_; }

        bool operator==(const ChannelSample &) const = default;

    private:
        SampleShape shape_;
        std::vector<cfloat> values_;
    };

    using Metadata = std::map<std::string, std::string>;

    // Non-empty, shape-homogeneous, ordered collection of samples plus free-form provenance.
    class Dataset
    {
    public:
        Dataset(std::vector<ChannelSample> samples, Metadata metadata = {});

        std::size_t size() const noexcept { return samples_.size(); }
        const SampleShape &shape() const noexcept { return samples_.front().shape(); }
        const ChannelSample &operator[](std::size_t i) const { return samples_[i]; }
        std::span<const ChannelSample> samples() const noexcept { return samples_; }
        const Metadata &metadata() const noexcept { return metadata_; }

        auto begin() const noexcept { return samples_.begin(); }
        auto end() const noexcept { return samples_.end(); }

        bool operator==(const Dataset &) const = default;

    private:
        std::vector<ChannelSample> samples_;
        Metadata metadata_;
    };

    // CSID binary format (little-endian):
    //   "CSID" | u16 version=1 | u32 n_samples | u16 A | u16 N_v | u16 N_h | u16 F | u16 T |
    //   u32 metadata_len | metadata (UTF-8 JSON object of strings) |
    //   n_samples * A * F * T complex64 (re, im as f32) in sample, antenna, subcarrier, snapshot order.
    inline constexpr std::uint16_t csid_version = 1;

    std::vector<std::uint8_t> encode_dataset(const Dataset &d);
    Dataset decode_dataset(std::span<const std::uint8_t> bytes);

    Dataset read_dataset(const std::filesystem::path &path);
    void write_dataset(const Dataset &d, const std::filesystem::path &path);

    // Seeded partition without replacement. The first part holds round(fraction * n) samples;
    // both parts keep the original relative order.
    std::pair<Dataset, Dataset> split_dataset(const Dataset &d, double fraction, RandomSeed seed);

    // Divides every sample by its largest entry magnitude (used to align amplitude scales of
    // datasets produced by different generators).
    Dataset normalize_by_max_entry(const Dataset &d);
}
