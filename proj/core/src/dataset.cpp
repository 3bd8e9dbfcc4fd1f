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

#include "dqa/dataset.hpp"
#include "dqa/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

namespace dqa
{
    ChannelSample::ChannelSample(SampleShape shape, std::vector<cfloat> values)
        : shape_(shape), values_(std::move(values))
    {
        if (shape_.n_antennas == 0 || shape_.n_subcarriers == 0 || shape_.n_snapshots == 0)
            throw InvalidArgument("ChannelSample: all dimensions must be >= 1");
        if (shape_.grid.size() != shape_.n_antennas)
            throw InvalidArgument("ChannelSample: antenna grid " + std::to_string(shape_.grid.n_v) + "x" +
                                  std::to_string(shape_.grid.n_h) + " does not match " +
                                  std::to_string(shape_.n_antennas) + " antennas");
        if (values_.size() != shape_.element_count())
            throw InvalidArgument("ChannelSample: expected " + std::to_string(shape_.element_count()) +
                                  " values, got " + std::to_string(values_.size()));
        for (const auto &v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InvalidArgument("ChannelSample: non-finite entry");
    }

    Dataset::Dataset(std::vector<ChannelSample> samples, Metadata metadata)
        : samples_(std::move(samples)), metadata_(std::move(metadata))
    {
        if (samples_.empty())
            throw InvalidArgument("Dataset: must contain at least one sample");
        const SampleShape &s0 = samples_.front().shape();
        for (std::size_t i = 1; i < samples_.size(); ++i)
            if (!(samples_[i].shape() == s0))
                throw InvalidArgument("Dataset: sample " + std::to_string(i) + " has a different shape than sample 0");
    }

    // ---- CSID encoding ------------------------------------------------------

    namespace
    {
        constexpr std::size_t header_fixed_size = 4 + 2 + 4 + 2 * 5 + 4;

        class ByteWriter
        {
        public:
            explicit ByteWriter(std::vector<std::uint8_t> &out) : out_(out) {}

            void u16(std::uint16_t v)
            {
                out_.push_back(static_cast<std::uint8_t>(v));
                out_.push_back(static_cast<std::uint8_t>(v >> 8));
            }
            void u32(std::uint32_t v)
            {
                for (int k = 0; k < 4; ++k)
                    out_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
            }
            void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
            void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }

        private:
            std::vector<std::uint8_t> &out_;
        };

        class ByteReader
        {
        public:
            explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

            std::size_t offset() const noexcept { return pos_; }
            std::size_t remaining() const noexcept { return in_.size() - pos_; }

            void need(std::size_t n, const char *what) const
            {
                if (remaining() < n)
                    throw FormatError(std::string("CSID: truncated ") + what, pos_);
            }
            std::uint16_t u16(const char *what)
            {
                need(2, what);
                std::uint16_t v = static_cast<std::uint16_t>(in_[pos_] | (in_[pos_ + 1] << 8));
                pos_ += 2;
                return v;
            }
            std::uint32_t u32(const char *what)
            {
                need(4, what);
                std::uint32_t v = 0;
                for (int k = 0; k < 4; ++k)
                    v |= static_cast<std::uint32_t>(in_[pos_ + k]) << (8 * k);
                pos_ += 4;
                return v;
            }
            float f32(const char *what) { return std::bit_cast<float>(u32(what)); }
            std::span<const std::uint8_t> take(std::size_t n, const char *what)
            {
                need(n, what);
                auto s = in_.subspan(pos_, n);
                pos_ += n;
                return s;
            }

        private:
            std::span<const std::uint8_t> in_;
            std::size_t pos_ = 0;
        };

        std::uint16_t narrow_u16(std::size_t v, const char *what)
        {
            if (v > std::numeric_limits<std::uint16_t>::max())
                throw InvalidArgument(std::string("CSID: ") + what + " exceeds 65535");
            return static_cast<std::uint16_t>(v);
        }
    }

    std::vector<std::uint8_t> encode_dataset(const Dataset &d)
    {
        const SampleShape &s = d.shape();
        if (d.size() > std::numeric_limits<std::uint32_t>::max())
            throw InvalidArgument("CSID: too many samples");

        nlohmann::json meta = nlohmann::json::object();
        for (const auto &[k, v] : d.metadata())
            meta[k] = v;
        const std::string meta_text = meta.dump();

        std::vector<std::uint8_t> out;
        out.reserve(header_fixed_size + meta_text.size() + d.size() * s.element_count() * 8);
        ByteWriter w(out);
        w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t *>("CSID"), 4));
        w.u16(csid_version);
        w.u32(static_cast<std::uint32_t>(d.size()));
        w.u16(narrow_u16(s.n_antennas, "A"));
        w.u16(narrow_u16(s.grid.n_v, "N_v"));
        w.u16(narrow_u16(s.grid.n_h, "N_h"));
        w.u16(narrow_u16(s.n_subcarriers, "F"));
        w.u16(narrow_u16(s.n_snapshots, "T"));
        w.u32(static_cast<std::uint32_t>(meta_text.size()));
        w.bytes(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t *>(meta_text.data()), meta_text.size()));
        for (const auto &sample : d)
            for (const cfloat &v : sample.values())
            {
                w.f32(v.real());
                w.f32(v.imag());
            }
        return out;
    }

    Dataset decode_dataset(std::span<const std::uint8_t> bytes)
    {
        ByteReader r(bytes);
        auto magic = r.take(4, "magic");
        if (!std::equal(magic.begin(), magic.end(), "CSID"))
            throw FormatError("CSID: bad magic bytes", 0);

        const std::size_t version_at = r.offset();
        if (const auto version = r.u16("header"); version != csid_version)
            throw FormatError("CSID: unsupported version " + std::to_string(version), version_at);

        const std::uint32_t n_samples = r.u32("header");
        const std::size_t dims_at = r.offset();
        SampleShape shape;
        shape.n_antennas = r.u16("header");
        shape.grid.n_v = r.u16("header");
        shape.grid.n_h = r.u16("header");
        shape.n_subcarriers = r.u16("header");
        shape.n_snapshots = r.u16("header");
        if (n_samples == 0)
            throw FormatError("CSID: dataset declares zero samples", version_at + 2);
        if (shape.n_antennas == 0 || shape.n_subcarriers == 0 || shape.n_snapshots == 0)
            throw FormatError("CSID: zero dimension in header", dims_at);
        if (shape.grid.size() != shape.n_antennas)
            throw FormatError("CSID: antenna grid does not multiply to A", dims_at);

        const std::uint32_t meta_len = r.u32("header");
        const std::size_t meta_at = r.offset();
        auto meta_bytes = r.take(meta_len, "metadata block");
        Metadata metadata;
        try
        {
            auto meta = nlohmann::json::parse(meta_bytes.begin(), meta_bytes.end());
            if (!meta.is_object())
                throw FormatError("CSID: metadata is not a JSON object", meta_at);
            for (const auto &[k, v] : meta.items())
            {
                if (!v.is_string())
                    throw FormatError("CSID: metadata value for '" + k + "' is not a string", meta_at);
                metadata.emplace(k, v.get<std::string>());
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            throw FormatError(std::string("CSID: malformed metadata: ") + e.what(), meta_at);
        }

        const std::size_t per_sample = shape.element_count();
        const std::size_t payload_bytes = static_cast<std::size_t>(n_samples) * per_sample * 8;
        if (r.remaining() < payload_bytes)
            throw FormatError("CSID: truncated payload, header declares " + std::to_string(n_samples) +
                                  " samples (" + std::to_string(payload_bytes) + " bytes) but only " +
                                  std::to_string(r.remaining()) + " bytes follow",
                              bytes.size());
        if (r.remaining() > payload_bytes)
            throw FormatError("CSID: trailing bytes after payload", r.offset() + payload_bytes);

        std::vector<ChannelSample> samples;
        samples.reserve(n_samples);
        for (std::uint32_t i = 0; i < n_samples; ++i)
        {
            std::vector<cfloat> values(per_sample);
            for (auto &v : values)
            {
                const std::size_t at = r.offset();
                const float re = r.f32("payload");
                const float im = r.f32("payload");
                if (!std::isfinite(re) || !std::isfinite(im))
                    throw FormatError("CSID: non-finite value in sample " + std::to_string(i), at);
                v = {re, im};
            }
            samples.emplace_back(shape, std::move(values));
        }
        return Dataset(std::move(samples), std::move(metadata));
    }

    Dataset read_dataset(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError("cannot open " + path.string());
        std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        return decode_dataset(bytes);
    }

    void write_dataset(const Dataset &d, const std::filesystem::path &path)
    {
        const auto bytes = encode_dataset(d);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + path.string() + " for writing");
        out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw IoError("write failed for " + path.string());
    }

    // ---- splitting and scaling ----------------------------------------------

    std::pair<Dataset, Dataset> split_dataset(const Dataset &d, double fraction, RandomSeed seed)
    {
        const std::size_t n = d.size();
        if (n < 2)
            throw InvalidArgument("split_dataset: need at least 2 samples");
        if (!(fraction > 0.0 && fraction < 1.0))
            throw InvalidArgument("split_dataset: fraction must lie in (0, 1)");
        const auto first_count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
        if (first_count == 0 || first_count == n)
            throw InvalidArgument("split_dataset: fraction " + std::to_string(fraction) + " leaves one part empty");

        // Partial Fisher-Yates draw of the first part.
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        Rng rng(seed);
        for (std::size_t i = 0; i < first_count; ++i)
        {
            const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1)));
            std::swap(idx[i], idx[j]);
        }
        std::vector<bool> in_first(n, false);
        for (std::size_t i = 0; i < first_count; ++i)
            in_first[idx[i]] = true;

        std::vector<ChannelSample> a, b;
        for (std::size_t i = 0; i < n; ++i)
            (in_first[i] ? a : b).push_back(d[i]);
        return {Dataset(std::move(a), d.metadata()), Dataset(std::move(b), d.metadata())};
    }

    Dataset normalize_by_max_entry(const Dataset &d)
    {
        std::vector<ChannelSample> out;
        out.reserve(d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
        {
            const auto &s = d[i];
            float peak = 0.0f;
            for (const auto &v : s.values())
                peak = std::max(peak, std::abs(v));
            if (peak == 0.0f)
                throw DegenerateInput("normalize_by_max_entry: sample " + std::to_string(i) + " is all zero");
            std::vector<cfloat> values(s.values().begin(), s.values().end());
            for (auto &v : values)
                v /= peak;
            out.emplace_back(s.shape(), std::move(values));
        }
        Metadata meta = d.metadata();
        meta["normalized"] = "max_entry";
        return Dataset(std::move(out), std::move(meta));
    }
}
