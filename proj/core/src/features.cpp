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

#include "dqa/features.hpp"
#include "dqa/error.hpp"
#include "dqa/parallel.hpp"
#include "dft.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace dqa
{
    std::string_view to_string(FeatureKind k)
    {
        switch (k)
        {
        case FeatureKind::PDP: return "pdp";
        case FeatureKind::APS: return "aps";
        case FeatureKind::Doppler: return "doppler";
        case FeatureKind::PDPSparsity: return "pdp-sparsity";
        case FeatureKind::APSSparsity: return "aps-sparsity";
        case FeatureKind::DopplerSparsity: return "doppler-sparsity";
        }
        return "unknown";
    }

    FeatureKind parse_feature_kind(std::string_view name)
    {
        for (FeatureKind k : all_feature_kinds)
            if (to_string(k) == name)
                return k;
        throw InvalidArgument("unknown feature '" + std::string(name) +
                              "' (valid: pdp, aps, doppler, pdp-sparsity, aps-sparsity, doppler-sparsity)");
    }

    bool FeatureBundle::has(FeatureKind k) const noexcept
    {
        switch (k)
        {
        case FeatureKind::PDP: return !pdp.empty();
        case FeatureKind::APS: return !aps.empty();
        case FeatureKind::Doppler: return doppler.has_value();
        case FeatureKind::PDPSparsity: return pdp_sparsity.has_value();
        case FeatureKind::APSSparsity: return aps_sparsity.has_value();
        case FeatureKind::DopplerSparsity: return doppler_sparsity.has_value();
        }
        return false;
    }

    namespace
    {
        using detail::Dft;

        std::vector<cdouble> to_double(const ChannelSample &s)
        {
            std::vector<cdouble> h(s.values().size());
            std::transform(s.values().begin(), s.values().end(), h.begin(),
                           [](cfloat v) { return cdouble(v.real(), v.imag()); });
            return h;
        }

        // Normalizes to unit sum in place; throws on zero total power.
        void normalize_power(std::span<double> p, const char *what)
        {
            double total = 0.0;
            for (double v : p)
                total += v;
            if (!(total > 0.0) || !std::isfinite(total))
                throw DegenerateInput(std::string(what) + ": sample has zero power");
            for (double &v : p)
                v /= total;
        }
    }

    std::vector<double> extract_pdp(const ChannelSample &s)
    {
        const std::size_t A = s.n_antennas(), F = s.n_subcarriers(), T = s.n_snapshots();
        const auto h = to_double(s);
        const Dft dft(F);
        std::vector<double> pdp(F, 0.0);
        std::vector<cdouble> taps(F);
        for (std::size_t a = 0; a < A; ++a)
            for (std::size_t t = 0; t < T; ++t)
            {
                dft.inverse(h.data() + a * F * T + t, T, taps.data(), 1);
                for (std::size_t d = 0; d < F; ++d)
                    pdp[d] += std::norm(taps[d]);
            }
        normalize_power(pdp, "extract_pdp");
        return pdp;
    }

    RealMatrix extract_aps(const ChannelSample &s)
    {
        const std::size_t F = s.n_subcarriers(), T = s.n_snapshots();
        const std::size_t nv = s.grid().n_v, nh = s.grid().n_h;
        const auto h = to_double(s);
        const Dft row_dft(nh), col_dft(nv);
        RealMatrix aps(nv, nh, 0.0);
        std::vector<cdouble> grid(nv * nh), tmp(nv * nh);
        for (std::size_t f = 0; f < F; ++f)
            for (std::size_t t = 0; t < T; ++t)
            {
                for (std::size_t a = 0; a < nv * nh; ++a)
                    grid[a] = h[(a * F + f) * T + t];
                for (std::size_t r = 0; r < nv; ++r)
                    row_dft.forward(grid.data() + r * nh, 1, tmp.data() + r * nh, 1);
                for (std::size_t c = 0; c < nh; ++c)
                    col_dft.forward(tmp.data() + c, nh, grid.data() + c, nh);
                for (std::size_t r = 0; r < nv; ++r)
                    for (std::size_t c = 0; c < nh; ++c)
                        aps(r, c) += std::norm(grid[r * nh + c]);
            }
        normalize_power(aps.values(), "extract_aps");
        return aps;
    }

    std::optional<std::vector<double>> extract_doppler(const ChannelSample &s)
    {
        const std::size_t A = s.n_antennas(), F = s.n_subcarriers(), T = s.n_snapshots();
        if (T == 1)
            return std::nullopt;
        const auto h = to_double(s);
        const Dft dft(T);
        std::vector<double> spectrum(T, 0.0);
        std::vector<cdouble> bins(T);
        for (std::size_t a = 0; a < A; ++a)
            for (std::size_t f = 0; f < F; ++f)
            {
                dft.forward(h.data() + (a * F + f) * T, 1, bins.data(), 1);
                for (std::size_t k = 0; k < T; ++k)
                    spectrum[k] += std::norm(bins[k]);
            }
        normalize_power(spectrum, "extract_doppler");
        return spectrum;
    }

    double hoyer_sparsity(std::span<const double> v)
    {
        const std::size_t n = v.size();
        if (n < 2)
            throw InvalidArgument("hoyer_sparsity: need at least 2 entries");
        double l1 = 0.0, l2sq = 0.0;
        for (double x : v)
        {
            if (!(x >= 0.0) || !std::isfinite(x))
                throw InvalidArgument("hoyer_sparsity: entries must be finite and nonnegative");
            l1 += x;
            l2sq += x * x;
        }
        if (l2sq == 0.0)
            throw DegenerateInput("hoyer_sparsity: all-zero vector");
        const double root_n = std::sqrt(static_cast<double>(n));
        const double h = (root_n - l1 / std::sqrt(l2sq)) / (root_n - 1.0);
        return std::clamp(h, 0.0, 1.0);
    }

    FeatureBundle extract_bundle(const ChannelSample &s)
    {
        FeatureBundle b;
        b.pdp = extract_pdp(s);
        b.aps = extract_aps(s);
        b.doppler = extract_doppler(s);
        if (b.pdp.size() >= 2)
            b.pdp_sparsity = hoyer_sparsity(b.pdp);
        if (b.aps.size() >= 2)
            b.aps_sparsity = hoyer_sparsity(b.aps.values());
        if (b.doppler && b.doppler->size() >= 2)
            b.doppler_sparsity = hoyer_sparsity(*b.doppler);
        return b;
    }

    std::vector<FeatureBundle> extract_features(const Dataset &d, unsigned workers)
    {
        std::vector<FeatureBundle> out(d.size());
        parallel_for(d.size(), workers, [&](std::size_t i)
                     {
            try
            {
                out[i] = extract_bundle(d[i]);
            }
            catch (const DegenerateInput &e)
            {
                throw DegenerateInput("sample " + std::to_string(i) + ": " + e.what());
            } });
        return out;
    }

    RealMatrix feature_value(const FeatureBundle &b, FeatureKind k)
    {
        if (!b.has(k))
            throw InvalidArgument("feature '" + std::string(to_string(k)) + "' is not available for this sample");
        switch (k)
        {
        case FeatureKind::PDP: return RealMatrix::row_vector(b.pdp);
        case FeatureKind::APS: return b.aps;
        case FeatureKind::Doppler: return RealMatrix::row_vector(*b.doppler);
        case FeatureKind::PDPSparsity: return RealMatrix::scalar(*b.pdp_sparsity);
        case FeatureKind::APSSparsity: return RealMatrix::scalar(*b.aps_sparsity);
        case FeatureKind::DopplerSparsity: return RealMatrix::scalar(*b.doppler_sparsity);
        }
        throw InvalidArgument("feature_value: unknown feature kind");
    }

    std::vector<RealMatrix> feature_values(std::span<const FeatureBundle> bundles, FeatureKind k)
    {
        std::vector<RealMatrix> out;
        out.reserve(bundles.size());
        for (const auto &b : bundles)
            out.push_back(feature_value(b, k));
        return out;
    }

    // ---- feature cache --------------------------------------------------------

    namespace
    {
        using nlohmann::ordered_json;

        template <typename T>
        ordered_json optional_json(const std::optional<T> &v)
        {
            return v ? ordered_json(*v) : ordered_json(nullptr);
        }

        std::optional<double> read_optional_scalar(const ordered_json &j, const char *key)
        {
            const auto &v = j.at(key);
            if (v.is_null())
                return std::nullopt;
            return v.get<double>();
        }
    }

    std::string features_to_json(std::span<const FeatureBundle> bundles)
    {
        ordered_json arr = ordered_json::array();
        for (const auto &b : bundles)
        {
            ordered_json rows = ordered_json::array();
            for (std::size_t r = 0; r < b.aps.rows(); ++r)
            {
                auto row = b.aps.row(r);
                rows.push_back(std::vector<double>(row.begin(), row.end()));
            }
            ordered_json o;
            o["pdp"] = b.pdp;
            o["aps"] = std::move(rows);
            o["doppler"] = optional_json(b.doppler);
            o["pdp_sparsity"] = optional_json(b.pdp_sparsity);
            o["aps_sparsity"] = optional_json(b.aps_sparsity);
            o["doppler_sparsity"] = optional_json(b.doppler_sparsity);
            arr.push_back(std::move(o));
        }
        return arr.dump();
    }

    std::vector<FeatureBundle> features_from_json(std::string_view text)
    {
        std::vector<FeatureBundle> out;
        try
        {
            const auto arr = ordered_json::parse(text);
            if (!arr.is_array())
                throw FormatError("feature cache: top level is not an array", 0);
            for (const auto &o : arr)
            {
                FeatureBundle b;
                b.pdp = o.at("pdp").get<std::vector<double>>();
                const auto &rows = o.at("aps");
                const std::size_t nr = rows.size();
                const std::size_t nc = nr ? rows.at(0).size() : 0;
                std::vector<double> flat;
                for (const auto &row : rows)
                {
                    if (row.size() != nc)
                        throw FormatError("feature cache: ragged aps rows", 0);
                    for (const auto &v : row)
                        flat.push_back(v.get<double>());
                }
                b.aps = RealMatrix(nr, nc, std::move(flat));
                if (!o.at("doppler").is_null())
                    b.doppler = o.at("doppler").get<std::vector<double>>();
                b.pdp_sparsity = read_optional_scalar(o, "pdp_sparsity");
                b.aps_sparsity = read_optional_scalar(o, "aps_sparsity");
                b.doppler_sparsity = read_optional_scalar(o, "doppler_sparsity");
                out.push_back(std::move(b));
            }
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw FormatError(std::string("feature cache: ") + e.what(), e.byte);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw FormatError(std::string("feature cache: ") + e.what(), 0);
        }
        return out;
    }
}
