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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dqa
{
    // One nonzero cell of an integral transportation plan.
    struct TransportFlow
    {
        std::size_t source = 0;
        std::size_t sink = 0;
        std::int64_t amount = 0;
    };

    struct TransportSolution
    {
        std::vector<TransportFlow> flows; // basic solution, sorted by (source, sink)
        double cost = 0.0;                // sum of cost(i, j) * amount
        std::size_t pivots = 0;
    };

    /*
    Exact solver for the balanced transportation problem

        min  sum_ij cost(i, j) x_ij   s.t.  sum_j x_ij = supply_i,  sum_i x_ij = demand_j,  x >= 0

    on the complete bipartite graph, by the primal network simplex method with a strongly feasible
    spanning tree (Cunningham's leaving-arc rule, which rules out cycling on degenerate pivots),
    big-M artificial root arcs for the initial basis and block-search pricing.

    Supplies and demands are integers so that all flows are exact; costs are real. The returned
    plan is a basic solution with at most rows + cols - 1 nonzero cells.
    */
    TransportSolution solve_transportation(const RealMatrix &cost, std::span<const std::int64_t> supply,
                                           std::span<const std::int64_t> demand);

    // Coupling with uniform marginals: every row sums to 1/rows, every column to 1/cols.
    struct TransportPlan
    {
        RealMatrix coupling;
        double cost = 0.0; // <cost, coupling>

        std::size_t nonzeros() const;
    };

    // Optimal uniform-marginal coupling for the given cost matrix. Internally scales the marginals
    // to integers (rows carry cols/g units, columns rows/g units, g = gcd) and divides back.
    TransportPlan solve_uniform_transport(const RealMatrix &cost);
}
