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

#include "dqa/transport.hpp"
#include "dqa/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace dqa
{
    namespace
    {
        constexpr int state_tree = 0;
        constexpr int state_lower = 1;
        constexpr int dir_up = 1;    // tree arc points from node to its parent
        constexpr int dir_down = -1; // tree arc points from parent to node

        class NetworkSimplex
        {
        public:
            NetworkSimplex(const RealMatrix &cost, std::span<const std::int64_t> supply,
                           std::span<const std::int64_t> demand)
                : n_src_(cost.rows()), n_snk_(cost.cols()), cost_matrix_(cost)
            {
                node_count_ = n_src_ + n_snk_;
                root_ = node_count_;
                real_arcs_ = n_src_ * n_snk_;
                const std::size_t all_arcs = real_arcs_ + node_count_;

                source_.resize(all_arcs);
                target_.resize(all_arcs);
                cost_.resize(all_arcs);
                flow_.assign(all_arcs, 0);
                state_.assign(all_arcs, state_lower);

                double max_cost = 0.0;
                for (std::size_t i = 0; i < n_src_; ++i)
                    for (std::size_t j = 0; j < n_snk_; ++j)
                    {
                        const std::size_t e = i * n_snk_ + j;
                        source_[e] = i;
                        target_[e] = n_src_ + j;
                        cost_[e] = cost(i, j);
                        max_cost = std::max(max_cost, std::abs(cost_[e]));
                    }

                const double art_cost = (max_cost + 1.0) * static_cast<double>(node_count_ + 1);
                tolerance_ = 64.0 * std::numeric_limits<double>::epsilon() * art_cost;

                parent_.assign(node_count_ + 1, npos);
                pred_.assign(node_count_ + 1, npos);
                pred_dir_.assign(node_count_ + 1, dir_up);
                pi_.assign(node_count_ + 1, 0.0);

                // Initial strongly feasible tree: every node hangs off the root through an
                // artificial arc; sources send their supply up, sinks receive demand from the root.
                for (std::size_t u = 0; u < node_count_; ++u)
                {
                    const std::size_t e = real_arcs_ + u;
                    state_[e] = state_tree;
                    parent_[u] = root_;
                    pred_[u] = e;
                    if (u < n_src_)
                    {
                        source_[e] = u;
                        target_[e] = root_;
                        flow_[e] = supply[u];
                        cost_[e] = 0.0;
                        pred_dir_[u] = dir_up;
                        pi_[u] = 0.0;
                    }
                    else
                    {
                        source_[e] = root_;
                        target_[e] = u;
                        flow_[e] = demand[u - n_src_];
                        cost_[e] = art_cost;
                        pred_dir_[u] = dir_down;
                        pi_[u] = art_cost;
                    }
                }
                rebuild_tree();

                block_size_ = std::max<std::size_t>(10, static_cast<std::size_t>(std::sqrt(static_cast<double>(real_arcs_))));
            }

            TransportSolution run()
            {
                TransportSolution out;
                const std::size_t max_pivots = 50 * real_arcs_ + 100000;
                while (find_entering_arc())
                {
                    if (++out.pivots > max_pivots)
                        throw InternalError("network simplex: pivot limit exceeded");
                    find_join_node();
                    find_leaving_arc();
                    pivot();
                }

                for (std::size_t u = 0; u < node_count_; ++u)
                    if (flow_[real_arcs_ + u] != 0)
                        throw InternalError("network simplex: transportation problem is infeasible");

                for (std::size_t e = 0; e < real_arcs_; ++e)
                    if (flow_[e] > 0)
                    {
                        const std::size_t i = e / n_snk_, j = e % n_snk_;
                        out.flows.push_back({i, j, flow_[e]});
                        out.cost += cost_matrix_(i, j) * static_cast<double>(flow_[e]);
                    }
                return out;
            }

        private:
            static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

            double reduced_cost(std::size_t e) const
            {
                return cost_[e] + pi_[source_[e]] - pi_[target_[e]];
            }

            // Block search pricing over the real arcs: scan blocks cyclically from where the last
            // search stopped and take the most violating arc of the first block holding one.
            bool find_entering_arc()
            {
                double best = 0.0;
                std::size_t best_arc = npos;
                std::size_t count = block_size_;
                for (std::size_t k = 0; k < real_arcs_; ++k)
                {
                    const std::size_t e = next_arc_;
                    next_arc_ = next_arc_ + 1 == real_arcs_ ? 0 : next_arc_ + 1;
                    if (state_[e] != state_tree)
                    {
                        const double c = state_[e] * reduced_cost(e);
                        if (c < best)
                        {
                            best = c;
                            best_arc = e;
                        }
                    }
                    if (--count == 0)
                    {
                        if (best < -tolerance_)
                            break;
                        count = block_size_;
                    }
                }
                if (best < -tolerance_)
                {
                    in_arc_ = best_arc;
                    return true;
                }
                return false;
            }

            void find_join_node()
            {
                std::size_t u = source_[in_arc_], v = target_[in_arc_];
                while (depth_[u] > depth_[v])
                    u = parent_[u];
                while (depth_[v] > depth_[u])
                    v = parent_[v];
                while (u != v)
                {
                    u = parent_[u];
                    v = parent_[v];
                }
                join_ = u;
            }

            // Arcs are uncapacitated, so only tree arcs whose flow decreases around the cycle can
            // block. Ties go to the last blocking arc met when walking the cycle in the direction of
            // flow starting at the join node, which keeps the tree strongly feasible.
            void find_leaving_arc()
            {
                const std::size_t first = source_[in_arc_], second = target_[in_arc_];
                delta_ = std::numeric_limits<std::int64_t>::max();
                int side = 0;
                for (std::size_t u = first; u != join_; u = parent_[u])
                {
                    if (pred_dir_[u] != dir_up)
                        continue;
                    const std::int64_t d = flow_[pred_[u]];
                    if (d < delta_)
                    {
                        delta_ = d;
                        u_out_ = u;
                        side = 1;
                    }
                }
                for (std::size_t u = second; u != join_; u = parent_[u])
                {
                    if (pred_dir_[u] != dir_down)
                        continue;
                    const std::int64_t d = flow_[pred_[u]];
                    if (d <= delta_)
                    {
                        delta_ = d;
                        u_out_ = u;
                        side = 2;
                    }
                }
                if (side == 0)
                    throw InternalError("network simplex: unbounded cycle (negative cost cycle of infinite capacity)");
            }

            void pivot()
            {
                if (delta_ > 0)
                {
                    flow_[in_arc_] += delta_;
                    for (std::size_t u = source_[in_arc_]; u != join_; u = parent_[u])
                        flow_[pred_[u]] -= pred_dir_[u] * delta_;
                    for (std::size_t u = target_[in_arc_]; u != join_; u = parent_[u])
                        flow_[pred_[u]] += pred_dir_[u] * delta_;
                }
                const std::size_t out_arc = pred_[u_out_];
                state_[out_arc] = state_lower;
                state_[in_arc_] = state_tree;
                tree_arcs_[tree_slot_[out_arc]] = in_arc_;
                tree_slot_[in_arc_] = tree_slot_[out_arc];
                rebuild_tree();
            }

            // Recomputes parent, predecessor arc, orientation, depth and potentials from the set of
            // tree arcs by a traversal from the root. O(nodes) per pivot.
            void rebuild_tree()
            {
                const std::size_t n = node_count_ + 1;
                if (tree_arcs_.empty())
                {
                    tree_slot_.assign(source_.size(), npos);
                    for (std::size_t u = 0; u < node_count_; ++u)
                    {
                        tree_slot_[pred_[u]] = tree_arcs_.size();
                        tree_arcs_.push_back(pred_[u]);
                    }
                }

                adj_start_.assign(n + 1, 0);
                for (std::size_t e : tree_arcs_)
                {
                    ++adj_start_[source_[e] + 1];
                    ++adj_start_[target_[e] + 1];
                }
                for (std::size_t u = 0; u < n; ++u)
                    adj_start_[u + 1] += adj_start_[u];
                adj_.resize(2 * tree_arcs_.size());
                fill_.assign(adj_start_.begin(), adj_start_.end() - 1);
                for (std::size_t e : tree_arcs_)
                {
                    adj_[fill_[source_[e]]++] = e;
                    adj_[fill_[target_[e]]++] = e;
                }

                depth_.assign(n, 0);
                parent_[root_] = npos;
                pred_[root_] = npos;
                pi_[root_] = 0.0;
                stack_.clear();
                stack_.push_back(root_);
                std::size_t visited = 0;
                while (!stack_.empty())
                {
                    const std::size_t u = stack_.back();
                    stack_.pop_back();
                    ++visited;
                    for (std::size_t k = adj_start_[u]; k < adj_start_[u + 1]; ++k)
                    {
                        const std::size_t e = adj_[k];
                        if (e == pred_[u])
                            continue;
                        const bool up = target_[e] == u; // arc child -> u
                        const std::size_t child = up ? source_[e] : target_[e];
                        parent_[child] = u;
                        pred_[child] = e;
                        pred_dir_[child] = up ? dir_up : dir_down;
                        depth_[child] = depth_[u] + 1;
                        pi_[child] = up ? pi_[u] - cost_[e] : pi_[u] + cost_[e];
                        stack_.push_back(child);
                    }
                }
                if (visited != n)
                    throw InternalError("network simplex: basis is not a spanning tree");
            }

            std::size_t n_src_, n_snk_;
            const RealMatrix &cost_matrix_;
            std::size_t node_count_ = 0, root_ = 0, real_arcs_ = 0;
            double tolerance_ = 0.0;
            std::size_t block_size_ = 10, next_arc_ = 0;

            std::vector<std::size_t> source_, target_;
            std::vector<double> cost_;
            std::vector<std::int64_t> flow_;
            std::vector<int> state_;

            std::vector<std::size_t> parent_, pred_, depth_;
            std::vector<int> pred_dir_;
            std::vector<double> pi_;

            std::vector<std::size_t> tree_arcs_, tree_slot_;
            std::vector<std::size_t> adj_start_, adj_, fill_, stack_;

            std::size_t in_arc_ = 0, join_ = 0, u_out_ = 0;
            std::int64_t delta_ = 0;
        };
    }

    TransportSolution solve_transportation(const RealMatrix &cost, std::span<const std::int64_t> supply,
                                           std::span<const std::int64_t> demand)
    {
        if (cost.rows() == 0 || cost.cols() == 0)
            throw InvalidArgument("solve_transportation: empty cost matrix");
        if (supply.size() != cost.rows() || demand.size() != cost.cols())
            throw InvalidArgument("solve_transportation: marginal sizes do not match the cost matrix");
        for (double c : cost.values())
            if (!std::isfinite(c))
                throw InvalidArgument("solve_transportation: non-finite cost");
        std::int64_t total_supply = 0, total_demand = 0;
        for (auto s : supply)
        {
            if (s < 0)
                throw InvalidArgument("solve_transportation: negative supply");
            total_supply += s;
        }
        for (auto d : demand)
        {
            if (d < 0)
                throw InvalidArgument("solve_transportation: negative demand");
            total_demand += d;
        }
        if (total_supply != total_demand)
            throw InvalidArgument("solve_transportation: total supply " + std::to_string(total_supply) +
                                  " differs from total demand " + std::to_string(total_demand));

        NetworkSimplex ns(cost, supply, demand);
        return ns.run();
    }

    std::size_t TransportPlan::nonzeros() const
    {
        return static_cast<std::size_t>(std::count_if(coupling.values().begin(), coupling.values().end(),
                                                      [](double v) { return v != 0.0; }));
    }

    TransportPlan solve_uniform_transport(const RealMatrix &cost)
    {
        const std::size_t nx = cost.rows(), ny = cost.cols();
        if (nx == 0 || ny == 0)
            throw InvalidArgument("solve_uniform_transport: empty cost matrix");
        const auto g = std::gcd(nx, ny);
        const std::vector<std::int64_t> supply(nx, static_cast<std::int64_t>(ny / g));
        const std::vector<std::int64_t> demand(ny, static_cast<std::int64_t>(nx / g));
        const auto solution = solve_transportation(cost, supply, demand);

        const double total = static_cast<double>(nx / g) * static_cast<double>(ny);
        TransportPlan plan;
        plan.coupling = RealMatrix(nx, ny, 0.0);
        for (const auto &f : solution.flows)
            plan.coupling(f.source, f.sink) = static_cast<double>(f.amount) / total;
        double c = 0.0;
        for (const auto &f : solution.flows)
            c += cost(f.source, f.sink) * plan.coupling(f.source, f.sink);
        plan.cost = c;
        return plan;
    }
}
