// Copyright 2026 The qcommit authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file dispatch.hpp
 * Deterministic merit-order economic dispatch for a fixed commitment.
 *
 * Each committed unit is first pinned to its per-period lower bound
 * max(p_min, prev_p + r_d); remaining demand is filled in ascending c_g
 * order (ties by unit index) up to min(p_max, prev_p + r_u). Unmet demand
 * becomes load shedding pro-rata over positive bus net loads. When the
 * mandatory minimum exceeds demand, renewables are curtailed pro-rata by
 * availability; any remainder is flagged infeasible surplus and recorded as
 * extra curtailment on the first renewable (or in surplus_mw when the case
 * has none), keeping the power balance closed.
 */
#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "qcommit/grid/case.hpp"

namespace qcommit::grid {

struct DispatchResult {
    std::vector<double> p_gen;     // per unit, MW
    std::vector<double> p_shed;    // per bus, MW
    std::vector<double> p_curtail; // per renewable, MW
    std::vector<std::uint8_t> startup_flags;  // filled by the environment
    std::vector<std::uint8_t> shutdown_flags; // filled by the environment
    bool infeasible_surplus = false;
    double surplus_mw = 0.0; // only nonzero when no renewable can absorb

    double total_gen() const {
        return std::accumulate(p_gen.begin(), p_gen.end(), 0.0);
    }
    double total_shed() const {
        return std::accumulate(p_shed.begin(), p_shed.end(), 0.0);
    }
    double total_curtail() const {
        return std::accumulate(p_curtail.begin(), p_curtail.end(), 0.0);
    }
};

/**
 * @brief Merit-order dispatch of committed units against per-bus net load.
 *
 * `net_load` is load minus renewable availability per bus;
 * `renewable_avail` carries the per-renewable MW available for curtailment
 * accounting. `prev_p` is the previous-period output per unit (0 for units
 * that were off).
 */
inline DispatchResult merit_order_dispatch(
    const GridCase& c, std::span<const std::uint8_t> e,
    std::span<const double> prev_p, std::span<const double> net_load,
    std::span<const double> renewable_avail) {
    const std::size_t ng = c.units.size();
    const std::size_t nbus = c.buses.size();
    const std::size_t nren = c.renewables.size();
    if (e.size() != ng || prev_p.size() != ng) {
        throw SizeError("merit_order_dispatch: commitment/prev_p length");
    }
    if (net_load.size() != nbus) {
        throw SizeError("merit_order_dispatch: net_load length");
    }
    if (renewable_avail.size() != nren) {
        throw SizeError("merit_order_dispatch: renewable_avail length");
    }
    for (std::size_t g = 0; g < ng; ++g) {
        const auto& u = c.units[g];
        if (prev_p[g] < -1e-9 || prev_p[g] > u.p_max + 1e-9) {
            throw ContractError("merit_order_dispatch: prev_p[" +
                                std::to_string(g) +
                                "] outside the unit's range");
        }
    }

    DispatchResult r;
    r.p_gen.assign(ng, 0.0);
    r.p_shed.assign(nbus, 0.0);
    r.p_curtail.assign(nren, 0.0);
    r.startup_flags.assign(ng, 0);
    r.shutdown_flags.assign(ng, 0);

    // Per-period feasible box for each committed unit.
    std::vector<double> lo(ng, 0.0);
    std::vector<double> hi(ng, 0.0);
    double total_lo = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
        if (!e[g]) {
            continue;
        }
        const auto& u = c.units[g];
        lo[g] = std::max(u.p_min, prev_p[g] + u.r_d);
        hi[g] = std::min(u.p_max, prev_p[g] + u.r_u);
        hi[g] = std::max(hi[g], lo[g]); // the minimum takes precedence
        r.p_gen[g] = lo[g];
        total_lo += lo[g];
    }

    const double demand =
        std::accumulate(net_load.begin(), net_load.end(), 0.0);

    if (demand >= total_lo) {
        // Fill the gap in ascending marginal cost, ties by index.
        std::vector<std::size_t> order;
        for (std::size_t g = 0; g < ng; ++g) {
            if (e[g]) {
                order.push_back(g);
            }
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return c.units[a].c_g < c.units[b].c_g;
                         });
        double remaining = demand - total_lo;
        for (std::size_t g : order) {
            if (remaining <= 0.0) {
                break;
            }
            const double add = std::min(remaining, hi[g] - lo[g]);
            r.p_gen[g] += add;
            remaining -= add;
        }
        if (remaining > 1e-12) {
            // Shed pro-rata over positive bus net loads.
            double positive = 0.0;
            for (double l : net_load) {
                positive += std::max(0.0, l);
            }
            if (positive > 0.0) {
                for (std::size_t b = 0; b < nbus; ++b) {
                    const double share = std::max(0.0, net_load[b]) / positive;
                    r.p_shed[b] = remaining * share;
                }
            }
        }
    } else {
        // Mandatory minimum exceeds demand: curtail renewables pro-rata.
        double surplus = total_lo - demand;
        const double avail = std::accumulate(renewable_avail.begin(),
                                             renewable_avail.end(), 0.0);
        const double curtail_total = std::min(surplus, avail);
        if (avail > 0.0) {
            for (std::size_t k = 0; k < nren; ++k) {
                r.p_curtail[k] = curtail_total * renewable_avail[k] / avail;
            }
        }
        surplus -= curtail_total;
        if (surplus > 1e-9) {
            r.infeasible_surplus = true;
            if (nren > 0) {
                r.p_curtail[0] += surplus; // negative shed kept as curtailment
            } else {
                r.surplus_mw = surplus;
            }
        }
    }
    return r;
}

struct StageCosts {
    double fuel = 0.0;
    double startup = 0.0;
    double shed = 0.0;

    double total() const { return fuel + startup + shed; }
};

inline StageCosts stage_costs(const GridCase& c, const DispatchResult& d,
                              std::span<const std::uint8_t> e_prev,
                              std::span<const std::uint8_t> e_now) {
    const std::size_t ng = c.units.size();
    if (e_prev.size() != ng || e_now.size() != ng ||
        d.p_gen.size() != ng) {
        throw SizeError("stage_costs: shape mismatch");
    }
    StageCosts s;
    for (std::size_t g = 0; g < ng; ++g) {
        s.fuel += c.units[g].c_g * d.p_gen[g];
        if (e_now[g] && !e_prev[g]) {
            s.startup += c.units[g].c_g_su;
        }
    }
    s.shed = c.costs.c_ls * d.total_shed();
    return s;
}

} // namespace qcommit::grid
