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
 * @file brute_force.hpp
 * Ground-truth references: exhaustive commitment-sequence search under the
 * environment's own dispatch and reward semantics, exhaustive grid search
 * over single-step VPP actions, and the priority-list commitment heuristic.
 * Ties always resolve to the lexicographically smallest action sequence.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "qcommit/envs/day_ahead.hpp"
#include "qcommit/envs/real_time.hpp"

namespace qcommit::oracle {

struct OracleResult {
    double best_value = 0.0;
    std::vector<std::vector<std::uint8_t>> best_actions;
    long evaluated_count = 0;
};

/**
 * @brief Exact optimum of the day-ahead episode by enumerating all
 * commitment sequences. Guarded at 2^(units * periods) <= 65536.
 */
inline OracleResult brute_force_uc(const grid::GridCase& c, int day = 0,
                                   double reward_scale = 0.0) {
    const int units = static_cast<int>(c.units.size());
    const int horizon = c.periods;
    const long bits = static_cast<long>(units) * horizon;
    if (bits > 16) {
        throw GuardError("brute_force_uc: 2^(units*periods) exceeds 65536");
    }
    const long total = 1L << bits;
    const long mask_bits = (1L << units) - 1;

    OracleResult result;
    result.best_value = -1e300;
    std::vector<std::vector<std::uint8_t>> actions(
        static_cast<std::size_t>(horizon));
    for (long seq = 0; seq < total; ++seq) {
        // Period 0 occupies the most-significant block so ascending seq
        // order is lexicographic order over action sequences.
        envs::DayAheadEnv env(c, day, 0, reward_scale);
        double value = 0.0;
        for (int t = 0; t < horizon; ++t) {
            const long m = (seq >> ((horizon - 1 - t) * units)) & mask_bits;
            auto& mask = actions[static_cast<std::size_t>(t)];
            mask.assign(static_cast<std::size_t>(units), 0);
            for (int g = 0; g < units; ++g) {
                mask[static_cast<std::size_t>(g)] =
                    static_cast<std::uint8_t>((m >> g) & 1);
            }
            value += env.step(mask).reward;
        }
        ++result.evaluated_count;
        if (value > result.best_value) {
            result.best_value = value;
            result.best_actions = actions;
        }
    }
    return result;
}

struct VppSearchResult {
    double best_value = 0.0;
    std::vector<double> best_action; // MW per VPP
    long evaluated_count = 0;
};

/**
 * @brief Exhaustive grid search over the clipped VPP action box at the
 * environment's current period. Guarded at <= 3 VPPs and <= 1e6 points.
 */
inline VppSearchResult grid_search_vpp(const envs::RealTimeEnv& env,
                                       double resolution_mw) {
    const auto& c = env.grid_case();
    const std::size_t nv = c.vpps.size();
    if (nv > 3) {
        throw GuardError("grid_search_vpp: more than 3 VPPs");
    }
    if (!(resolution_mw > 0.0)) {
        throw GuardError("grid_search_vpp: resolution must be positive");
    }
    std::vector<long> steps(nv, 0);
    long points = 1;
    for (std::size_t i = 0; i < nv; ++i) {
        steps[i] = static_cast<long>(
                       std::floor(2.0 * c.vpps[i].p_vpp_max / resolution_mw +
                                  1e-9)) +
                   1;
        points *= steps[i];
        if (points > 1000000L) {
            throw GuardError("grid_search_vpp: grid exceeds 1e6 points");
        }
    }

    VppSearchResult result;
    result.best_value = -1e300;
    std::vector<long> odo(nv, 0);
    std::vector<double> action(nv, 0.0);
    for (;;) {
        for (std::size_t i = 0; i < nv; ++i) {
            action[i] = std::min(-c.vpps[i].p_vpp_max +
                                     static_cast<double>(odo[i]) *
                                         resolution_mw,
                                 c.vpps[i].p_vpp_max);
        }
        const double value = env.evaluate_action(action).reward;
        ++result.evaluated_count;
        if (value > result.best_value) {
            result.best_value = value;
            result.best_action = action;
        }
        std::size_t k = 0;
        while (k < nv && odo[k] == steps[k] - 1) {
            odo[k] = 0;
            ++k;
        }
        if (k == nv) {
            break;
        }
        ++odo[k];
    }
    return result;
}

struct PriorityListResult {
    std::vector<std::vector<std::uint8_t>> schedule;
    double value = 0.0;
};

/**
 * @brief Classic priority-list heuristic: per period, commit units in
 * ascending full-load average cost (c_g + c_g_su amortized over the
 * horizon at full load) until committed capacity covers forecast net load
 * times (1 + reserve), then score via the environment semantics.
 */
inline PriorityListResult priority_list(const grid::GridCase& c, int day = 0,
                                        double reserve = 0.05,
                                        double reward_scale = 0.0) {
    const std::size_t ng = c.units.size();
    std::vector<std::size_t> order(ng);
    for (std::size_t g = 0; g < ng; ++g) {
        order[g] = g;
    }
    auto flac = [&](std::size_t g) {
        const auto& u = c.units[g];
        return u.c_g + u.c_g_su / (static_cast<double>(c.periods) *
                                   std::max(u.p_max, 1.0));
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return flac(a) < flac(b);
                     });

    PriorityListResult result;
    envs::DayAheadEnv env(c, day, 0, reward_scale);
    const int offset = day * c.periods;
    for (int t = 0; t < c.periods; ++t) {
        double net_load = 0.0;
        for (const auto& load : c.loads) {
            net_load +=
                load.forecast_profile[static_cast<std::size_t>(offset + t)];
        }
        for (const auto& ren : c.renewables) {
            net_load -=
                ren.forecast_profile[static_cast<std::size_t>(offset + t)];
        }
        const double target = std::max(0.0, net_load) * (1.0 + reserve);
        std::vector<std::uint8_t> mask(ng, 0);
        double capacity = 0.0;
        for (std::size_t g : order) {
            if (capacity >= target) {
                break;
            }
            mask[g] = 1;
            capacity += c.units[g].p_max;
        }
        result.value += env.step(mask).reward;
        result.schedule.push_back(std::move(mask));
    }
    return result;
}

} // namespace qcommit::oracle
