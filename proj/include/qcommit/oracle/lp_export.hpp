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
 * @file lp_export.hpp
 * Writes the day-ahead instance as a CPLEX-style LP-format MILP so results
 * can be compared against an external solver offline. The model mirrors the
 * environment semantics: system-wide balance with shedding and curtailment
 * slack, commitment-linked output bounds, unconditional ramp limits from
 * the previous period, and startup/shutdown transition variables.
 */
#pragma once

#include <sstream>
#include <string>

#include "qcommit/grid/case.hpp"

namespace qcommit::oracle {

inline std::string lp_export_day_ahead(const grid::GridCase& c, int day = 0) {
    const int T = c.periods;
    const int ng = static_cast<int>(c.units.size());
    const int offset = day * T;
    std::ostringstream lp;
    lp << "\\ day-ahead unit commitment instance: " << c.name << ", day "
       << day << "\n";
    lp << "Minimize\n obj:";
    for (int t = 0; t < T; ++t) {
        for (int g = 0; g < ng; ++g) {
            lp << " + " << c.units[static_cast<std::size_t>(g)].c_g << " p_"
               << g << "_" << t;
            lp << " + " << c.units[static_cast<std::size_t>(g)].c_g_su
               << " su_" << g << "_" << t;
        }
        lp << " + " << c.costs.c_ls << " sh_" << t;
    }
    lp << "\nSubject To\n";
    for (int t = 0; t < T; ++t) {
        double net_load = 0.0;
        for (const auto& load : c.loads) {
            net_load +=
                load.forecast_profile[static_cast<std::size_t>(offset + t)];
        }
        for (const auto& ren : c.renewables) {
            net_load -=
                ren.forecast_profile[static_cast<std::size_t>(offset + t)];
        }
        lp << " bal_" << t << ":";
        for (int g = 0; g < ng; ++g) {
            lp << " + p_" << g << "_" << t;
        }
        lp << " + sh_" << t << " - cu_" << t << " = " << net_load << "\n";
        for (int g = 0; g < ng; ++g) {
            const auto& u = c.units[static_cast<std::size_t>(g)];
            lp << " pmax_" << g << "_" << t << ": p_" << g << "_" << t
               << " - " << u.p_max << " e_" << g << "_" << t << " <= 0\n";
            lp << " pmin_" << g << "_" << t << ": p_" << g << "_" << t
               << " - " << u.p_min << " e_" << g << "_" << t << " >= 0\n";
            if (t == 0) {
                const double prev = u.initial_status ? u.p_min : 0.0;
                lp << " rup_" << g << "_0: p_" << g << "_0 <= "
                   << (prev + u.r_u) << "\n";
                lp << " rdn_" << g << "_0: p_" << g << "_0 >= "
                   << (prev + u.r_d) << "\n";
                lp << " trans_" << g << "_0: e_" << g << "_0 - su_" << g
                   << "_0 + sd_" << g << "_0 = "
                   << (u.initial_status ? 1 : 0) << "\n";
            } else {
                lp << " rup_" << g << "_" << t << ": p_" << g << "_" << t
                   << " - p_" << g << "_" << (t - 1) << " <= " << u.r_u
                   << "\n";
                lp << " rdn_" << g << "_" << t << ": p_" << g << "_" << t
                   << " - p_" << g << "_" << (t - 1) << " >= " << u.r_d
                   << "\n";
                lp << " trans_" << g << "_" << t << ": e_" << g << "_" << t
                   << " - e_" << g << "_" << (t - 1) << " - su_" << g << "_"
                   << t << " + sd_" << g << "_" << t << " = 0\n";
            }
        }
    }
    lp << "Bounds\n";
    for (int t = 0; t < T; ++t) {
        for (int g = 0; g < ng; ++g) {
            lp << " 0 <= p_" << g << "_" << t << " <= "
               << c.units[static_cast<std::size_t>(g)].p_max << "\n";
        }
        lp << " 0 <= sh_" << t << "\n 0 <= cu_" << t << "\n";
    }
    lp << "Binary\n";
    for (int t = 0; t < T; ++t) {
        for (int g = 0; g < ng; ++g) {
            lp << " e_" << g << "_" << t << " su_" << g << "_" << t << " sd_"
               << g << "_" << t << "\n";
        }
    }
    lp << "End\n";
    return lp.str();
}

} // namespace qcommit::oracle
