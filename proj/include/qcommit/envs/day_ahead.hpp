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
 * @file day_ahead.hpp
 * Day-ahead commitment MDP.
 *
 * State: per-bus forecast load P/Q and per-renewable forecast P/Q for the
 * current period, plus the previous commitment and dispatch (which the ramp
 * and transition constraints make part of the Markov state) and the period
 * index. Action: one on/off bit per unit. Reward: -(startup + fuel + shed)
 * scaled by the case reward scale. Episodes run exactly T steps.
 */
#pragma once

#include <span>
#include <vector>

#include "qcommit/grid/dispatch.hpp"

namespace qcommit::envs {

struct DayAheadState {
    int t = 0;
    int horizon = 0;
    std::vector<double> load_p;  // per bus, MW
    std::vector<double> load_q;  // per bus, MVAr
    std::vector<double> renew_p; // per renewable, MW
    std::vector<double> renew_q; // per renewable, MVAr
    std::vector<std::uint8_t> e_prev;
    std::vector<double> prev_p;

    bool terminal() const { return t >= horizon; }
};

struct DaStepOutcome {
    double reward = 0.0;
    bool done = false;
    grid::StageCosts costs;
    grid::DispatchResult dispatch;
    std::vector<std::uint8_t> startup;
    std::vector<std::uint8_t> shutdown;
};

class DayAheadEnv {
  public:
    /// `seed` is kept for interface symmetry; day-ahead forecasts are
    /// deterministic so it does not influence the trajectory.
    DayAheadEnv(const grid::GridCase& c, int day, std::uint64_t seed = 0,
                double reward_scale_override = 0.0)
        : case_(&c), day_(day), seed_(seed),
          reward_scale_(reward_scale_override > 0.0 ? reward_scale_override
                                                    : c.reward_scale()) {
        if (day < 0 || day >= c.num_days()) {
            throw ContractError("da_reset: day index out of range");
        }
        reset();
    }

    const grid::GridCase& grid_case() const { return *case_; }
    int day() const { return day_; }
    double reward_scale() const { return reward_scale_; }

    const DayAheadState& reset() {
        const auto& c = *case_;
        state_ = DayAheadState{};
        state_.t = 0;
        state_.horizon = c.periods;
        state_.e_prev.resize(c.units.size());
        state_.prev_p.resize(c.units.size());
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            state_.e_prev[g] = c.units[g].initial_status ? 1 : 0;
            state_.prev_p[g] =
                c.units[g].initial_status ? c.units[g].p_min : 0.0;
        }
        fill_forecast(0);
        return state_;
    }

    const DayAheadState& state() const { return state_; }

    /// One commitment decision. Throws ContractError on a terminal state.
    DaStepOutcome step(std::span<const std::uint8_t> e) {
        const auto& c = *case_;
        if (state_.terminal()) {
            throw ContractError("da_step: episode already finished");
        }
        if (e.size() != c.units.size()) {
            throw SizeError("da_step: action length");
        }

        DaStepOutcome out;
        out.startup.resize(c.units.size());
        out.shutdown.resize(c.units.size());
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            out.startup[g] = (e[g] && !state_.e_prev[g]) ? 1 : 0;
            out.shutdown[g] = (!e[g] && state_.e_prev[g]) ? 1 : 0;
        }

        // Net forecast load per bus and renewable availability.
        std::vector<double> net_load = state_.load_p;
        for (std::size_t r = 0; r < c.renewables.size(); ++r) {
            net_load[static_cast<std::size_t>(c.renewables[r].bus)] -=
                state_.renew_p[r];
        }
        out.dispatch = grid::merit_order_dispatch(c, e, state_.prev_p,
                                                  net_load, state_.renew_p);
        out.dispatch.startup_flags = out.startup;
        out.dispatch.shutdown_flags = out.shutdown;
        out.costs = grid::stage_costs(c, out.dispatch, state_.e_prev, e);
        out.reward = -out.costs.total() / reward_scale_;
        out.done = (state_.t == state_.horizon - 1);

        state_.e_prev.assign(e.begin(), e.end());
        state_.prev_p = out.dispatch.p_gen;
        state_.t += 1;
        fill_forecast(std::min(state_.t, state_.horizon - 1));
        return out;
    }

    /// Flattened observation; layout documented in the README.
    std::vector<double> observe() const {
        const auto& c = *case_;
        std::vector<double> obs;
        obs.reserve(static_cast<std::size_t>(obs_dim(c)));
        const double inv_base = 1.0 / c.base_mva;
        for (double v : state_.load_p) {
            obs.push_back(v * inv_base);
        }
        for (double v : state_.load_q) {
            obs.push_back(v * inv_base);
        }
        for (double v : state_.renew_p) {
            obs.push_back(v * inv_base);
        }
        for (double v : state_.renew_q) {
            obs.push_back(v * inv_base);
        }
        for (std::uint8_t v : state_.e_prev) {
            obs.push_back(static_cast<double>(v));
        }
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            obs.push_back(state_.prev_p[g] / std::max(1.0, c.units[g].p_max));
        }
        obs.push_back(static_cast<double>(state_.t) /
                      static_cast<double>(state_.horizon));
        return obs;
    }

    static int obs_dim(const grid::GridCase& c) {
        return 2 * static_cast<int>(c.buses.size()) +
               2 * static_cast<int>(c.renewables.size()) +
               2 * static_cast<int>(c.units.size()) + 1;
    }

  private:
    void fill_forecast(int t) {
        const auto& c = *case_;
        const int row = day_ * c.periods + t;
        state_.load_p.assign(c.buses.size(), 0.0);
        state_.load_q.assign(c.buses.size(), 0.0);
        for (const auto& load : c.loads) {
            const double p =
                load.forecast_profile[static_cast<std::size_t>(row)];
            state_.load_p[static_cast<std::size_t>(load.bus)] += p;
            state_.load_q[static_cast<std::size_t>(load.bus)] +=
                p * grid::q_per_p(load.power_factor);
        }
        state_.renew_p.resize(c.renewables.size());
        state_.renew_q.resize(c.renewables.size());
        for (std::size_t r = 0; r < c.renewables.size(); ++r) {
            const double p = c.renewables[r].forecast_profile
                [static_cast<std::size_t>(row)];
            state_.renew_p[r] = p;
            state_.renew_q[r] = p * grid::q_per_p(c.renewables[r].power_factor);
        }
    }

    const grid::GridCase* case_;
    int day_;
    std::uint64_t seed_;
    double reward_scale_;
    DayAheadState state_;
};

} // namespace qcommit::envs
