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
 * @file real_time.hpp
 * Real-time VPP correction MDP on top of a frozen day-ahead solution.
 *
 * Thermal outputs stay at their day-ahead values; the action is one bounded
 * MW injection per VPP (clipped, never rejected). Residual system imbalance
 * after the VPP action is closed at the slack by priced load shedding
 * (deficit) or renewable curtailment (surplus). The reward penalizes
 * voltage/branch violations, shedding, and VPP activity.
 */
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qcommit/envs/scenario.hpp"
#include "qcommit/grid/network.hpp"

namespace qcommit::envs {

/// Frozen output of the day-ahead stage: commitment and dispatch per period.
struct DaSolution {
    std::vector<std::vector<std::uint8_t>> e; // [t][unit]
    std::vector<std::vector<double>> p_gen;   // [t][unit]
};

struct RtStepOutcome {
    double reward = 0.0;
    bool done = false;
    grid::NetworkEval eval;
    double shed_mw = 0.0;
    double curtail_mw = 0.0;
    std::vector<double> action; // after clipping
    double vpp_cost = 0.0;      // $
    /// V^D (p.u.) + B^D / base_mva, the per-step violation degree.
    double violation_degree = 0.0;
};

class RealTimeEnv {
  public:
    RealTimeEnv(const grid::GridCase& c, const grid::FlowMatrices& m,
                DaSolution solution, RealizedProfiles realized, int day = 0,
                double reward_scale_override = 0.0)
        : case_(&c), matrices_(&m), solution_(std::move(solution)),
          realized_(std::move(realized)), day_(day),
          reward_scale_(reward_scale_override > 0.0 ? reward_scale_override
                                                    : c.reward_scale()) {
        if (static_cast<int>(solution_.e.size()) != c.periods ||
            static_cast<int>(solution_.p_gen.size()) != c.periods) {
            throw ContractError("RealTimeEnv: day-ahead solution horizon");
        }
        if (day < 0 || day >= c.num_days()) {
            throw ContractError("RealTimeEnv: day index out of range");
        }
        reset();
    }

    const grid::GridCase& grid_case() const { return *case_; }
    double reward_scale() const { return reward_scale_; }
    int t() const { return t_; }
    bool terminal() const { return t_ >= case_->periods; }
    const DaSolution& solution() const { return solution_; }
    const RealizedProfiles& realized() const { return realized_; }

    void reset() { t_ = 0; }

    /// Evaluates a VPP action at the current period without advancing.
    RtStepOutcome evaluate_action(std::span<const double> action) const {
        const auto& c = *case_;
        if (terminal()) {
            throw ContractError("rt_step: episode already finished");
        }
        if (action.size() != c.vpps.size()) {
            throw SizeError("rt_step: action length");
        }
        RtStepOutcome out;
        out.action.assign(action.begin(), action.end());
        for (std::size_t i = 0; i < c.vpps.size(); ++i) {
            const double cap = c.vpps[i].p_vpp_max;
            out.action[i] = std::clamp(out.action[i], -cap, cap);
        }

        const std::size_t nbus = c.buses.size();
        std::vector<double> inj(nbus, 0.0);
        std::vector<double> qinj(nbus, 0.0);
        const auto& e = solution_.e[static_cast<std::size_t>(t_)];
        const auto& pg = solution_.p_gen[static_cast<std::size_t>(t_)];
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            if (!e[g]) {
                continue;
            }
            const auto bus = static_cast<std::size_t>(c.units[g].bus);
            inj[bus] += pg[g];
            qinj[bus] += pg[g] * grid::q_per_p(c.units[g].power_factor);
        }
        for (std::size_t r = 0; r < c.renewables.size(); ++r) {
            const double p = realized_.renewable[r][static_cast<std::size_t>(t_)];
            const auto bus = static_cast<std::size_t>(c.renewables[r].bus);
            inj[bus] += p;
            qinj[bus] += p * grid::q_per_p(c.renewables[r].power_factor);
        }
        for (std::size_t i = 0; i < c.vpps.size(); ++i) {
            const auto bus = static_cast<std::size_t>(c.vpps[i].bus);
            inj[bus] += out.action[i];
            qinj[bus] += out.action[i] * grid::q_per_p(c.vpps[i].power_factor);
            out.vpp_cost += c.vpps[i].c_vpp * std::abs(out.action[i]);
        }
        for (std::size_t l = 0; l < c.loads.size(); ++l) {
            const double p = realized_.load[l][static_cast<std::size_t>(t_)];
            const auto bus = static_cast<std::size_t>(c.loads[l].bus);
            inj[bus] -= p;
            qinj[bus] -= p * grid::q_per_p(c.loads[l].power_factor);
        }

        // Close the balance at the slack; the slack's PTDF column is zero,
        // so this is an accounting entry that prices the residual.
        double residual = 0.0;
        for (double v : inj) {
            residual += v;
        }
        if (residual < 0.0) {
            out.shed_mw = -residual;
            inj[0] += out.shed_mw;
        } else {
            out.curtail_mw = residual;
            inj[0] -= out.curtail_mw;
        }

        out.eval = grid::evaluate_network(c, *matrices_, inj, qinj);
        out.violation_degree =
            out.eval.voltage_violation + out.eval.branch_violation / c.base_mva;
        const double penalty = c.costs.lambda_v * out.eval.voltage_violation +
                               c.costs.lambda_b * out.eval.branch_violation +
                               c.costs.c_ls * out.shed_mw + out.vpp_cost;
        out.reward = -penalty / reward_scale_;
        out.done = (t_ == c.periods - 1);
        return out;
    }

    RtStepOutcome step(std::span<const double> action) {
        RtStepOutcome out = evaluate_action(action);
        t_ += 1;
        return out;
    }

    /**
     * @brief Flattened observation; layout documented in the README.
     *
     * Realized loads and renewables enter as forecast-relative deviations,
     * and the vector carries the per-bus pre-action injection imbalance
     * (generation + renewables - load under the frozen plan) plus its
     * system total. These centered features are linear functions of the
     * state the agent already sees; exposing them directly keeps the
     * deviation magnitudes visible through the encoder's L2 normalization,
     * which would otherwise be dominated by the large constant components.
     */
    std::vector<double> observe() const {
        const auto& c = *case_;
        const int t = std::min(t_, c.periods - 1);
        std::vector<double> obs;
        obs.reserve(static_cast<std::size_t>(obs_dim(c)));
        // Deviations are a few percent of base; scale them to O(1).
        const double dev_scale = 10.0 / c.base_mva;
        const int day0 = day_offset();

        std::vector<double> load_p(c.buses.size(), 0.0);
        std::vector<double> dev_p(c.buses.size(), 0.0);
        std::vector<double> dev_q(c.buses.size(), 0.0);
        for (std::size_t l = 0; l < c.loads.size(); ++l) {
            const double p = realized_.load[l][static_cast<std::size_t>(t)];
            const double fc = c.loads[l].forecast_profile[
                static_cast<std::size_t>(day0 + t)];
            const auto bus = static_cast<std::size_t>(c.loads[l].bus);
            load_p[bus] += p;
            dev_p[bus] += p - fc;
            dev_q[bus] += (p - fc) * grid::q_per_p(c.loads[l].power_factor);
        }
        for (double v : dev_p) {
            obs.push_back(v * dev_scale);
        }
        for (double v : dev_q) {
            obs.push_back(v * dev_scale);
        }
        for (std::size_t r = 0; r < c.renewables.size(); ++r) {
            const double p = realized_.renewable[r][static_cast<std::size_t>(t)];
            const double fc = c.renewables[r].forecast_profile[
                static_cast<std::size_t>(day0 + t)];
            obs.push_back((p - fc) * dev_scale);
            obs.push_back((p - fc) *
                          grid::q_per_p(c.renewables[r].power_factor) *
                          dev_scale);
        }
        const auto& e = solution_.e[static_cast<std::size_t>(t)];
        const auto& pg = solution_.p_gen[static_cast<std::size_t>(t)];
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            obs.push_back(static_cast<double>(e[g]));
        }
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            obs.push_back(pg[g] / std::max(1.0, c.units[g].p_max));
        }

        // Pre-action imbalance per bus and in total.
        std::vector<double> imbalance(c.buses.size(), 0.0);
        for (std::size_t g = 0; g < c.units.size(); ++g) {
            if (e[g]) {
                imbalance[static_cast<std::size_t>(c.units[g].bus)] += pg[g];
            }
        }
        for (std::size_t r = 0; r < c.renewables.size(); ++r) {
            imbalance[static_cast<std::size_t>(c.renewables[r].bus)] +=
                realized_.renewable[r][static_cast<std::size_t>(t)];
        }
        for (std::size_t b = 0; b < c.buses.size(); ++b) {
            imbalance[b] -= load_p[b];
        }
        double total = 0.0;
        for (double v : imbalance) {
            obs.push_back(v * dev_scale);
            total += v;
        }
        obs.push_back(total * dev_scale);

        obs.push_back(static_cast<double>(t_) /
                      static_cast<double>(c.periods));
        return obs;
    }

    static int obs_dim(const grid::GridCase& c) {
        return 3 * static_cast<int>(c.buses.size()) +
               2 * static_cast<int>(c.renewables.size()) +
               2 * static_cast<int>(c.units.size()) + 2;
    }

  private:
    int day_offset() const { return day_ * case_->periods; }

    const grid::GridCase* case_;
    const grid::FlowMatrices* matrices_;
    DaSolution solution_;
    RealizedProfiles realized_;
    int day_ = 0;
    double reward_scale_;
    int t_ = 0;
};

} // namespace qcommit::envs
