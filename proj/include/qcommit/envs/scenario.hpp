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
 * @file scenario.hpp
 * Real-time uncertainty scenarios: multiplicative truncated-Gaussian noise
 * applied independently per entity and period.
 *
 * Every drawn value has its own derived stream keyed by
 * (seed, day, scenario, kind, entity, period), so scenario k of day d is
 * reproducible regardless of draw order.
 */
#pragma once

#include <vector>

#include "qcommit/grid/case.hpp"
#include "qcommit/rng.hpp"

namespace qcommit::envs {

struct ScenarioSigmas {
    double load = 0.1;
    double pv = 0.15;
    double wind = 0.2;
};

struct RealizedProfiles {
    std::vector<std::vector<double>> load;      // [load index][t in day]
    std::vector<std::vector<double>> renewable; // [renewable index][t in day]
};

class ScenarioGenerator {
  public:
    ScenarioGenerator(ScenarioSigmas sigmas, std::uint64_t seed)
        : sigmas_(sigmas), seed_(seed) {}

    const ScenarioSigmas& sigmas() const { return sigmas_; }
    std::uint64_t seed() const { return seed_; }

    /// Realized profiles for scenario `k` of `day`. Loads stay nonnegative;
    /// renewables are clamped to [0, 1.2x forecast].
    RealizedProfiles sample(const grid::GridCase& c, int day, int k) const {
        if (day < 0 || day >= c.num_days()) {
            throw ContractError("sample_scenario: day out of range");
        }
        RealizedProfiles out;
        out.load.resize(c.loads.size());
        out.renewable.resize(c.renewables.size());
        const int offset = day * c.periods;
        for (std::size_t i = 0; i < c.loads.size(); ++i) {
            out.load[i].resize(static_cast<std::size_t>(c.periods));
            for (int t = 0; t < c.periods; ++t) {
                const double fc =
                    c.loads[i].forecast_profile[static_cast<std::size_t>(
                        offset + t)];
                const double eps =
                    draw(day, k, 1, static_cast<int>(i), t, sigmas_.load);
                out.load[i][static_cast<std::size_t>(t)] =
                    std::max(0.0, fc * (1.0 + eps));
            }
        }
        for (std::size_t i = 0; i < c.renewables.size(); ++i) {
            const bool is_pv = c.renewables[i].kind == "pv";
            const double sigma = is_pv ? sigmas_.pv : sigmas_.wind;
            const int kind_tag = is_pv ? 2 : 3;
            out.renewable[i].resize(static_cast<std::size_t>(c.periods));
            for (int t = 0; t < c.periods; ++t) {
                const double fc =
                    c.renewables[i].forecast_profile[static_cast<std::size_t>(
                        offset + t)];
                const double eps =
                    draw(day, k, kind_tag, static_cast<int>(i), t, sigma);
                double v = fc * (1.0 + eps);
                v = std::clamp(v, 0.0, 1.2 * fc);
                out.renewable[i][static_cast<std::size_t>(t)] = v;
            }
        }
        return out;
    }

  private:
    double draw(int day, int k, int kind, int entity, int t,
                double sigma) const {
        if (sigma == 0.0) {
            return 0.0;
        }
        std::uint64_t s = derive_seed(seed_, 0x5ce0u);
        s = derive_seed(s, static_cast<std::uint64_t>(day));
        s = derive_seed(s, static_cast<std::uint64_t>(k));
        s = derive_seed(s, static_cast<std::uint64_t>(kind) * 100003u +
                               static_cast<std::uint64_t>(entity));
        s = derive_seed(s, static_cast<std::uint64_t>(t));
        Rng rng(s);
        return sigma * rng.truncated_normal(3.0);
    }

    ScenarioSigmas sigmas_;
    std::uint64_t seed_;
};

} // namespace qcommit::envs
