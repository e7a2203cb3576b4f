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
 * @file dqn.hpp
 * Deep Q-learning over commitment vectors, generic over the function
 * approximator (quantum network or classical MLP).
 *
 * Small unit counts enumerate all 2^u commitment vectors as actions; larger
 * cases factorize into per-unit heads (two Q outputs per unit sharing the
 * trunk, with independent per-unit argmax). Updates use the double-DQN
 * target: the online network picks the successor action, the target network
 * evaluates it.
 */
#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "qcommit/rl/optimizer.hpp"
#include "qcommit/rl/replay_buffer.hpp"

namespace qcommit::rl {

struct EpsSchedule {
    double eps_start = 1.0;
    double eps_end = 0.05;
    long decay_steps = 1000;

    /// Linear decay; constant eps_end after decay_steps.
    double at(long step) const {
        if (step >= decay_steps) {
            return eps_end;
        }
        const double frac =
            static_cast<double>(step) / static_cast<double>(decay_steps);
        return eps_start + (eps_end - eps_start) * frac;
    }
};

/// Mapping between logical commitment actions (bitmask over units) and the
/// model's Q outputs.
class UcActionCodec {
  public:
    static UcActionCodec enumerated(int units) {
        if (units < 1 || units > 6) {
            throw GuardError("UcActionCodec: enumerated mode needs 1..6 units");
        }
        return UcActionCodec(units, false);
    }
    static UcActionCodec factorized(int units) {
        if (units < 1 || units > 62) {
            throw GuardError("UcActionCodec: unit count out of range");
        }
        return UcActionCodec(units, true);
    }
    /// Enumerates up to 6 units, factorizes beyond.
    static UcActionCodec auto_mode(int units, bool force_factorized = false) {
        return (units > 6 || force_factorized) ? factorized(units)
                                               : enumerated(units);
    }

    int units() const { return units_; }
    bool is_factorized() const { return factorized_; }
    long num_actions() const { return 1L << units_; }
    int model_outputs() const {
        return factorized_ ? 2 * units_ : (1 << units_);
    }

    /// Q(s, a) under this output layout.
    double q_of(std::span<const double> q, long action) const {
        if (!factorized_) {
            return q[static_cast<std::size_t>(action)];
        }
        double acc = 0.0;
        for (int u = 0; u < units_; ++u) {
            const long bit = (action >> u) & 1;
            acc += q[static_cast<std::size_t>(2 * u + bit)];
        }
        return acc;
    }

    /// argmax_a Q(s, a); ties resolve to the lowest action index.
    long greedy(std::span<const double> q) const {
        if (!factorized_) {
            long best = 0;
            for (long a = 1; a < num_actions(); ++a) {
                if (q[static_cast<std::size_t>(a)] >
                    q[static_cast<std::size_t>(best)]) {
                    best = a;
                }
            }
            return best;
        }
        long mask = 0;
        for (int u = 0; u < units_; ++u) {
            if (q[static_cast<std::size_t>(2 * u + 1)] >
                q[static_cast<std::size_t>(2 * u)]) {
                mask |= (1L << u);
            }
        }
        return mask;
    }

    /// Scatters dL/dQ(s,a) into the model-output gradient vector.
    void add_downstream(long action, double value,
                        std::span<double> downstream) const {
        if (!factorized_) {
            downstream[static_cast<std::size_t>(action)] += value;
            return;
        }
        for (int u = 0; u < units_; ++u) {
            const long bit = (action >> u) & 1;
            downstream[static_cast<std::size_t>(2 * u + bit)] += value;
        }
    }

    std::vector<std::uint8_t> to_mask(long action) const {
        std::vector<std::uint8_t> mask(static_cast<std::size_t>(units_));
        for (int u = 0; u < units_; ++u) {
            mask[static_cast<std::size_t>(u)] =
                static_cast<std::uint8_t>((action >> u) & 1);
        }
        return mask;
    }

  private:
    UcActionCodec(int units, bool factorized)
        : units_(units), factorized_(factorized) {}
    int units_;
    bool factorized_;
};

struct DqnConfig {
    int batch_size = 32;
    double gamma = 0.99;
    EpsSchedule eps;
    long target_sync = 50; // environment steps between hard syncs
};

template <class Model> class DqnAgent {
  public:
    DqnAgent(Model model, UcActionCodec codec, Optimizer opt, DqnConfig cfg)
        : online_(std::move(model)), target_(online_), codec_(codec),
          opt_(std::move(opt)), cfg_(cfg) {}

    const Model& online() const { return online_; }
    Model& online() { return online_; }
    const Model& target() const { return target_; }
    const UcActionCodec& codec() const { return codec_; }
    const DqnConfig& config() const { return cfg_; }
    Optimizer& optimizer() { return opt_; }

    /// Epsilon-greedy action selection at the given global step.
    long select_action(std::span<const double> state, long step, Rng& rng) {
        const double eps = cfg_.eps.at(step);
        if (rng.uniform() < eps) {
            return static_cast<long>(rng.uniform_int(
                static_cast<int>(codec_.num_actions())));
        }
        return greedy_action(state);
    }

    long greedy_action(std::span<const double> state) const {
        const auto q = online_.forward(state);
        return codec_.greedy(q);
    }

    /// Double-DQN target y = r + gamma (1-done) Q_target(s', argmax_a
    /// Q_online(s', a)) for one transition.
    double td_target(const Transition<long>& tr) const {
        double y = tr.reward;
        if (!tr.done) {
            const auto q_next = online_.forward(tr.next_state);
            const long a_star = codec_.greedy(q_next);
            const auto q_tgt = target_.forward(tr.next_state);
            y += cfg_.gamma * codec_.q_of(q_tgt, a_star);
        }
        return y;
    }

    /// Loss mean (y - Q(s,a))^2 over the batch and its semi-gradient
    /// (targets held constant) with respect to the online parameters.
    std::pair<double, std::vector<double>>
    loss_and_grad(const std::vector<const Transition<long>*>& batch) const {
        if (batch.empty()) {
            throw ContractError("dqn_update: empty batch");
        }
        const double inv_b = 1.0 / static_cast<double>(batch.size());
        std::vector<double> grad(online_.params().size(), 0.0);
        double loss = 0.0;
        for (const auto* tr : batch) {
            const auto q = online_.forward(tr->state);
            const double q_sa = codec_.q_of(q, tr->action);
            const double err = q_sa - td_target(*tr);
            loss += err * err;

            std::vector<double> downstream(
                static_cast<std::size_t>(codec_.model_outputs()), 0.0);
            codec_.add_downstream(tr->action, 2.0 * err * inv_b, downstream);
            const auto g = online_.param_grads(tr->state, downstream);
            for (std::size_t i = 0; i < grad.size(); ++i) {
                grad[i] += g[i];
            }
        }
        return {loss * inv_b, std::move(grad)};
    }

    /// One batched TD update; returns the pre-update loss.
    double update(const std::vector<const Transition<long>*>& batch) {
        auto [loss, grad] = loss_and_grad(batch);
        opt_.step(online_.params(), grad);
        return loss;
    }

    /// Hard copy of the online parameters into the target network.
    void sync_target() { target_.params() = online_.params(); }

  private:
    Model online_;
    Model target_;
    UcActionCodec codec_;
    Optimizer opt_;
    DqnConfig cfg_;
};

} // namespace qcommit::rl
