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
 * @file sac.hpp
 * Soft actor-critic with twin classical critics and a pluggable
 * (quantum or classical) squashed-Gaussian actor.
 *
 * Critic targets default to the clipped form min(Q_hat1, Q_hat2), which is
 * what keeps the twin critics from overestimating; the literal per-critic
 * bootstrap is available behind `clipped_double_q = false`. Targets track
 * the critics by Polyak averaging. Critic inputs are the state concatenated
 * with the pre-rescale squashed action (each component in [-1, 1]).
 */
#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "qcommit/oracle/mlp.hpp"
#include "qcommit/rl/optimizer.hpp"
#include "qcommit/rl/replay_buffer.hpp"

namespace qcommit::rl {

struct SacConfig {
    int batch_size = 64;
    double gamma = 0.99;
    double tau = 0.005;       // Polyak coefficient
    double alpha_temp = 0.05; // entropy temperature (fixed)
    bool clipped_double_q = true;
};

/// SAC action stored in replay: the clipped MW vector.
using RtTransition = Transition<std::vector<double>>;

template <class Actor> class SacAgent {
  public:
    SacAgent(Actor actor, oracle::Mlp critic1, oracle::Mlp critic2,
             Optimizer actor_opt, Optimizer critic1_opt, Optimizer critic2_opt,
             SacConfig cfg)
        : actor_(std::move(actor)), critic1_(std::move(critic1)),
          critic2_(std::move(critic2)), target1_(critic1_),
          target2_(critic2_), actor_opt_(std::move(actor_opt)),
          critic1_opt_(std::move(critic1_opt)),
          critic2_opt_(std::move(critic2_opt)), cfg_(cfg) {}

    const Actor& actor() const { return actor_; }
    Actor& actor() { return actor_; }
    const oracle::Mlp& critic1() const { return critic1_; }
    const oracle::Mlp& critic2() const { return critic2_; }
    const oracle::Mlp& target1() const { return target1_; }
    const oracle::Mlp& target2() const { return target2_; }
    oracle::Mlp& critic1() { return critic1_; }
    oracle::Mlp& critic2() { return critic2_; }
    oracle::Mlp& target1() { return target1_; }
    oracle::Mlp& target2() { return target2_; }
    const SacConfig& config() const { return cfg_; }
    Optimizer& actor_optimizer() { return actor_opt_; }
    Optimizer& critic1_optimizer() { return critic1_opt_; }
    Optimizer& critic2_optimizer() { return critic2_opt_; }

    /// Samples an action (MW); deterministic mean action when `noise_rng`
    /// is null.
    std::vector<double> act(std::span<const double> state, Rng* noise_rng) {
        if (noise_rng == nullptr) {
            return actor_.forward(state, {}).action;
        }
        std::vector<double> noise(
            static_cast<std::size_t>(actor_.action_dim()));
        for (auto& n : noise) {
            n = noise_rng->normal();
        }
        return actor_.forward(state, noise).action;
    }

    struct CriticLossGrads {
        double loss1 = 0.0;
        double loss2 = 0.0;
        std::vector<double> grad1;
        std::vector<double> grad2;
    };

    /**
     * @brief Twin-critic losses (1/2 mean squared TD error each) and their
     * gradients, targets held fixed. Successor actions are sampled from the
     * current actor via `rng`.
     */
    CriticLossGrads
    critic_loss_and_grads(const std::vector<const RtTransition*>& batch,
                          Rng& rng) const {
        if (batch.empty()) {
            throw ContractError("sac_critic_update: empty batch");
        }
        const double inv_b = 1.0 / static_cast<double>(batch.size());
        CriticLossGrads out;
        out.grad1.assign(critic1_.params().size(), 0.0);
        out.grad2.assign(critic2_.params().size(), 0.0);
        std::vector<double> noise(
            static_cast<std::size_t>(actor_.action_dim()));
        for (const auto* tr : batch) {
            double y1 = tr->reward;
            double y2 = tr->reward;
            if (!tr->done) {
                for (auto& n : noise) {
                    n = rng.normal();
                }
                const auto next_ev = actor_.forward(tr->next_state, noise);
                const auto xin = critic_input(tr->next_state,
                                              next_ev.squashed);
                const double q1 = target1_.forward(xin)[0];
                const double q2 = target2_.forward(xin)[0];
                const double entropy_bonus =
                    -cfg_.alpha_temp * next_ev.log_prob;
                if (cfg_.clipped_double_q) {
                    const double boot = std::min(q1, q2) + entropy_bonus;
                    y1 += cfg_.gamma * boot;
                    y2 += cfg_.gamma * boot;
                } else {
                    y1 += cfg_.gamma * (q1 + entropy_bonus);
                    y2 += cfg_.gamma * (q2 + entropy_bonus);
                }
            }
            const auto xin = critic_input(tr->state, normalize(tr->action));
            const double e1 = critic1_.forward(xin)[0] - y1;
            const double e2 = critic2_.forward(xin)[0] - y2;
            out.loss1 += 0.5 * e1 * e1 * inv_b;
            out.loss2 += 0.5 * e2 * e2 * inv_b;
            const std::vector<double> d1{e1 * inv_b};
            const std::vector<double> d2{e2 * inv_b};
            accumulate(out.grad1, critic1_.param_grads(xin, d1));
            accumulate(out.grad2, critic2_.param_grads(xin, d2));
        }
        return out;
    }

    /// Twin-critic TD update; returns the pre-update losses.
    std::pair<double, double>
    critic_update(const std::vector<const RtTransition*>& batch, Rng& rng) {
        auto lg = critic_loss_and_grads(batch, rng);
        critic1_opt_.step(critic1_.params(), lg.grad1);
        critic2_opt_.step(critic2_.params(), lg.grad2);
        return {lg.loss1, lg.loss2};
    }

    /**
     * @brief Policy loss mean[ alpha log pi(a|s) - min_i Q_i(s,a) ] with
     * reparameterized actions and its gradient, critics held fixed.
     */
    std::pair<double, std::vector<double>>
    actor_loss_and_grad(const std::vector<const RtTransition*>& batch,
                        Rng& rng) const {
        if (batch.empty()) {
            throw ContractError("sac_actor_update: empty batch");
        }
        const double inv_b = 1.0 / static_cast<double>(batch.size());
        std::vector<double> grad(actor_.params().size(), 0.0);
        double loss = 0.0;
        std::vector<double> noise(
            static_cast<std::size_t>(actor_.action_dim()));
        const int adim = actor_.action_dim();
        for (const auto* tr : batch) {
            for (auto& n : noise) {
                n = rng.normal();
            }
            const auto ev = actor_.forward(tr->state, noise);
            const auto xin = critic_input(tr->state, ev.squashed);
            const double q1 = critic1_.forward(xin)[0];
            const double q2 = critic2_.forward(xin)[0];
            const bool use1 = q1 <= q2;
            loss += cfg_.alpha_temp * ev.log_prob - std::min(q1, q2);

            const std::vector<double> down{1.0};
            const auto dxin = use1 ? critic1_.input_grads(xin, down)
                                   : critic2_.input_grads(xin, down);
            // dL/d action (MW) = -dQ/da' * da'/da, with a' the squashed
            // coordinate the critic consumes.
            std::vector<double> d_action(static_cast<std::size_t>(adim));
            for (int i = 0; i < adim; ++i) {
                const double halfspan = 0.5 * (actor_.action_high()[i] -
                                               actor_.action_low()[i]);
                const double dq_da =
                    dxin[tr->state.size() + static_cast<std::size_t>(i)];
                d_action[static_cast<std::size_t>(i)] =
                    -dq_da / std::max(halfspan, 1e-12) * inv_b;
            }
            const auto g = actor_.param_grads(tr->state, noise, d_action,
                                              cfg_.alpha_temp * inv_b);
            accumulate(grad, g);
        }
        return {loss * inv_b, std::move(grad)};
    }

    /// Policy update; returns the pre-update loss.
    double actor_update(const std::vector<const RtTransition*>& batch,
                        Rng& rng) {
        auto [loss, grad] = actor_loss_and_grad(batch, rng);
        actor_opt_.step(actor_.params(), grad);
        return loss;
    }

    /// Polyak smoothing of both critic targets.
    void polyak() {
        blend(target1_.params(), critic1_.params());
        blend(target2_.params(), critic2_.params());
    }

    /// State + squashed action, the critics' input layout.
    static std::vector<double> critic_input(std::span<const double> state,
                                            std::span<const double> squashed) {
        std::vector<double> xin(state.begin(), state.end());
        xin.insert(xin.end(), squashed.begin(), squashed.end());
        return xin;
    }

    /// MW action back to the squashed [-1, 1] coordinates.
    std::vector<double> normalize(std::span<const double> action_mw) const {
        std::vector<double> a(action_mw.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double lo = actor_.action_low()[i];
            const double hi = actor_.action_high()[i];
            const double halfspan = std::max(0.5 * (hi - lo), 1e-12);
            a[i] = std::clamp((action_mw[i] - lo) / halfspan - 1.0, -1.0, 1.0);
        }
        return a;
    }

  private:
    static void accumulate(std::vector<double>& into,
                           const std::vector<double>& g) {
        for (std::size_t i = 0; i < into.size(); ++i) {
            into[i] += g[i];
        }
    }

    void blend(std::vector<double>& target,
               const std::vector<double>& online) const {
        for (std::size_t i = 0; i < target.size(); ++i) {
            target[i] = cfg_.tau * online[i] + (1.0 - cfg_.tau) * target[i];
        }
    }

    Actor actor_;
    oracle::Mlp critic1_, critic2_;
    oracle::Mlp target1_, target2_;
    Optimizer actor_opt_, critic1_opt_, critic2_opt_;
    SacConfig cfg_;
};

} // namespace qcommit::rl
