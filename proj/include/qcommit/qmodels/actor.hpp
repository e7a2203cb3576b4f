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
 * @file actor.hpp
 * Continuous-control policy heads: a tanh-squashed Gaussian whose mean is
 * produced either by the quantum trunk (per-qubit <Z> on the first
 * action_dim qubits) or by a classical network.
 *
 * The log-density of a sample is the Gaussian log-density of the pre-squash
 * variable minus sum_d log(1 - tanh^2(u_d) + 1e-6); actions are affinely
 * rescaled from [-1, 1] to [action_low, action_high].
 */
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qcommit/params.hpp"
#include "qcommit/qmodels/trunk.hpp"
#include "qcommit/rng.hpp"

namespace qcommit::qmodels {

inline constexpr double kSquashEps = 1e-6;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

struct ActorEval {
    std::vector<double> mu;       // pre-squash mean, each in [-1, 1]
    std::vector<double> u;        // pre-squash sample (mu if no noise)
    std::vector<double> squashed; // tanh(u)
    std::vector<double> action;   // affine map to [low, high], MW
    double log_prob = 0.0;
};

namespace detail {

/// Squashed-Gaussian head given the mean vector; noise may be empty for
/// deterministic evaluation.
inline ActorEval squash_forward(std::span<const double> mu,
                                std::span<const double> log_std,
                                std::span<const double> noise,
                                std::span<const double> low,
                                std::span<const double> high) {
    const std::size_t d = mu.size();
    if (!noise.empty() && noise.size() != d) {
        throw SizeError("actor_forward: noise length mismatch");
    }
    ActorEval ev;
    ev.mu.assign(mu.begin(), mu.end());
    ev.u.resize(d);
    ev.squashed.resize(d);
    ev.action.resize(d);
    ev.log_prob = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        const double sigma = std::exp(log_std[i]);
        const double eps = noise.empty() ? 0.0 : noise[i];
        ev.u[i] = mu[i] + sigma * eps;
        const double t = std::tanh(ev.u[i]);
        ev.squashed[i] = t;
        ev.action[i] = low[i] + 0.5 * (t + 1.0) * (high[i] - low[i]);
        ev.log_prob += -0.5 * eps * eps - log_std[i] - kLogSqrt2Pi;
        ev.log_prob -= std::log(1.0 - t * t + kSquashEps);
    }
    return ev;
}

struct SquashBackward {
    std::vector<double> dL_dmu;      // chain into the mean head
    std::vector<double> dL_dlog_std; // direct log-std gradient
};

/// Backward pass of the squashed head for a loss
/// L = sum_d d_action[d] * action_d + d_logprob * log_prob,
/// with the noise held fixed (reparameterized path).
inline SquashBackward squash_backward(const ActorEval& ev,
                                      std::span<const double> log_std,
                                      std::span<const double> noise,
                                      std::span<const double> low,
                                      std::span<const double> high,
                                      std::span<const double> d_action,
                                      double d_logprob) {
    const std::size_t d = ev.mu.size();
    SquashBackward gr;
    gr.dL_dmu.assign(d, 0.0);
    gr.dL_dlog_std.assign(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        const double t = ev.squashed[i];
        const double c = 1.0 - t * t;
        const double halfspan = 0.5 * (high[i] - low[i]);
        const double da = d_action.empty() ? 0.0 : d_action[i];
        // d log_prob / d u = 2 t c / (c + eps); d action / d u = halfspan*c
        const double dL_du =
            da * halfspan * c + d_logprob * (2.0 * t * c / (c + kSquashEps));
        gr.dL_dmu[i] = dL_du;
        const double sigma = std::exp(log_std[i]);
        const double eps = noise.empty() ? 0.0 : noise[i];
        gr.dL_dlog_std[i] = dL_du * sigma * eps - d_logprob;
    }
    return gr;
}

} // namespace detail

struct QuantumActorDims {
    int in_dim = 1;
    int num_qubits = 1;
    int num_layers = 1;
    int action_dim = 1;
    bool per_qubit_theta = false;
};

/**
 * @brief Quantum policy head: the trunk's per-qubit <Z> features feed a
 * trainable linear readout whose tanh is the pre-squash mean, so the mean
 * stays in [-1, 1] while every qubit contributes to every action dimension.
 */
class QuantumActor {
  public:
    QuantumActor() : circuit_(1) {}

    QuantumActor(const QuantumActorDims& dims, std::vector<double> low,
                 std::vector<double> high)
        : dims_(dims),
          ansatz_{dims.num_qubits, dims.num_layers, dims.per_qubit_theta},
          circuit_(build_vqc(ansatz_)), low_(std::move(low)),
          high_(std::move(high)) {
        if (dims.action_dim < 1) {
            throw SizeError("QuantumActor: action_dim must be positive");
        }
        if (static_cast<int>(low_.size()) != dims.action_dim ||
            static_cast<int>(high_.size()) != dims.action_dim) {
            throw SizeError("QuantumActor: bounds length mismatch");
        }
        const auto nq = static_cast<std::size_t>(dims.num_qubits);
        const auto ni = static_cast<std::size_t>(dims.in_dim);
        const auto na = static_cast<std::size_t>(dims.action_dim);
        const auto nt =
            static_cast<std::size_t>(ansatz_.num_trainable_slots());
        std::size_t off = 0;
        theta_ = {off, nt};
        off += nt;
        readout_w_ = {off, nq * na};
        off += nq * na;
        readout_b_ = {off, na};
        off += na;
        enc_w_ = {off, ni * nq};
        off += ni * nq;
        enc_b_ = {off, nq};
        off += nq;
        log_std_ = {off, na};
        off += na;
        params_.assign(off, 0.0);
        for (double& v : log_std_.view(params_)) {
            v = -1.0; // sigma ~0.37 at init
        }
    }

    static QuantumActor init(const QuantumActorDims& dims,
                             std::vector<double> low,
                             std::vector<double> high, Rng& rng) {
        QuantumActor actor(dims, std::move(low), std::move(high));
        for (double& v : actor.theta_.view(actor.params_)) {
            v = rng.uniform(-0.2, 0.2);
        }
        for (double& v : actor.readout_w_.view(actor.params_)) {
            v = rng.uniform(-0.3, 0.3);
        }
        const double bound =
            std::sqrt(6.0 / (dims.in_dim + dims.num_qubits));
        for (double& v : actor.enc_w_.view(actor.params_)) {
            v = rng.uniform(-bound, bound);
        }
        return actor;
    }

    const QuantumActorDims& dims() const { return dims_; }
    int in_dim() const { return dims_.in_dim; }
    int action_dim() const { return dims_.action_dim; }
    const std::vector<double>& action_low() const { return low_; }
    const std::vector<double>& action_high() const { return high_; }

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    ParamRange theta_range() const { return theta_; }
    ParamRange readout_w_range() const { return readout_w_; }
    ParamRange readout_b_range() const { return readout_b_; }
    ParamRange encoder_w_range() const { return enc_w_; }
    ParamRange encoder_b_range() const { return enc_b_; }
    ParamRange log_std_range() const { return log_std_; }

    std::vector<ParamGroup> param_groups() const {
        return {{ParamGroupKind::theta, theta_},
                {ParamGroupKind::readout,
                 {readout_w_.offset, readout_w_.len + readout_b_.len}},
                {ParamGroupKind::encoder,
                 {enc_w_.offset, enc_w_.len + enc_b_.len}},
                {ParamGroupKind::log_std, log_std_}};
    }

    /// Deterministic when `noise` is empty (u = mu), stochastic otherwise.
    ActorEval forward(std::span<const double> s,
                      std::span<const double> noise) const {
        const auto ev = trunk(s);
        return detail::squash_forward(mean_head(ev.zq),
                                      log_std_.view(params_), noise, low_,
                                      high_);
    }

    /**
     * @brief Gradient of d_logprob * log_prob + sum_d d_action[d]*action_d
     * with the noise path held fixed.
     */
    std::vector<double> param_grads(std::span<const double> s,
                                    std::span<const double> noise,
                                    std::span<const double> d_action,
                                    double d_logprob) const {
        const auto tev = trunk(s);
        const auto mu = mean_head(tev.zq);
        const auto ev = detail::squash_forward(mu, log_std_.view(params_),
                                               noise, low_, high_);
        const auto sq = detail::squash_backward(ev, log_std_.view(params_),
                                                noise, low_, high_, d_action,
                                                d_logprob);
        std::vector<double> g(params_.size(), 0.0);
        auto gls = log_std_.view(g);
        for (int i = 0; i < dims_.action_dim; ++i) {
            gls[static_cast<std::size_t>(i)] =
                sq.dL_dlog_std[static_cast<std::size_t>(i)];
        }

        // Readout backward: mu_d = tanh(w_d . z + b_d).
        const int nq = dims_.num_qubits;
        const int na = dims_.action_dim;
        const auto w = readout_w_.view(params_);
        auto gw = readout_w_.view(g);
        auto gb = readout_b_.view(g);
        std::vector<double> dL_dz(static_cast<std::size_t>(nq), 0.0);
        for (int d = 0; d < na; ++d) {
            const double m = mu[static_cast<std::size_t>(d)];
            const double d_raw =
                sq.dL_dmu[static_cast<std::size_t>(d)] * (1.0 - m * m);
            gb[static_cast<std::size_t>(d)] = d_raw;
            if (d_raw == 0.0) {
                continue;
            }
            for (int q = 0; q < nq; ++q) {
                const std::size_t idx = static_cast<std::size_t>(q) *
                                            static_cast<std::size_t>(na) +
                                        static_cast<std::size_t>(d);
                gw[idx] = tev.zq[static_cast<std::size_t>(q)] * d_raw;
                dL_dz[static_cast<std::size_t>(q)] += w[idx] * d_raw;
            }
        }

        const auto tg = detail::trunk_backward(circuit_, tev, dL_dz,
                                               dims_.in_dim,
                                               dims_.num_qubits, s);
        std::copy(tg.d_theta.begin(), tg.d_theta.end(),
                  g.begin() + static_cast<std::ptrdiff_t>(theta_.offset));
        std::copy(tg.d_enc_w.begin(), tg.d_enc_w.end(),
                  g.begin() + static_cast<std::ptrdiff_t>(enc_w_.offset));
        std::copy(tg.d_enc_b.begin(), tg.d_enc_b.end(),
                  g.begin() + static_cast<std::ptrdiff_t>(enc_b_.offset));
        return g;
    }

  private:
    detail::TrunkEval trunk(std::span<const double> s) const {
        return detail::trunk_forward(circuit_, enc_w_.view(params_),
                                     enc_b_.view(params_), dims_.in_dim,
                                     dims_.num_qubits, theta_.view(params_),
                                     s);
    }

    std::vector<double> mean_head(const std::vector<double>& zq) const {
        const int nq = dims_.num_qubits;
        const int na = dims_.action_dim;
        const auto w = readout_w_.view(params_);
        const auto b = readout_b_.view(params_);
        std::vector<double> mu(b.begin(), b.end());
        for (int q = 0; q < nq; ++q) {
            const double z = zq[static_cast<std::size_t>(q)];
            if (z == 0.0) {
                continue;
            }
            const std::size_t row = static_cast<std::size_t>(q) *
                                    static_cast<std::size_t>(na);
            for (int d = 0; d < na; ++d) {
                mu[static_cast<std::size_t>(d)] +=
                    w[row + static_cast<std::size_t>(d)] * z;
            }
        }
        for (double& m : mu) {
            m = std::tanh(m);
        }
        return mu;
    }

    QuantumActorDims dims_;
    AnsatzSpec ansatz_;
    qsim::Circuit circuit_;
    std::vector<double> low_, high_;
    std::vector<double> params_;
    ParamRange theta_, readout_w_, readout_b_, enc_w_, enc_b_, log_std_;
};

/// Spec-facing name.
inline ActorEval actor_forward(const QuantumActor& actor,
                               std::span<const double> s,
                               std::span<const double> noise) {
    return actor.forward(s, noise);
}

} // namespace qcommit::qmodels
