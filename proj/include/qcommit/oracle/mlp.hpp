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
 * @file mlp.hpp
 * Classical baseline function approximators: a tanh multilayer perceptron
 * with analytic backprop, and the squashed-Gaussian actor head built on it.
 * Both expose the same flat-parameter interface as the quantum models, so
 * the trainers run unchanged in baseline mode.
 */
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qcommit/errors.hpp"
#include "qcommit/params.hpp"
#include "qcommit/qmodels/actor.hpp"
#include "qcommit/rng.hpp"

namespace qcommit::oracle {

struct MlpSpec {
    std::vector<int> dims; // layer widths, first = input, last = output
    bool tanh_output = false;

    std::size_t param_count() const {
        std::size_t n = 0;
        for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
            n += static_cast<std::size_t>(dims[l + 1]) *
                     static_cast<std::size_t>(dims[l]) +
                 static_cast<std::size_t>(dims[l + 1]);
        }
        return n;
    }
};

namespace detail {

struct MlpTrace {
    std::vector<std::vector<double>> activations; // per layer incl. input
    std::vector<std::vector<double>> pre;         // pre-activation per layer
};

inline std::vector<double> mlp_forward_core(const MlpSpec& spec,
                                            std::span<const double> params,
                                            std::span<const double> x,
                                            MlpTrace* trace) {
    if (static_cast<int>(x.size()) != spec.dims.front()) {
        throw SizeError("mlp: input length mismatch");
    }
    std::vector<double> cur(x.begin(), x.end());
    if (trace) {
        trace->activations.clear();
        trace->pre.clear();
        trace->activations.push_back(cur);
    }
    std::size_t off = 0;
    const std::size_t layers = spec.dims.size() - 1;
    for (std::size_t l = 0; l < layers; ++l) {
        const int in = spec.dims[l];
        const int out = spec.dims[l + 1];
        std::vector<double> next(static_cast<std::size_t>(out), 0.0);
        for (int o = 0; o < out; ++o) {
            double acc =
                params[off + static_cast<std::size_t>(out) *
                                  static_cast<std::size_t>(in) +
                       static_cast<std::size_t>(o)];
            const std::size_t row =
                off + static_cast<std::size_t>(o) *
                          static_cast<std::size_t>(in);
            for (int i = 0; i < in; ++i) {
                acc += params[row + static_cast<std::size_t>(i)] *
                       cur[static_cast<std::size_t>(i)];
            }
            next[static_cast<std::size_t>(o)] = acc;
        }
        off += static_cast<std::size_t>(out) * static_cast<std::size_t>(in) +
               static_cast<std::size_t>(out);
        const bool activate = (l + 1 < layers) || spec.tanh_output;
        if (trace) {
            trace->pre.push_back(next);
        }
        if (activate) {
            for (double& v : next) {
                v = std::tanh(v);
            }
        }
        cur = std::move(next);
        if (trace) {
            trace->activations.push_back(cur);
        }
    }
    return cur;
}

struct MlpBackward {
    std::vector<double> param_grads;
    std::vector<double> input_grads;
};

inline MlpBackward mlp_backward_core(const MlpSpec& spec,
                                     std::span<const double> params,
                                     const MlpTrace& trace,
                                     std::span<const double> downstream) {
    const std::size_t layers = spec.dims.size() - 1;
    MlpBackward out;
    out.param_grads.assign(params.size(), 0.0);

    // Offsets of each layer's weight block.
    std::vector<std::size_t> offsets(layers, 0);
    {
        std::size_t off = 0;
        for (std::size_t l = 0; l < layers; ++l) {
            offsets[l] = off;
            off += static_cast<std::size_t>(spec.dims[l + 1]) *
                       static_cast<std::size_t>(spec.dims[l]) +
                   static_cast<std::size_t>(spec.dims[l + 1]);
        }
    }

    std::vector<double> delta(downstream.begin(), downstream.end());
    for (std::size_t l = layers; l-- > 0;) {
        const int in = spec.dims[l];
        const int outn = spec.dims[l + 1];
        const bool activate = (l + 1 < layers) || spec.tanh_output;
        if (activate) {
            const auto& act = trace.activations[l + 1];
            for (int o = 0; o < outn; ++o) {
                const double t = act[static_cast<std::size_t>(o)];
                delta[static_cast<std::size_t>(o)] *= (1.0 - t * t);
            }
        }
        const auto& below = trace.activations[l];
        const std::size_t woff = offsets[l];
        const std::size_t boff = woff + static_cast<std::size_t>(outn) *
                                            static_cast<std::size_t>(in);
        std::vector<double> prev_delta(static_cast<std::size_t>(in), 0.0);
        for (int o = 0; o < outn; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            out.param_grads[boff + static_cast<std::size_t>(o)] += d;
            if (d == 0.0) {
                continue;
            }
            const std::size_t row =
                woff + static_cast<std::size_t>(o) *
                           static_cast<std::size_t>(in);
            for (int i = 0; i < in; ++i) {
                out.param_grads[row + static_cast<std::size_t>(i)] +=
                    d * below[static_cast<std::size_t>(i)];
                prev_delta[static_cast<std::size_t>(i)] +=
                    d * params[row + static_cast<std::size_t>(i)];
            }
        }
        delta = std::move(prev_delta);
    }
    out.input_grads = std::move(delta);
    return out;
}

} // namespace detail

/**
 * @brief Value-semantics MLP with the shared flat-parameter interface.
 */
class Mlp {
  public:
    Mlp() = default;
    explicit Mlp(MlpSpec spec) : spec_(std::move(spec)) {
        if (spec_.dims.size() < 2) {
            throw SizeError("Mlp: need at least input and output dims");
        }
        params_.assign(spec_.param_count(), 0.0);
    }

    static Mlp init(MlpSpec spec, Rng& rng) {
        Mlp m(std::move(spec));
        std::size_t off = 0;
        for (std::size_t l = 0; l + 1 < m.spec_.dims.size(); ++l) {
            const int in = m.spec_.dims[l];
            const int out = m.spec_.dims[l + 1];
            const double bound = std::sqrt(6.0 / (in + out));
            const std::size_t wcount = static_cast<std::size_t>(out) *
                                       static_cast<std::size_t>(in);
            for (std::size_t k = 0; k < wcount; ++k) {
                m.params_[off + k] = rng.uniform(-bound, bound);
            }
            off += wcount + static_cast<std::size_t>(out); // biases stay 0
        }
        return m;
    }

    const MlpSpec& spec() const { return spec_; }
    int in_dim() const { return spec_.dims.front(); }
    int out_dim() const { return spec_.dims.back(); }

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    std::vector<ParamGroup> param_groups() const {
        return {{ParamGroupKind::dense, {0, params_.size()}}};
    }

    std::vector<double> forward(std::span<const double> x) const {
        return detail::mlp_forward_core(spec_, params_, x, nullptr);
    }

    std::vector<double> param_grads(std::span<const double> x,
                                    std::span<const double> downstream) const {
        detail::MlpTrace trace;
        detail::mlp_forward_core(spec_, params_, x, &trace);
        return detail::mlp_backward_core(spec_, params_, trace, downstream)
            .param_grads;
    }

    /// dL/dx for the given downstream output gradient.
    std::vector<double> input_grads(std::span<const double> x,
                                    std::span<const double> downstream) const {
        detail::MlpTrace trace;
        detail::mlp_forward_core(spec_, params_, x, &trace);
        return detail::mlp_backward_core(spec_, params_, trace, downstream)
            .input_grads;
    }

  private:
    MlpSpec spec_;
    std::vector<double> params_;
};

/// Spec-facing names.
inline std::vector<double> mlp_forward(const Mlp& m,
                                       std::span<const double> x) {
    return m.forward(x);
}
inline std::vector<double> mlp_grads(const Mlp& m, std::span<const double> x,
                                     std::span<const double> downstream) {
    return m.param_grads(x, downstream);
}

/**
 * @brief Classical counterpart of the quantum actor: a tanh-output MLP
 * produces the pre-squash mean, with the same squashed-Gaussian head and
 * trainable log-std.
 */
class ClassicalActor {
  public:
    ClassicalActor() = default;

    ClassicalActor(MlpSpec spec, std::vector<double> low,
                   std::vector<double> high)
        : spec_(std::move(spec)), low_(std::move(low)),
          high_(std::move(high)) {
        spec_.tanh_output = true;
        action_dim_ = spec_.dims.back();
        if (static_cast<int>(low_.size()) != action_dim_ ||
            static_cast<int>(high_.size()) != action_dim_) {
            throw SizeError("ClassicalActor: bounds length mismatch");
        }
        mlp_len_ = spec_.param_count();
        params_.assign(mlp_len_ + static_cast<std::size_t>(action_dim_), 0.0);
        for (std::size_t i = mlp_len_; i < params_.size(); ++i) {
            params_[i] = -1.0;
        }
    }

    static ClassicalActor init(MlpSpec spec, std::vector<double> low,
                               std::vector<double> high, Rng& rng) {
        ClassicalActor a(std::move(spec), std::move(low), std::move(high));
        Mlp seed = Mlp::init(a.spec_, rng);
        std::copy(seed.params().begin(), seed.params().end(),
                  a.params_.begin());
        return a;
    }

    int in_dim() const { return spec_.dims.front(); }
    int action_dim() const { return action_dim_; }
    const std::vector<double>& action_low() const { return low_; }
    const std::vector<double>& action_high() const { return high_; }

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    ParamRange log_std_range() const {
        return {mlp_len_, static_cast<std::size_t>(action_dim_)};
    }

    std::vector<ParamGroup> param_groups() const {
        return {{ParamGroupKind::dense, {0, mlp_len_}},
                {ParamGroupKind::log_std, log_std_range()}};
    }

    qmodels::ActorEval forward(std::span<const double> s,
                               std::span<const double> noise) const {
        const auto mu = detail::mlp_forward_core(
            spec_, std::span<const double>(params_).first(mlp_len_), s,
            nullptr);
        return qmodels::detail::squash_forward(
            mu, std::span<const double>(params_).subspan(mlp_len_), noise,
            low_, high_);
    }

    std::vector<double> param_grads(std::span<const double> s,
                                    std::span<const double> noise,
                                    std::span<const double> d_action,
                                    double d_logprob) const {
        const std::span<const double> mlp_params(params_.data(), mlp_len_);
        const std::span<const double> log_std(params_.data() + mlp_len_,
                                              static_cast<std::size_t>(
                                                  action_dim_));
        detail::MlpTrace trace;
        const auto mu =
            detail::mlp_forward_core(spec_, mlp_params, s, &trace);
        const auto ev = qmodels::detail::squash_forward(mu, log_std, noise,
                                                        low_, high_);
        const auto sq = qmodels::detail::squash_backward(
            ev, log_std, noise, low_, high_, d_action, d_logprob);
        const auto bk = detail::mlp_backward_core(spec_, mlp_params, trace,
                                                  sq.dL_dmu);
        std::vector<double> g(params_.size(), 0.0);
        std::copy(bk.param_grads.begin(), bk.param_grads.end(), g.begin());
        for (int i = 0; i < action_dim_; ++i) {
            g[mlp_len_ + static_cast<std::size_t>(i)] =
                sq.dL_dlog_std[static_cast<std::size_t>(i)];
        }
        return g;
    }

  private:
    MlpSpec spec_;
    std::vector<double> low_, high_;
    int action_dim_ = 0;
    std::size_t mlp_len_ = 0;
    std::vector<double> params_;
};

} // namespace qcommit::oracle
