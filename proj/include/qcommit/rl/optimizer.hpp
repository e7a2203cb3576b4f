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
 * @file optimizer.hpp
 * First-order updates over a model's flat parameter vector.
 *
 * Each parameter group carries its own learning rate and rule: plain
 * gradient descent (the default for quantum angles) or adaptive moment
 * estimation with bias correction (decay 0.9/0.999, epsilon 1e-8) for the
 * classical groups.
 */
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qcommit/errors.hpp"
#include "qcommit/params.hpp"

namespace qcommit::rl {

struct GroupSetting {
    ParamGroupKind kind;
    double lr = 1e-3;
    bool adam = true;
};

class Optimizer {
  public:
    Optimizer() = default;

    Optimizer(const std::vector<ParamGroup>& groups,
              const std::vector<GroupSetting>& settings,
              std::size_t param_count)
        : m_(param_count, 0.0), v_(param_count, 0.0) {
        for (const auto& g : groups) {
            bool found = false;
            for (const auto& s : settings) {
                if (s.kind == g.kind) {
                    resolved_.push_back({g.range, s.lr, s.adam});
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw ContractError(
                    std::string("Optimizer: no setting for group ") +
                    param_group_name(g.kind));
            }
        }
    }

    void step(std::vector<double>& params, std::span<const double> grads) {
        if (params.size() != m_.size() || grads.size() != m_.size()) {
            throw SizeError("Optimizer::step: parameter length mismatch");
        }
        ++t_;
        const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
        for (const auto& g : resolved_) {
            for (std::size_t i = g.range.offset;
                 i < g.range.offset + g.range.len; ++i) {
                if (g.adam) {
                    m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grads[i];
                    v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grads[i] * grads[i];
                    const double mhat = m_[i] / bc1;
                    const double vhat = v_[i] / bc2;
                    params[i] -= g.lr * mhat / (std::sqrt(vhat) + kEps);
                } else {
                    params[i] -= g.lr * grads[i];
                }
            }
        }
    }

    long steps() const { return t_; }
    const std::vector<double>& moment1() const { return m_; }
    const std::vector<double>& moment2() const { return v_; }

    void restore(long t, std::vector<double> m, std::vector<double> v) {
        t_ = t;
        m_ = std::move(m);
        v_ = std::move(v);
    }

  private:
    static constexpr double kBeta1 = 0.9;
    static constexpr double kBeta2 = 0.999;
    static constexpr double kEps = 1e-8;

    struct Resolved {
        ParamRange range;
        double lr;
        bool adam;
    };
    std::vector<Resolved> resolved_;
    std::vector<double> m_, v_;
    long t_ = 0;
};

} // namespace qcommit::rl
