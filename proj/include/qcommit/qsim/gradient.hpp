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
 * @file gradient.hpp
 * Parameter-shift gradients of circuit expectations.
 *
 * For rotation gates (generator with eigenvalues +-1/2) the symmetric shift
 *     d f / d theta = 1/2 * [ f(theta + pi/2) - f(theta - pi/2) ]
 * is exact. A slot shared by m gates contributes the sum of m per-occurrence
 * shifts (product rule), matching a layer angle applied to every qubit.
 */
#pragma once

#include <span>
#include <string>
#include <vector>

#include "qcommit/qsim/circuit.hpp"

namespace qcommit::qsim {

inline constexpr double kHalfPi = 1.57079632679489661923;

/**
 * @brief Exact derivative of expect_z(run_circuit(...)) with respect to one
 * parameter slot, at the angle level.
 *
 * Unused slots yield 0. A slot attached to a non-rotation gate raises
 * UnsupportedGateError.
 */
inline double param_shift_grad(const Circuit& c, std::span<const double> data,
                               std::span<const double> trainable,
                               const Observable& obs, int slot,
                               SlotKind which = SlotKind::trainable) {
    const auto& gates = c.gates();
    double grad = 0.0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (g.slot_kind != which || g.slot != slot) {
            continue;
        }
        if (!is_rotation(g.kind)) {
            throw UnsupportedGateError(
                std::string("param_shift_grad: slot on non-rotation gate ") +
                gate_name(g.kind));
        }
        const auto gi = static_cast<std::ptrdiff_t>(i);
        const double plus =
            expect_z(detail::run_shifted(c, data, trainable, gi, kHalfPi), obs);
        const double minus = expect_z(
            detail::run_shifted(c, data, trainable, gi, -kHalfPi), obs);
        grad += 0.5 * (plus - minus);
    }
    return grad;
}

/// Gradient over all trainable slots, assembled in slot order.
inline std::vector<double> grad_vector(const Circuit& c,
                                       std::span<const double> data,
                                       std::span<const double> trainable,
                                       const Observable& obs) {
    std::vector<double> grads(
        static_cast<std::size_t>(c.num_trainable_slots()), 0.0);
    for (int k = 0; k < c.num_trainable_slots(); ++k) {
        grads[static_cast<std::size_t>(k)] =
            param_shift_grad(c, data, trainable, obs, k, SlotKind::trainable);
    }
    return grads;
}

/// Gradient over all data slots (used for end-to-end encoder gradients).
inline std::vector<double> data_grad_vector(const Circuit& c,
                                            std::span<const double> data,
                                            std::span<const double> trainable,
                                            const Observable& obs) {
    std::vector<double> grads(static_cast<std::size_t>(c.num_data_slots()),
                              0.0);
    for (int k = 0; k < c.num_data_slots(); ++k) {
        grads[static_cast<std::size_t>(k)] =
            param_shift_grad(c, data, trainable, obs, k, SlotKind::data);
    }
    return grads;
}

} // namespace qcommit::qsim
