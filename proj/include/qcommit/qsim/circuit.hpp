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
 * @file circuit.hpp
 * Ordered gate lists with data/trainable parameter slots, circuit execution,
 * and Pauli-Z expectation readout.
 *
 * Evaluation is a pure function of (circuit, data values, trainable values):
 * the same inputs produce bit-identical statevectors.
 */
#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcommit/qsim/statevector.hpp"

namespace qcommit::qsim {

class Circuit {
  public:
    explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw SizeError("Circuit: qubit count outside 1.." +
                            std::to_string(kMaxQubits));
        }
    }

    /// Appends a gate, validating indices and the angle/slot discipline.
    void push(const Gate& g) {
        if (g.target < 0 || g.target >= num_qubits_) {
            throw SizeError("Circuit::push: target out of range");
        }
        if (g.kind == GateKind::CZ &&
            (g.control < 0 || g.control >= num_qubits_ ||
             g.control == g.target)) {
            throw SizeError("Circuit::push: invalid CZ control");
        }
        if (is_rotation(g.kind)) {
            if (g.angle.has_value() == g.has_slot()) {
                throw BindingError(
                    "Circuit::push: rotation gate needs exactly one of "
                    "angle or slot");
            }
            if (g.has_slot()) {
                if (g.slot < 0) {
                    throw BindingError("Circuit::push: negative slot index");
                }
                auto& count = (g.slot_kind == SlotKind::data)
                                  ? num_data_slots_
                                  : num_trainable_slots_;
                count = std::max(count, g.slot + 1);
            }
        } else if (g.angle.has_value() || g.has_slot()) {
            throw UnsupportedGateError(
                std::string("Circuit::push: angle/slot on ") +
                gate_name(g.kind));
        }
        gates_.push_back(g);
    }

    /// Raises the declared slot count (for vectors with unused slots).
    void declare_data_slots(int n) {
        num_data_slots_ = std::max(num_data_slots_, n);
    }
    void declare_trainable_slots(int n) {
        num_trainable_slots_ = std::max(num_trainable_slots_, n);
    }

    int num_qubits() const { return num_qubits_; }
    int num_data_slots() const { return num_data_slots_; }
    int num_trainable_slots() const { return num_trainable_slots_; }
    const std::vector<Gate>& gates() const { return gates_; }

  private:
    int num_qubits_;
    std::vector<Gate> gates_;
    int num_data_slots_ = 0;
    int num_trainable_slots_ = 0;
};

namespace detail {

inline double resolve_angle(const Gate& g, std::span<const double> data,
                            std::span<const double> trainable) {
    if (g.angle) {
        return *g.angle;
    }
    switch (g.slot_kind) {
    case SlotKind::data:
        return data[static_cast<std::size_t>(g.slot)];
    case SlotKind::trainable:
        return trainable[static_cast<std::size_t>(g.slot)];
    case SlotKind::none:
        return 0.0;
    }
    return 0.0;
}

/// Runs the circuit with one gate occurrence's angle shifted by `delta`.
/// `shift_gate < 0` disables the shift.
inline Statevector run_shifted(const Circuit& c, std::span<const double> data,
                               std::span<const double> trainable,
                               std::ptrdiff_t shift_gate, double delta) {
    Statevector sv = zero_state(c.num_qubits());
    const auto& gates = c.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        double angle = resolve_angle(gates[i], data, trainable);
        if (static_cast<std::ptrdiff_t>(i) == shift_gate) {
            angle += delta;
        }
        apply_gate_inplace(sv, gates[i], angle);
    }
    return sv;
}

} // namespace detail

/**
 * @brief Executes the circuit from |0...0>, resolving slots against the
 * supplied value vectors.
 *
 * Throws BindingError when the vector lengths do not match the declared
 * slot counts.
 */
inline Statevector run_circuit(const Circuit& c, std::span<const double> data,
                               std::span<const double> trainable) {
    if (static_cast<int>(data.size()) != c.num_data_slots()) {
        throw BindingError("run_circuit: data length " +
                           std::to_string(data.size()) + " != declared " +
                           std::to_string(c.num_data_slots()));
    }
    if (static_cast<int>(trainable.size()) != c.num_trainable_slots()) {
        throw BindingError("run_circuit: trainable length " +
                           std::to_string(trainable.size()) +
                           " != declared " +
                           std::to_string(c.num_trainable_slots()));
    }
    return detail::run_shifted(c, data, trainable, -1, 0.0);
}

/**
 * @brief Weighted sum of single-qubit Pauli-Z terms plus a constant.
 *
 * The expectation of a term on qubit q is sum_i |c_i|^2 * (+1 if bit q of i
 * is 0 else -1), so the total always lies in
 * [-sum|w| + const, +sum|w| + const].
 */
struct Observable {
    std::vector<std::pair<int, double>> terms; // (qubit, weight)
    double constant = 0.0;

    static Observable z(int qubit) { return Observable{{{qubit, 1.0}}, 0.0}; }
};

inline double expect_z(const Statevector& sv, const Observable& obs) {
    // One pass over probabilities, accumulating every term's <Z_q>.
    std::vector<double> zq(static_cast<std::size_t>(sv.num_qubits), 0.0);
    for (const auto& [q, w] : obs.terms) {
        (void)w;
        if (q < 0 || q >= sv.num_qubits) {
            throw SizeError("expect_z: observable qubit out of range");
        }
    }
    for (std::size_t i = 0; i < sv.amplitudes.size(); ++i) {
        const double p = std::norm(sv.amplitudes[i]);
        if (p == 0.0) {
            continue;
        }
        for (int q = 0; q < sv.num_qubits; ++q) {
            zq[static_cast<std::size_t>(q)] += ((i >> q) & 1U) ? -p : p;
        }
    }
    double value = obs.constant;
    for (const auto& [q, w] : obs.terms) {
        value += w * zq[static_cast<std::size_t>(q)];
    }
    return value;
}

/// Per-qubit <Z_q> for all qubits in one pass.
inline std::vector<double> all_z_expectations(const Statevector& sv) {
    std::vector<double> zq(static_cast<std::size_t>(sv.num_qubits), 0.0);
    for (std::size_t i = 0; i < sv.amplitudes.size(); ++i) {
        const double p = std::norm(sv.amplitudes[i]);
        if (p == 0.0) {
            continue;
        }
        for (int q = 0; q < sv.num_qubits; ++q) {
            zq[static_cast<std::size_t>(q)] += ((i >> q) & 1U) ? -p : p;
        }
    }
    return zq;
}

} // namespace qcommit::qsim
