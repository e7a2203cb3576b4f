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
 * @file ansatz.hpp
 * The layered variational circuit used by every quantum model in this
 * project: per-qubit Hadamard, a fixed RY(pi/4) tilt, one RX angle-encoding
 * block (data slot n on qubit n), then per layer a CZ chain over adjacent
 * qubits followed by RY rotations. By default all qubits in a layer share
 * one trainable angle slot; `per_qubit_theta` switches to one slot per
 * (layer, qubit).
 *
 * The RY(pi/4) between the Hadamard and the encoding is load-bearing: an RX
 * rotation applied directly to the X-eigenstate H|0> contributes only a
 * global phase, which would make every readout independent of the data. The
 * fixed tilt moves the qubit off the X axis so the encoding acts
 * nontrivially.
 *
 * Callers bind tanh-squashed values to both data and trainable slots; the
 * circuit itself treats slot values as raw angles.
 */
#pragma once

#include "qcommit/qsim/circuit.hpp"

namespace qcommit::qmodels {

inline constexpr double kEmbedTilt = 0.78539816339744830962; // pi/4

struct AnsatzSpec {
    int num_qubits = 1;
    int num_layers = 1;
    bool per_qubit_theta = false;

    int num_trainable_slots() const {
        return per_qubit_theta ? num_layers * num_qubits : num_layers;
    }
};

inline qsim::Circuit build_vqc(const AnsatzSpec& spec) {
    if (spec.num_qubits < 1 || spec.num_layers < 1) {
        throw SizeError("build_vqc: need at least one qubit and one layer");
    }
    qsim::Circuit c(spec.num_qubits);
    for (int q = 0; q < spec.num_qubits; ++q) {
        c.push(qsim::Gate::h(q));
    }
    for (int q = 0; q < spec.num_qubits; ++q) {
        c.push(qsim::Gate::ry(q, kEmbedTilt));
    }
    for (int q = 0; q < spec.num_qubits; ++q) {
        c.push(qsim::Gate::rx_slot(q, qsim::SlotKind::data, q));
    }
    for (int g = 0; g < spec.num_layers; ++g) {
        for (int q = 0; q + 1 < spec.num_qubits; ++q) {
            c.push(qsim::Gate::cz(q, q + 1));
        }
        for (int q = 0; q < spec.num_qubits; ++q) {
            const int slot =
                spec.per_qubit_theta ? g * spec.num_qubits + q : g;
            c.push(qsim::Gate::ry_slot(q, qsim::SlotKind::trainable, slot));
        }
    }
    c.declare_data_slots(spec.num_qubits);
    c.declare_trainable_slots(spec.num_trainable_slots());
    return c;
}

} // namespace qcommit::qmodels
