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
 * @file statevector.hpp
 * Dense statevector of an n-qubit register and the single/two-qubit gate
 * kernels acting on it.
 *
 * Qubit 0 is the least-significant bit of the basis-state index: amplitude
 * index i addresses the basis state |q_{n-1} ... q_1 q_0> with q_k = bit k
 * of i. All kernels act in place on a mutable register; value-returning
 * wrappers are layered on top.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcommit/errors.hpp"

namespace qcommit::qsim {

inline constexpr int kMaxQubits = 16;

struct Statevector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& a : amplitudes) {
            s += std::norm(a);
        }
        return s;
    }
};

/// |0...0> on n qubits. Throws SizeError outside 1..kMaxQubits.
inline Statevector zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw SizeError("zero_state: qubit count " +
                        std::to_string(num_qubits) + " outside 1.." +
                        std::to_string(kMaxQubits));
    }
    Statevector sv;
    sv.num_qubits = num_qubits;
    sv.amplitudes.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
    sv.amplitudes[0] = {1.0, 0.0};
    return sv;
}

enum class GateKind { H, RX, RY, RZ, CZ };

/// Which parameter vector a slot-bound angle is resolved against.
enum class SlotKind { none, data, trainable };

inline bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

inline const char* gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::H:
        return "H";
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CZ:
        return "CZ";
    }
    return "?";
}

/**
 * @brief One gate in a circuit.
 *
 * Rotation gates carry exactly one of a fixed `angle` or a parameter slot;
 * H and CZ carry neither. CZ is the only gate with a control.
 */
struct Gate {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1;
    std::optional<double> angle;
    SlotKind slot_kind = SlotKind::none;
    int slot = -1;

    static Gate h(int q) { return Gate{GateKind::H, q, -1, {}, SlotKind::none, -1}; }
    static Gate cz(int control, int target) {
        return Gate{GateKind::CZ, target, control, {}, SlotKind::none, -1};
    }
    static Gate rx(int q, double angle) {
        return Gate{GateKind::RX, q, -1, angle, SlotKind::none, -1};
    }
    static Gate ry(int q, double angle) {
        return Gate{GateKind::RY, q, -1, angle, SlotKind::none, -1};
    }
    static Gate rz(int q, double angle) {
        return Gate{GateKind::RZ, q, -1, angle, SlotKind::none, -1};
    }
    static Gate rx_slot(int q, SlotKind kind, int slot) {
        return Gate{GateKind::RX, q, -1, {}, kind, slot};
    }
    static Gate ry_slot(int q, SlotKind kind, int slot) {
        return Gate{GateKind::RY, q, -1, {}, kind, slot};
    }
    static Gate rz_slot(int q, SlotKind kind, int slot) {
        return Gate{GateKind::RZ, q, -1, {}, kind, slot};
    }

    bool has_slot() const { return slot_kind != SlotKind::none; }
};

namespace detail {

inline void apply_h(Statevector& sv, int q) {
    const std::size_t mask = std::size_t{1} << q;
    const double inv_sqrt2 = 0.70710678118654752440;
    auto& amp = sv.amplitudes;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const std::size_t j = i | mask;
        const auto a = amp[i];
        const auto b = amp[j];
        amp[i] = (a + b) * inv_sqrt2;
        amp[j] = (a - b) * inv_sqrt2;
    }
}

inline void apply_rx(Statevector& sv, int q, double theta) {
    const std::size_t mask = std::size_t{1} << q;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::complex<double> mis{0.0, -s}; // -i*sin(theta/2)
    auto& amp = sv.amplitudes;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const std::size_t j = i | mask;
        const auto a = amp[i];
        const auto b = amp[j];
        amp[i] = c * a + mis * b;
        amp[j] = mis * a + c * b;
    }
}

inline void apply_ry(Statevector& sv, int q, double theta) {
    const std::size_t mask = std::size_t{1} << q;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    auto& amp = sv.amplitudes;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const std::size_t j = i | mask;
        const auto a = amp[i];
        const auto b = amp[j];
        amp[i] = c * a - s * b;
        amp[j] = s * a + c * b;
    }
}

inline void apply_rz(Statevector& sv, int q, double theta) {
    const std::size_t mask = std::size_t{1} << q;
    const std::complex<double> e0{std::cos(0.5 * theta), -std::sin(0.5 * theta)};
    const std::complex<double> e1{std::cos(0.5 * theta), std::sin(0.5 * theta)};
    auto& amp = sv.amplitudes;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        amp[i] *= (i & mask) ? e1 : e0;
    }
}

inline void apply_cz(Statevector& sv, int control, int target) {
    const std::size_t mask =
        (std::size_t{1} << control) | (std::size_t{1} << target);
    auto& amp = sv.amplitudes;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        if ((i & mask) == mask) {
            amp[i] = -amp[i];
        }
    }
}

} // namespace detail

/// Validates gate indices against the register.
inline void check_gate_indices(const Statevector& sv, const Gate& g) {
    if (g.target < 0 || g.target >= sv.num_qubits) {
        throw SizeError(std::string("apply_gate: target out of range for ") +
                        gate_name(g.kind));
    }
    if (g.kind == GateKind::CZ) {
        if (g.control < 0 || g.control >= sv.num_qubits ||
            g.control == g.target) {
            throw SizeError("apply_gate: invalid CZ control");
        }
    }
}

/// In-place gate application with an already-resolved rotation angle.
inline void apply_gate_inplace(Statevector& sv, const Gate& g, double angle) {
    check_gate_indices(sv, g);
    switch (g.kind) {
    case GateKind::H:
        detail::apply_h(sv, g.target);
        break;
    case GateKind::RX:
        detail::apply_rx(sv, g.target, angle);
        break;
    case GateKind::RY:
        detail::apply_ry(sv, g.target, angle);
        break;
    case GateKind::RZ:
        detail::apply_rz(sv, g.target, angle);
        break;
    case GateKind::CZ:
        detail::apply_cz(sv, g.control, g.target);
        break;
    }
}

/// Pure gate application; `angle` is ignored for H/CZ.
inline Statevector apply_gate(const Statevector& sv, const Gate& g,
                              double angle) {
    Statevector out = sv;
    apply_gate_inplace(out, g, angle);
    return out;
}

/// Pure gate application for gates with a fixed angle (or none). Throws
/// BindingError when the gate's angle is an unresolved parameter slot.
inline Statevector apply_gate(const Statevector& sv, const Gate& g) {
    if (g.has_slot()) {
        throw BindingError(std::string("apply_gate: unresolved slot on ") +
                           gate_name(g.kind));
    }
    return apply_gate(sv, g, g.angle.value_or(0.0));
}

} // namespace qcommit::qsim
