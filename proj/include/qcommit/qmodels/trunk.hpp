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
 * @file trunk.hpp
 * Shared forward/backward machinery for hybrid models: linear encoder ->
 * tanh angle encoding -> variational circuit -> per-qubit <Z> features.
 *
 * The backward pass composes the parameter-shift rule (applied at the angle
 * level to both trainable and data slots) with the analytic Jacobians of the
 * tanh squashes and the encoder's L2 normalization.
 */
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qcommit/qmodels/ansatz.hpp"
#include "qcommit/qmodels/encoding.hpp"
#include "qcommit/qsim/gradient.hpp"

namespace qcommit::qmodels::detail {

struct TrunkEval {
    std::vector<double> y;            // normalized encoder output (m)
    std::vector<double> data_angles;  // tanh(y)
    std::vector<double> theta_angles; // tanh(theta)
    std::vector<double> zq;           // per-qubit <Z>
    double encoder_norm = 0.0;        // ||z|| before normalization (0 if degenerate)
};

inline TrunkEval trunk_forward(const qsim::Circuit& circuit,
                               std::span<const double> enc_w,
                               std::span<const double> enc_b, int in_dim,
                               int m, std::span<const double> theta,
                               std::span<const double> x) {
    if (static_cast<int>(x.size()) != in_dim) {
        throw SizeError("trunk_forward: input length mismatch");
    }
    TrunkEval ev;
    affine_into(enc_w, enc_b, in_dim, m, x, ev.y);
    ev.encoder_norm = normalize_or_uniform(ev.y);
    ev.data_angles.resize(ev.y.size());
    for (std::size_t j = 0; j < ev.y.size(); ++j) {
        ev.data_angles[j] = std::tanh(ev.y[j]);
    }
    ev.theta_angles.resize(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        ev.theta_angles[k] = std::tanh(theta[k]);
    }
    const qsim::Statevector sv =
        qsim::run_circuit(circuit, ev.data_angles, ev.theta_angles);
    ev.zq = qsim::all_z_expectations(sv);
    return ev;
}

struct TrunkGrads {
    std::vector<double> d_theta; // raw theta (pre-tanh)
    std::vector<double> d_enc_w;
    std::vector<double> d_enc_b;
};

/**
 * @brief Backpropagates dL/d<Z_q> weights through the circuit and encoder.
 *
 * Expectations are linear in the observable, so the weighted observable
 * sum_q w_q Z_q turns the whole readout gradient into one parameter-shift
 * pass per slot.
 */
inline TrunkGrads trunk_backward(const qsim::Circuit& circuit,
                                 const TrunkEval& ev,
                                 std::span<const double> dL_dz, int in_dim,
                                 int m, std::span<const double> x) {
    qsim::Observable obs;
    for (int q = 0; q < m; ++q) {
        const double w = dL_dz[static_cast<std::size_t>(q)];
        if (w != 0.0) {
            obs.terms.push_back({q, w});
        }
    }

    TrunkGrads gr;
    gr.d_theta.assign(ev.theta_angles.size(), 0.0);
    gr.d_enc_w.assign(static_cast<std::size_t>(in_dim) *
                          static_cast<std::size_t>(m),
                      0.0);
    gr.d_enc_b.assign(static_cast<std::size_t>(m), 0.0);
    if (obs.terms.empty()) {
        return gr;
    }

    // Trainable slots: shift at the angle level, then the tanh Jacobian.
    for (std::size_t k = 0; k < ev.theta_angles.size(); ++k) {
        const double raw = qsim::param_shift_grad(
            circuit, ev.data_angles, ev.theta_angles, obs,
            static_cast<int>(k), qsim::SlotKind::trainable);
        const double t = ev.theta_angles[k];
        gr.d_theta[k] = raw * (1.0 - t * t);
    }

    // Data slots: angle-level shift, tanh Jacobian, then the normalization
    // Jacobian dy/dz = (I - y y^T)/||z|| back to the affine output.
    std::vector<double> dL_dy(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; ++j) {
        const double raw =
            qsim::param_shift_grad(circuit, ev.data_angles, ev.theta_angles,
                                   obs, j, qsim::SlotKind::data);
        const double a = ev.data_angles[static_cast<std::size_t>(j)];
        dL_dy[static_cast<std::size_t>(j)] = raw * (1.0 - a * a);
    }
    if (ev.encoder_norm <= 0.0) {
        return gr; // degenerate fallback branch: uniform output, zero grad
    }
    double y_dot_g = 0.0;
    for (int j = 0; j < m; ++j) {
        y_dot_g += ev.y[static_cast<std::size_t>(j)] *
                   dL_dy[static_cast<std::size_t>(j)];
    }
    std::vector<double> dL_dzpre(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < m; ++j) {
        dL_dzpre[static_cast<std::size_t>(j)] =
            (dL_dy[static_cast<std::size_t>(j)] -
             ev.y[static_cast<std::size_t>(j)] * y_dot_g) /
            ev.encoder_norm;
    }
    for (int j = 0; j < m; ++j) {
        gr.d_enc_b[static_cast<std::size_t>(j)] =
            dL_dzpre[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < in_dim; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        if (xi == 0.0) {
            continue;
        }
        const std::size_t row =
            static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
        for (int j = 0; j < m; ++j) {
            gr.d_enc_w[row + static_cast<std::size_t>(j)] =
                xi * dL_dzpre[static_cast<std::size_t>(j)];
        }
    }
    return gr;
}

} // namespace qcommit::qmodels::detail
