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
 * @file qnetwork.hpp
 * Hybrid quantum Q-network: linear encoder, variational circuit, and a
 * trainable linear readout mapping per-qubit <Z> features to one Q-value
 * per action.
 */
#pragma once

#include <span>
#include <vector>

#include "qcommit/params.hpp"
#include "qcommit/qmodels/trunk.hpp"
#include "qcommit/rng.hpp"

namespace qcommit::qmodels {

struct QNetworkDims {
    int in_dim = 1;
    int num_qubits = 1; // encoder out_dim == qubit count
    int num_layers = 1;
    int num_actions = 1;
    bool per_qubit_theta = false;
};

class QNetwork {
  public:
    QNetwork() : circuit_(1) {}

    explicit QNetwork(const QNetworkDims& dims)
        : dims_(dims),
          ansatz_{dims.num_qubits, dims.num_layers, dims.per_qubit_theta},
          circuit_(build_vqc(ansatz_)) {
        const auto nq = static_cast<std::size_t>(dims.num_qubits);
        const auto na = static_cast<std::size_t>(dims.num_actions);
        const auto ni = static_cast<std::size_t>(dims.in_dim);
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
        params_.assign(off, 0.0);
    }

    /// Random initialization: small angles, small readout, Xavier encoder.
    static QNetwork init(const QNetworkDims& dims, Rng& rng) {
        QNetwork net(dims);
        for (double& v : net.theta_.view(net.params_)) {
            v = rng.uniform(-0.2, 0.2);
        }
        for (double& v : net.readout_w_.view(net.params_)) {
            v = rng.uniform(-0.3, 0.3);
        }
        const double bound =
            std::sqrt(6.0 / (dims.in_dim + dims.num_qubits));
        for (double& v : net.enc_w_.view(net.params_)) {
            v = rng.uniform(-bound, bound);
        }
        return net;
    }

    const QNetworkDims& dims() const { return dims_; }
    int in_dim() const { return dims_.in_dim; }
    int out_dim() const { return dims_.num_actions; }

    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    ParamRange theta_range() const { return theta_; }
    ParamRange readout_w_range() const { return readout_w_; }
    ParamRange readout_b_range() const { return readout_b_; }
    ParamRange encoder_w_range() const { return enc_w_; }
    ParamRange encoder_b_range() const { return enc_b_; }

    std::vector<ParamGroup> param_groups() const {
        return {{ParamGroupKind::theta, theta_},
                {ParamGroupKind::readout,
                 {readout_w_.offset, readout_w_.len + readout_b_.len}},
                {ParamGroupKind::encoder,
                 {enc_w_.offset, enc_w_.len + enc_b_.len}}};
    }

    /// Q-values: readout_w^T <Z> + readout_b over the trunk features.
    std::vector<double> forward(std::span<const double> s) const {
        const auto ev = trunk(s);
        return readout(ev.zq);
    }

    /// Per-qubit <Z> features for the given state (each in [-1, 1]).
    std::vector<double> features(std::span<const double> s) const {
        return trunk(s).zq;
    }

    /**
     * @brief Full parameter gradient of sum_a downstream[a] * Q_a(s).
     *
     * Readout gradients are analytic; circuit and encoder gradients ride the
     * weighted-observable parameter shift in the trunk.
     */
    std::vector<double> param_grads(std::span<const double> s,
                                    std::span<const double> downstream) const {
        if (downstream.size() != static_cast<std::size_t>(dims_.num_actions)) {
            throw SizeError("QNetwork::param_grads: downstream length");
        }
        const auto ev = trunk(s);
        std::vector<double> g(params_.size(), 0.0);

        auto gw = readout_w_.view(g);
        auto gb = readout_b_.view(g);
        const auto w = readout_w_.view(params_);
        const int nq = dims_.num_qubits;
        const int na = dims_.num_actions;
        std::vector<double> dL_dz(static_cast<std::size_t>(nq), 0.0);
        for (int a = 0; a < na; ++a) {
            const double da = downstream[static_cast<std::size_t>(a)];
            gb[static_cast<std::size_t>(a)] = da;
            if (da == 0.0) {
                continue;
            }
            for (int q = 0; q < nq; ++q) {
                const std::size_t idx = static_cast<std::size_t>(q) *
                                            static_cast<std::size_t>(na) +
                                        static_cast<std::size_t>(a);
                gw[idx] = ev.zq[static_cast<std::size_t>(q)] * da;
                dL_dz[static_cast<std::size_t>(q)] += w[idx] * da;
            }
        }

        const auto tg = detail::trunk_backward(circuit_, ev, dL_dz,
                                               dims_.in_dim, nq, s);
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

    std::vector<double> readout(const std::vector<double>& zq) const {
        const auto w = readout_w_.view(params_);
        const auto b = readout_b_.view(params_);
        const int nq = dims_.num_qubits;
        const int na = dims_.num_actions;
        std::vector<double> q(b.begin(), b.end());
        for (int qu = 0; qu < nq; ++qu) {
            const double z = zq[static_cast<std::size_t>(qu)];
            if (z == 0.0) {
                continue;
            }
            const std::size_t row = static_cast<std::size_t>(qu) *
                                    static_cast<std::size_t>(na);
            for (int a = 0; a < na; ++a) {
                q[static_cast<std::size_t>(a)] +=
                    w[row + static_cast<std::size_t>(a)] * z;
            }
        }
        return q;
    }

    QNetworkDims dims_;
    AnsatzSpec ansatz_;
    qsim::Circuit circuit_;
    std::vector<double> params_;
    ParamRange theta_, readout_w_, readout_b_, enc_w_, enc_b_;
};

/// Spec-facing names.
inline std::vector<double> q_values(const QNetwork& net,
                                    std::span<const double> s) {
    return net.forward(s);
}
inline std::vector<double> model_grads(const QNetwork& net,
                                       std::span<const double> s,
                                       std::span<const double> downstream) {
    return net.param_grads(s, downstream);
}

} // namespace qcommit::qmodels
