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
 * @file network.hpp
 * Linearized network evaluation.
 *
 * Active flows use the DC approximation: a PTDF matrix maps net MW
 * injections (bus 0 is the slack and absorbs any residual) to branch flows.
 * Voltage magnitudes use a LinDistFlow-style linear model: along a BFS
 * spanning tree from the slack, each branch drops the squared-magnitude
 * proxy by 2*(r*P + x*Q) in p.u., with reactive flows approximated by the
 * same distribution factors. Violations are sums of linear exceedances,
 * zero inside the feasible box.
 */
#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcommit/grid/case.hpp"

namespace qcommit::grid {

struct FlowMatrices {
    Eigen::MatrixXd ptdf;        // branches x buses, slack column zero
    Eigen::MatrixXd volt_sens_p; // buses x buses, dv per MW injected
    Eigen::MatrixXd volt_sens_q; // buses x buses, dv per MVAr injected
};

inline FlowMatrices flow_matrices(const GridCase& c) {
    const int nbus = static_cast<int>(c.buses.size());
    const int nbr = static_cast<int>(c.branches.size());
    FlowMatrices m;
    m.ptdf = Eigen::MatrixXd::Zero(nbr, nbus);
    m.volt_sens_p = Eigen::MatrixXd::Zero(nbus, nbus);
    m.volt_sens_q = Eigen::MatrixXd::Zero(nbus, nbus);
    if (nbr == 0) {
        return m; // single-bus case: no flows, flat voltage
    }

    // Reduced nodal susceptance matrix (slack row/column removed).
    Eigen::MatrixXd b_red = Eigen::MatrixXd::Zero(nbus - 1, nbus - 1);
    for (const auto& br : c.branches) {
        const double y = 1.0 / br.x;
        const int f = br.from;
        const int t = br.to;
        if (f > 0) {
            b_red(f - 1, f - 1) += y;
        }
        if (t > 0) {
            b_red(t - 1, t - 1) += y;
        }
        if (f > 0 && t > 0) {
            b_red(f - 1, t - 1) -= y;
            b_red(t - 1, f - 1) -= y;
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b_red);
    if (!lu.isInvertible()) {
        throw TopologyError(
            "flow_matrices: singular susceptance matrix (islanded bus?)");
    }
    const Eigen::MatrixXd b_inv = lu.inverse();

    // PTDF row for branch (f,t): flow = (theta_f - theta_t)/x with
    // theta = B^-1 * injections (angles in MW-compatible units).
    for (int k = 0; k < nbr; ++k) {
        const auto& br = c.branches[static_cast<std::size_t>(k)];
        const double y = 1.0 / br.x;
        for (int b = 1; b < nbus; ++b) {
            double theta_f = (br.from > 0) ? b_inv(br.from - 1, b - 1) : 0.0;
            double theta_t = (br.to > 0) ? b_inv(br.to - 1, b - 1) : 0.0;
            m.ptdf(k, b) = y * (theta_f - theta_t);
        }
    }

    // BFS spanning tree from the slack; path matrices accumulate signed
    // r and x along the unique tree path to each bus.
    std::vector<int> parent(static_cast<std::size_t>(nbus), -1);
    std::vector<int> parent_branch(static_cast<std::size_t>(nbus), -1);
    std::vector<int> parent_dir(static_cast<std::size_t>(nbus), 0);
    std::vector<char> seen(static_cast<std::size_t>(nbus), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(nbus));
    seen[0] = 1;
    order.push_back(0);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int u = order[head];
        for (int k = 0; k < nbr; ++k) {
            const auto& br = c.branches[static_cast<std::size_t>(k)];
            int v = -1;
            int dir = 0;
            if (br.from == u) {
                v = br.to;
                dir = +1; // flow from -> to points away from the slack
            } else if (br.to == u) {
                v = br.from;
                dir = -1;
            } else {
                continue;
            }
            if (seen[static_cast<std::size_t>(v)]) {
                continue;
            }
            seen[static_cast<std::size_t>(v)] = 1;
            parent[static_cast<std::size_t>(v)] = u;
            parent_branch[static_cast<std::size_t>(v)] = k;
            parent_dir[static_cast<std::size_t>(v)] = dir;
            order.push_back(v);
        }
    }

    Eigen::MatrixXd path_r = Eigen::MatrixXd::Zero(nbus, nbr);
    Eigen::MatrixXd path_x = Eigen::MatrixXd::Zero(nbus, nbr);
    for (std::size_t i = 1; i < order.size(); ++i) {
        const int v = order[i];
        const int p = parent[static_cast<std::size_t>(v)];
        const int k = parent_branch[static_cast<std::size_t>(v)];
        const int dir = parent_dir[static_cast<std::size_t>(v)];
        const auto& br = c.branches[static_cast<std::size_t>(k)];
        path_r.row(v) = path_r.row(p);
        path_x.row(v) = path_x.row(p);
        path_r(v, k) += dir * br.r;
        path_x(v, k) += dir * br.x;
    }

    // dv_n = -2/base * sum over the path of (r * P_flow + x * Q_flow),
    // with Q flows sharing the active-power distribution factors.
    const double scale = 2.0 / c.base_mva;
    m.volt_sens_p = -scale * path_r * m.ptdf;
    m.volt_sens_q = -scale * path_x * m.ptdf;
    return m;
}

struct NetworkEval {
    std::vector<double> flows;    // per branch, MW
    std::vector<double> voltages; // per bus, p.u.
    double branch_violation = 0.0;  // B^D, MW
    double voltage_violation = 0.0; // V^D, p.u.
};

/**
 * @brief Flows, voltages, and violation sums for the given injections.
 *
 * The slack absorbs any injection residual; violations are outputs, never
 * errors.
 */
inline NetworkEval evaluate_network(const GridCase& c, const FlowMatrices& m,
                                    std::span<const double> injections,
                                    std::span<const double> q_injections) {
    const int nbus = static_cast<int>(c.buses.size());
    const int nbr = static_cast<int>(c.branches.size());
    if (static_cast<int>(injections.size()) != nbus ||
        static_cast<int>(q_injections.size()) != nbus) {
        throw SizeError("evaluate_network: injection vector length");
    }
    Eigen::Map<const Eigen::VectorXd> inj(injections.data(), nbus);
    Eigen::Map<const Eigen::VectorXd> qinj(q_injections.data(), nbus);

    NetworkEval ev;
    ev.flows.assign(static_cast<std::size_t>(nbr), 0.0);
    ev.voltages.assign(static_cast<std::size_t>(nbus), 1.0);
    if (nbr > 0) {
        const Eigen::VectorXd flows = m.ptdf * inj;
        const Eigen::VectorXd dv = m.volt_sens_p * inj + m.volt_sens_q * qinj;
        for (int k = 0; k < nbr; ++k) {
            ev.flows[static_cast<std::size_t>(k)] = flows(k);
            const double excess =
                std::abs(flows(k)) -
                c.branches[static_cast<std::size_t>(k)].flow_limit;
            if (excess > 0.0) {
                ev.branch_violation += excess;
            }
        }
        for (int b = 0; b < nbus; ++b) {
            ev.voltages[static_cast<std::size_t>(b)] = 1.0 + dv(b);
        }
    }
    for (int b = 0; b < nbus; ++b) {
        const auto& bus = c.buses[static_cast<std::size_t>(b)];
        const double v = ev.voltages[static_cast<std::size_t>(b)];
        ev.voltage_violation += std::max(0.0, bus.voltage_min - v);
        ev.voltage_violation += std::max(0.0, v - bus.voltage_max);
    }
    return ev;
}

} // namespace qcommit::grid
