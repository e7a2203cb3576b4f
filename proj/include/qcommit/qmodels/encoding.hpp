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
 * @file encoding.hpp
 * Classical-to-quantum data loading: amplitude encoding of normalized value
 * vectors and the dimensionality-reducing linear layer whose output feeds
 * the circuit's angle encoding.
 */
#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qcommit/qsim/statevector.hpp"

namespace qcommit::qmodels {

/**
 * @brief Loads a classical vector directly into quantum amplitudes,
 * c_i = L_i / ||L||_2.
 *
 * The length must be a power of two (one amplitude per basis state) and at
 * least one value must be nonzero.
 */
inline qsim::Statevector amplitude_encode(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw SizeError("amplitude_encode: length " + std::to_string(n) +
                        " is not a power of two");
    }
    int num_qubits = 0;
    while ((std::size_t{1} << num_qubits) < n) {
        ++num_qubits;
    }
    num_qubits = std::max(num_qubits, 1); // a length-2 vector is one qubit
    if (num_qubits > qsim::kMaxQubits) {
        throw SizeError("amplitude_encode: too many qubits");
    }
    double norm_sq = 0.0;
    for (double v : values) {
        norm_sq += v * v;
    }
    if (norm_sq <= 0.0) {
        throw DegenerateInputError("amplitude_encode: all-zero input");
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    qsim::Statevector sv;
    sv.num_qubits = num_qubits;
    sv.amplitudes.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        sv.amplitudes[i] = {values[i] * inv, 0.0};
    }
    return sv;
}

/// Linear layer z = W^T x + b followed by L2 normalization, so the output
/// satisfies the quantum normalization condition exactly.
struct LinearEncoder {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<double> weights; // in_dim x out_dim, row-major (w[i*out+j])
    std::vector<double> bias;    // out_dim
};

namespace detail {

inline void affine_into(std::span<const double> w, std::span<const double> b,
                        int in_dim, int out_dim, std::span<const double> x,
                        std::vector<double>& z) {
    z.assign(static_cast<std::size_t>(out_dim), 0.0);
    for (int j = 0; j < out_dim; ++j) {
        z[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < in_dim; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        if (xi == 0.0) {
            continue;
        }
        const std::size_t row = static_cast<std::size_t>(i) *
                                static_cast<std::size_t>(out_dim);
        for (int j = 0; j < out_dim; ++j) {
            z[static_cast<std::size_t>(j)] +=
                w[row + static_cast<std::size_t>(j)] * xi;
        }
    }
}

inline constexpr double kNormFloor = 1e-12;

/// Normalizes z in place, returning ||z||. Below the floor the output falls
/// back to the uniform unit vector and the returned norm is 0.
inline double normalize_or_uniform(std::vector<double>& z) {
    double norm_sq = 0.0;
    for (double v : z) {
        norm_sq += v * v;
    }
    const double norm = std::sqrt(norm_sq);
    if (norm < kNormFloor) {
        const double u = 1.0 / std::sqrt(static_cast<double>(z.size()));
        for (double& v : z) {
            v = u;
        }
        return 0.0;
    }
    for (double& v : z) {
        v /= norm;
    }
    return norm;
}

} // namespace detail

/// y = normalize(W^T x + b); unit norm within 1e-10 by construction.
inline std::vector<double> encode_reduce(const LinearEncoder& enc,
                                         std::span<const double> x) {
    if (static_cast<int>(x.size()) != enc.in_dim) {
        throw SizeError("encode_reduce: input length " +
                        std::to_string(x.size()) + " != in_dim " +
                        std::to_string(enc.in_dim));
    }
    std::vector<double> z;
    detail::affine_into(enc.weights, enc.bias, enc.in_dim, enc.out_dim, x, z);
    detail::normalize_or_uniform(z);
    return z;
}

} // namespace qcommit::qmodels
