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
 * @file rng.hpp
 * Deterministic random streams.
 *
 * All stochastic behaviour in the project flows through this wrapper so that
 * a (seed, stream-tag) pair fully determines every draw, independent of the
 * standard library's distribution implementations. Uniform and normal
 * variates are produced with explicit bit-level transforms of the mt19937_64
 * output, which the standard pins down exactly.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qcommit {

/// splitmix64 mixing step; used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a tag into a seed, giving a decorrelated child seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(seed ^ splitmix64(tag));
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Child stream keyed by `tag`; its draws are independent of the
    /// parent's position, so streams may be created in any order.
    Rng stream(std::uint64_t tag) const { return Rng(derive_seed(seed_, tag)); }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    int uniform_int(int n) {
        return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
    }

    /// Standard normal via Box-Muller (cosine branch only, no cached state).
    double normal() {
        const double u1 = 1.0 - uniform(); // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Standard normal conditioned on |z| <= cut, by rejection.
    double truncated_normal(double cut) {
        for (;;) {
            const double z = normal();
            if (std::abs(z) <= cut) {
                return z;
            }
        }
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

} // namespace qcommit
