// Shared helpers for the test suites: finite-difference oracles and small
// deterministic generators. Everything here is test-only and independent of
// the implementation paths it checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "qcommit/rng.hpp"

namespace testutil {

/// Central finite difference d f / d x[k] with step h.
template <class F>
double central_diff(F&& f, std::vector<double>& x, std::size_t k, double h) {
    const double saved = x[k];
    x[k] = saved + h;
    const double fp = f();
    x[k] = saved - h;
    const double fm = f();
    x[k] = saved;
    return (fp - fm) / (2.0 * h);
}

/// Finite-difference gradient over a whole vector.
template <class F>
std::vector<double> fd_gradient(F&& f, std::vector<double>& x, double h) {
    std::vector<double> g(x.size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
        g[k] = central_diff(f, x, k, h);
    }
    return g;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

} // namespace testutil
