// Copyright 2026 The ltrine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace ltrine {

struct ScalarOptimum {
    double x{};
    double value{};
};

namespace detail {
inline constexpr double kInvPhi = 0.6180339887498948482; // (sqrt(5) - 1) / 2
}

/// Golden-section maximization of f on [lo, hi] until the bracket is narrower
/// than tol. On equal values the left probe wins, so flat regions drift toward lo.
template <class F>
[[nodiscard]] ScalarOptimum golden_section_maximize(F &&f, double lo, double hi, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("golden_section_maximize: tol must be positive");
    double a = lo;
    double b = hi;
    double c = b - detail::kInvPhi * (b - a);
    double d = a + detail::kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - detail::kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + detail::kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

/// Maximizes f on [lo, hi]: scans `intervals + 1` equally spaced points,
/// brackets the best one by its neighbours and refines with golden section.
/// The refined point only replaces the grid point when strictly better, and the
/// grid scan keeps the first maximum, so ties resolve toward lo. This handles
/// maxima sitting on the boundary without derivative information.
template <class F>
[[nodiscard]] ScalarOptimum grid_bracket_maximize(F &&f, double lo, double hi, std::size_t intervals,
                                                  double tol) {
    if (intervals == 0) throw std::invalid_argument("grid_bracket_maximize: need at least one interval");
    if (!(hi >= lo)) throw std::invalid_argument("grid_bracket_maximize: empty interval");
    const double h = (hi - lo) / static_cast<double>(intervals);
    auto grid = [&](std::size_t k) { return k == intervals ? hi : lo + h * static_cast<double>(k); };

    std::size_t best_k = 0;
    double best_v = f(lo);
    for (std::size_t k = 1; k <= intervals; ++k) {
        const double v = f(grid(k));
        if (v > best_v) {
            best_v = v;
            best_k = k;
        }
    }
    const double left = best_k == 0 ? lo : grid(best_k - 1);
    const double right = best_k == intervals ? hi : grid(best_k + 1);
    ScalarOptimum best{grid(best_k), best_v};
    if (right - left > tol) {
        const auto refined = golden_section_maximize(f, left, right, tol);
        if (refined.value > best.value) best = refined;
    }
    return best;
}

} // namespace ltrine
