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

// Test-only fixtures and oracles. Nothing here calls into the optimizers it
// is used to check.

#pragma once

#include <cmath>
#include <numbers>

namespace ltrine::reference {

// 40-digit values from tests/reference_values.py (mpmath), truncated.
inline constexpr double kInfoAt003Theta0 = 0.71693999348391157613;
inline constexpr double kInfoAtPublishedGamma1Theta0 = 0.90687277078770662558;
inline constexpr double kThetaCollapse = 0.056651482999328585432;
inline constexpr double kGamma1 = 0.061366885953412572906;
inline constexpr double kGamma1Angle = 0.25032971023933028634;
inline constexpr double kCoefficient = 29.590866701600674774;
inline constexpr double kInfoGamma1 = 0.90687217253861392874;
inline constexpr double kEnvelopeAt003 = 0.74233222878353795444;
inline constexpr double kInfoOpt001 = 0.63466429410980098933;
inline constexpr double kThetaOpt001 = 0.41130224871142475067;
inline constexpr double kInfoOpt003 = 0.73860962161176697903;
inline constexpr double kThetaOpt003 = 0.28767781054218552625;
inline constexpr double kInfoOpt005 = 0.84560769250666310004;
inline constexpr double kThetaOpt005 = 0.13767947942652521343;
inline constexpr double kThetaOpt0056651 = 0.0011604823696185771041;
// With gamma1 pinned to 0.061367.
inline constexpr double kSin2PhiAlpha003 = 0.51384625371523437948;
inline constexpr double kLiftedWeight003 = 0.64870246873116543995;
inline constexpr double kEnvelopeAt003Published = 0.74233222878341298599;

/// Closed-form overlaps <V_0(theta)|T_b(alpha)> = sqrt(2/3) sqrt(1-alpha) cos(theta - 2 pi b/3) + sqrt(alpha/3),
/// evaluated in long double without going through the vector constructors.
inline long double info_closed_form(long double alpha, long double theta) {
    const long double pi = std::numbers::pi_v<long double>;
    long double info = std::log2(3.0L);
    for (int b = 0; b < 3; ++b) {
        const long double o = std::sqrt(2.0L / 3.0L) * std::sqrt(1.0L - alpha) * std::cos(theta - 2.0L * pi * b / 3.0L) +
                              std::sqrt(alpha / 3.0L);
        const long double c = o * o;
        if (c > 0.0L) info += c * std::log2(c);
    }
    return info;
}

struct ScanResult {
    double theta;
    double info;
};

/// Exhaustive scan of theta over [0, pi/3] with the given step; keeps the first
/// maximum, then polishes it with the vertex of the parabola through the best
/// point and its neighbours (interior maxima only).
inline ScanResult exhaustive_theta_scan(double alpha, double step) {
    const double end = std::numbers::pi / 3.0;
    ScanResult best{0.0, static_cast<double>(info_closed_form(alpha, 0.0L))};
    for (long k = 1;; ++k) {
        const double t = step * static_cast<double>(k);
        if (t > end) break;
        const double v = static_cast<double>(info_closed_form(alpha, t));
        if (v > best.info) best = {t, v};
    }
    if (best.theta > 0.0 && best.theta + step <= end) {
        const long double l = info_closed_form(alpha, best.theta - step);
        const long double c = info_closed_form(alpha, best.theta);
        const long double r = info_closed_form(alpha, best.theta + step);
        const long double denom = l - 2.0L * c + r;
        if (denom < 0.0L) {
            const long double t = best.theta + 0.5L * step * (l - r) / denom;
            const long double v = info_closed_form(alpha, t);
            if (v > c) best = {static_cast<double>(t), static_cast<double>(v)};
        }
    }
    return best;
}

/// Second theta-derivative of the information at theta = 0 by central differences.
inline long double curvature_at_zero(long double alpha, long double h = 1e-3L) {
    return (info_closed_form(alpha, h) - 2.0L * info_closed_form(alpha, 0.0L) + info_closed_form(alpha, -h)) / (h * h);
}

} // namespace ltrine::reference
