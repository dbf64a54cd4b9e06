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

// Shannon mutual information between the lifted trines and a measurement,
// and the inner maximization over the V(theta) family.

#pragma once

#include "ltrine/errors.hpp"
#include "ltrine/geometry.hpp"
#include "ltrine/parallel.hpp"
#include "ltrine/scalar_search.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace ltrine {

inline const double kLog2Three = std::log2(3.0);

/// Probabilities below this are treated as exact zeros (0 log 0 = 0).
inline constexpr double kProbabilityFloor = 1e-300;

/// Grid spacing used to bracket the optimal azimuth.
inline constexpr std::size_t kThetaGridIntervals = 100; // pi/3 / 100 = pi/300

[[nodiscard]] inline double xlog2x(double x) { return x < kProbabilityFloor ? 0.0 : x * std::log2(x); }

/// Mutual information (bits) between a uniformly chosen trine T_b(alpha) and
/// the outcome of measuring in the basis V(theta). By the three-fold symmetry
/// only the overlaps with V_0 are needed:
///   I = log2 3 + sum_b <V_0|T_b>^2 log2 <V_0|T_b>^2.
[[nodiscard]] inline double symmetric_info(double alpha, double theta) {
    const TrineEnsemble ensemble(alpha);
    const auto v0 = von_neumann_basis(theta).vectors[0];
    double info = kLog2Three;
    for (const auto &t : ensemble.states()) {
        const double o = dot(v0, t);
        info += xlog2x(o * o);
    }
    return info;
}

/// Pure-state ensemble with arbitrary priors.
struct Ensemble {
    std::vector<RealVec3> states;
    std::vector<double> priors;

    [[nodiscard]] static Ensemble trines(double alpha) {
        const TrineEnsemble t(alpha);
        const auto p = TrineEnsemble::priors();
        return {{t.states().begin(), t.states().end()}, {p.begin(), p.end()}};
    }
};

/// Shannon mutual information (bits) between the state label and the POVM
/// outcome, from the joint p(b, i) = prior_b * w_i <v_i|s_b>^2.
[[nodiscard]] inline double general_info(const Ensemble &ensemble, const GeneralPovm &povm) {
    if (ensemble.states.size() != ensemble.priors.size())
        throw std::invalid_argument("general_info: one prior per state required");
    if (const double r = verify_completeness(povm); !(r <= kCompletenessTol))
        throw IncompletePovm("general_info: POVM element sum deviates from identity by " + std::to_string(r),
                             r);

    const std::size_t n = ensemble.states.size();
    std::vector<double> likelihood(n);
    double info = 0.0;
    for (const auto &e : povm.elements) {
        double outcome = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            const double o = dot(e.direction, ensemble.states[b]);
            likelihood[b] = e.weight * o * o;
            outcome += ensemble.priors[b] * likelihood[b];
        }
        if (outcome < kProbabilityFloor) continue;
        for (std::size_t b = 0; b < n; ++b) {
            const double joint = ensemble.priors[b] * likelihood[b];
            if (joint < kProbabilityFloor) continue;
            info += joint * std::log2(likelihood[b] / outcome);
        }
    }
    return info;
}

/// Von Neumann entropy (bits) of the ensemble average state; an upper bound on
/// general_info for every POVM.
[[nodiscard]] inline double holevo_bound(const Ensemble &ensemble) {
    Eigen::Matrix3d rho = Eigen::Matrix3d::Zero();
    for (std::size_t b = 0; b < ensemble.states.size(); ++b) {
        const auto &s = ensemble.states[b];
        const Eigen::Vector3d v(s.x, s.y, s.z);
        rho += ensemble.priors[b] * v * v.transpose();
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (const double lambda : solver.eigenvalues()) entropy -= xlog2x(lambda);
    return entropy;
}

struct ThetaOptimum {
    double theta_star{};
    double info_bits{};
};

/// Values closer than this count as a tie; ties go to theta = 0.
inline constexpr double kInfoTieTolerance = 1e-15;

/// Azimuth in [0, pi/3] maximizing symmetric_info(alpha, .), located to within tol.
[[nodiscard]] inline ThetaOptimum optimal_theta(double alpha, double tol = 1e-10) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("optimal_theta: alpha must lie in [0, 1], got " + std::to_string(alpha));
    if (!(tol > 0.0)) throw std::invalid_argument("optimal_theta: tol must be positive");
    const auto best = grid_bracket_maximize([alpha](double t) { return symmetric_info(alpha, t); }, 0.0,
                                            kThirdTurn / 2.0, kThetaGridIntervals, tol);
    if (best.x != 0.0) {
        const double at_zero = symmetric_info(alpha, 0.0);
        if (at_zero >= best.value - kInfoTieTolerance) return {0.0, at_zero};
    }
    return {best.x, best.value};
}

/// Sample of the best-V(theta) information curve.
struct InfoCurvePoint {
    double alpha_prime{};
    double theta_star{};
    double info_bits{};
};

[[nodiscard]] inline std::vector<InfoCurvePoint> info_curve(std::span<const double> alpha_grid, double tol = 1e-10,
                                                            Threads threads = {}) {
    for (const double a : alpha_grid)
        if (!(a >= 0.0 && a <= 1.0)) throw DomainError("info_curve: grid value outside [0, 1]");
    return parallel_map(
        alpha_grid.size(),
        [&](std::size_t i) {
            const auto opt = optimal_theta(alpha_grid[i], tol);
            return InfoCurvePoint{alpha_grid[i], opt.theta_star, opt.info_bits};
        },
        threads);
}

/// Smallest alpha in [lo, hi] at which the optimal azimuth has collapsed to 0,
/// by bisection on that predicate. Assumes theta* > 0 at lo and theta* = 0 at hi.
[[nodiscard]] inline double theta_zero_crossing(double tol = 1e-9, double lo = 0.0, double hi = 0.2) {
    auto collapsed = [](double a) { return optimal_theta(a).theta_star == 0.0; };
    if (collapsed(lo) || !collapsed(hi))
        throw DomainError("theta_zero_crossing: [lo, hi] does not bracket the collapse of theta*");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (collapsed(mid) ? hi : lo) = mid;
    }
    return hi;
}

} // namespace ltrine
