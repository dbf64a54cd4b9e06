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

// Outer optimization over lift mixtures.
//
// Measuring with a set of triples is equivalent to first applying the partial
// measurement {sqrt(p_i) M(phi_i)}, which maps every trine T_b(alpha) to
// T_b(alpha'_i) with probability p'_i independent of b, and then measuring in
// V(theta_i). The first stage reveals nothing about b, so the information is
// sum_i p'_i symmetric_info(alpha'_i, theta_i). Since sum_i p'_i alpha'_i = alpha,
// the accessible information is the upper concave envelope of the best-V(theta)
// curve; for small alpha that envelope is the chord between alpha' = 0 and
// alpha' = gamma1.

#pragma once

#include "ltrine/errors.hpp"
#include "ltrine/geometry.hpp"
#include "ltrine/info.hpp"
#include "ltrine/scalar_search.hpp"

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace ltrine {

/// Published tangency point, for pinning fixtures.
inline constexpr double kPublishedGamma1 = 0.061367;

/// Upper end of the regime handled here; behaviour beyond it is not modelled.
inline constexpr double kVonNeumannRegimeLimit = 8.0 / 9.0;

/// Search window for the chord-slope maximization.
inline constexpr double kGamma1SearchMax = 0.2;
inline constexpr std::size_t kGamma1GridIntervals = 100;

namespace detail {

inline void require_alpha(double alpha, const char *op) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError(std::string(op) + ": alpha must lie in [0, 1], got " + std::to_string(alpha));
}

/// (alpha sin^2 phi, (1 - alpha) cos^2 phi / 2): the lifted and planar parts of
/// the first-stage outcome probability, per unit triple weight and up to a factor 3.
inline std::pair<double, double> lift_split(double alpha, double phi) {
    require_lift_angle(phi);
    const auto [c, s] = lift_cos_sin(phi);
    return {alpha * s * s, 0.5 * (1.0 - alpha) * c * c};
}

} // namespace detail

/// Lift parameter of the post-measurement trine after applying M(phi) to T(alpha).
[[nodiscard]] inline double alpha_prime(double alpha, double phi) {
    detail::require_alpha(alpha, "alpha_prime");
    const auto [lifted, planar] = detail::lift_split(alpha, phi);
    if (lifted + planar == 0.0) throw DomainError("alpha_prime: M(phi) annihilates the trine (0/0)");
    return lifted / (lifted + planar);
}

/// Probability of the first-stage outcome with triple weight p and lift angle phi.
[[nodiscard]] inline double p_prime(double p, double alpha, double phi) {
    detail::require_alpha(alpha, "p_prime");
    const auto [lifted, planar] = detail::lift_split(alpha, phi);
    return 3.0 * p * (lifted + planar);
}

/// One branch of the two-stage measurement.
struct MixtureBranch {
    double p_prime{};
    double alpha_prime{};
    double theta{};
};

/// First-stage pushforward of each triple. Branches with p' = 0 never occur and are omitted.
[[nodiscard]] inline std::vector<MixtureBranch> pushforward(double alpha, std::span<const SymmetricTriple> triples) {
    std::vector<MixtureBranch> out;
    out.reserve(triples.size());
    for (const auto &t : triples) {
        const double pp = p_prime(t.p, alpha, t.phi);
        if (pp == 0.0) continue;
        out.push_back({pp, alpha_prime(alpha, t.phi), t.theta});
    }
    return out;
}

/// Lift angle mapping T(alpha) onto T(gamma1):
///   sin^2 phi = (1 - alpha) / (1 + alpha (2 - 3 gamma1) / gamma1).
[[nodiscard]] inline double phi_alpha(double alpha, double gamma1) {
    if (!(gamma1 > 0.0 && gamma1 < 1.0)) throw DomainError("phi_alpha: gamma1 must lie in (0, 1)");
    if (!(alpha >= 0.0 && alpha <= gamma1))
        throw DomainError("phi_alpha: alpha must lie in [0, gamma1], got " + std::to_string(alpha));
    const double coefficient = (2.0 - 3.0 * gamma1) / gamma1;
    const double s2 = (1.0 - alpha) / (1.0 + alpha * coefficient);
    return std::asin(std::sqrt(s2));
}

/// [I_opt(a) - I_opt(0)] / a, the slope of the chord from the planar end of the curve.
[[nodiscard]] inline double chord_slope(double alpha, double planar_info, double tol = 1e-10) {
    return (optimal_theta(alpha, tol).info_bits - planar_info) / alpha;
}

/// Tangency point of the chord from (0, I_opt(0)) to the best-V(theta) curve,
/// i.e. the maximizer of chord_slope over (0, 0.2].
[[nodiscard]] inline double find_gamma1(double tol = 1e-9) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_gamma1: tol must be positive");
    const double planar = optimal_theta(0.0).info_bits;
    const double step = kGamma1SearchMax / static_cast<double>(kGamma1GridIntervals);
    const auto best = grid_bracket_maximize([planar](double a) { return chord_slope(a, planar); }, step,
                                            kGamma1SearchMax, kGamma1GridIntervals - 1, tol);
    return best.x;
}

enum class Branch {
    six_element,       ///< 0 < alpha < gamma1: triples (p1, 0, pi/6) and (p2, phi_alpha, 0)
    planar_degenerate, ///< alpha = 0: the lifted triple collapses onto the z axis
    gamma1_degenerate, ///< alpha = gamma1: the planar weight vanishes, leaving V(0)
    von_neumann,       ///< gamma1 < alpha < 8/9: the V(0) basis alone
};

[[nodiscard]] constexpr const char *to_string(Branch b) {
    switch (b) {
    case Branch::six_element: return "six_element";
    case Branch::planar_degenerate: return "planar_degenerate";
    case Branch::gamma1_degenerate: return "gamma1_degenerate";
    case Branch::von_neumann: return "von_neumann";
    }
    return "unknown";
}

struct EnvelopeSolution {
    double alpha{};
    double gamma1{};
    double info_bits{};
    Branch branch{Branch::six_element};
    SymmetricPovm povm;
    std::vector<MixtureBranch> mixture;

    [[nodiscard]] bool degenerate() const {
        return branch == Branch::planar_degenerate || branch == Branch::gamma1_degenerate;
    }
};

/// alpha within this distance of gamma1 is treated as the degenerate endpoint.
inline constexpr double kBranchPointTol = 1e-12;

/// Optimal symmetric measurement for the lifted trines at alpha, given gamma1.
/// info_bits is the chain-rule value sum_i p'_i symmetric_info(alpha'_i, theta_i).
[[nodiscard]] inline EnvelopeSolution optimal_povm(double alpha, double gamma1) {
    detail::require_alpha(alpha, "optimal_povm");
    if (alpha >= kVonNeumannRegimeLimit)
        throw UnsupportedRegimeError("optimal_povm: alpha >= 8/9 is outside the supported regime");
    if (!(gamma1 > 0.0 && gamma1 < kVonNeumannRegimeLimit))
        throw DomainError("optimal_povm: gamma1 must lie in (0, 8/9)");

    EnvelopeSolution sol;
    sol.alpha = alpha;
    sol.gamma1 = gamma1;
    if (alpha == 0.0) {
        sol.branch = Branch::planar_degenerate;
        sol.povm.triples = {{2.0 / 3.0, 0.0, kPi / 6.0}, {1.0 / 3.0, kHalfPi, 0.0}};
    } else if (alpha >= gamma1 - kBranchPointTol) {
        sol.branch = alpha <= gamma1 + kBranchPointTol ? Branch::gamma1_degenerate : Branch::von_neumann;
        sol.povm.triples = {{1.0, kNeutralLift, 0.0}};
    } else {
        const double phi = phi_alpha(alpha, gamma1);
        const double s = std::sin(phi);
        const double lifted_weight = 1.0 / (3.0 * s * s);
        sol.branch = Branch::six_element;
        sol.povm.triples = {{1.0 - lifted_weight, 0.0, kPi / 6.0}, {lifted_weight, phi, 0.0}};
    }
    sol.mixture = pushforward(alpha, sol.povm.triples);
    for (const auto &m : sol.mixture) sol.info_bits += m.p_prime * symmetric_info(m.alpha_prime, m.theta);
    return sol;
}

/// Accessible information on [0, gamma1]: the chord
///   I_opt(0) + (alpha / gamma1) (I_opt(gamma1) - I_opt(0)),
/// together with the measurement attaining it.
[[nodiscard]] inline EnvelopeSolution accessible_information(double alpha, double gamma1, double tol = 1e-10) {
    if (!(alpha >= 0.0 && alpha <= gamma1 + kBranchPointTol))
        throw DomainError("accessible_information: alpha must lie in [0, gamma1], got " + std::to_string(alpha));
    auto sol = optimal_povm(std::min(alpha, gamma1), gamma1);
    sol.alpha = alpha;
    const double planar = optimal_theta(0.0, tol).info_bits;
    const double lifted = optimal_theta(gamma1, tol).info_bits;
    sol.info_bits = planar + (alpha / gamma1) * (lifted - planar);
    return sol;
}

/// |general_info of the assembled 3m-element POVM - sum_i p'_i symmetric_info(alpha'_i, theta_i)|.
[[nodiscard]] inline double two_stage_check(double alpha, std::span<const SymmetricTriple> triples) {
    const auto povm = assemble_symmetric_povm(triples);
    const double direct = general_info(Ensemble::trines(alpha), povm);
    double decomposed = 0.0;
    for (const auto &m : pushforward(alpha, triples))
        decomposed += m.p_prime * symmetric_info(m.alpha_prime, m.theta);
    return std::abs(direct - decomposed);
}

} // namespace ltrine
