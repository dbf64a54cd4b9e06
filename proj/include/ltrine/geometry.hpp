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

// States, symmetric measurement triples, lift matrices and the von Neumann
// bases used throughout. Every constructor here is closed form; nothing in
// this header iterates or optimizes.
//
// Conventions:
//  * angles are radians;
//  * index b in {0, 1, 2} carries azimuth offset {0, +2pi/3, -2pi/3};
//  * a rank-1 POVM element is stored as (weight w, unit direction v) and
//    stands for the operator w v v^T.

#pragma once

#include "ltrine/errors.hpp"
#include "ltrine/vec3.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ltrine {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kThirdTurn = 2.0 * std::numbers::pi / 3.0;
inline constexpr double kSqrt3 = std::numbers::sqrt3;

/// Lift angle at which sin^2(phi) = 1/3; M(phi) is the identity there.
inline const double kNeutralLift = std::asin(1.0 / std::numbers::sqrt3);

/// Tolerance on sum(p) = 1 and sum(p sin^2 phi) = 1/3, and on POVM completeness.
inline constexpr double kCompletenessTol = 1e-10;

inline constexpr std::array<double, 3> kAzimuthOffset = {0.0, kThirdTurn, -kThirdTurn};

namespace detail {

inline void require_index(int b) {
    if (b < 0 || b > 2) throw DomainError("trine index must be 0, 1 or 2");
}

inline void require_lift_angle(double phi) {
    if (!(phi >= 0.0 && phi <= kHalfPi))
        throw DomainError("lift angle phi must lie in [0, pi/2], got " + std::to_string(phi));
}

/// (cos phi, sin phi) with the endpoints of [0, pi/2] exact.
inline std::pair<double, double> lift_cos_sin(double phi) {
    if (phi == 0.0) return {1.0, 0.0};
    if (phi == kHalfPi) return {0.0, 1.0};
    return {std::cos(phi), std::sin(phi)};
}

} // namespace detail

// --------------------------------------------------------------------------
// Lifted trine ensemble
// --------------------------------------------------------------------------

/// T_b(alpha): the planar trine state b lifted out of the plane by arcsin(sqrt(alpha)).
[[nodiscard]] inline RealVec3 trine_state(double alpha, int b) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("lift parameter alpha must lie in [0, 1], got " + std::to_string(alpha));
    detail::require_index(b);
    const double r = std::sqrt(1.0 - alpha);
    const double z = std::sqrt(alpha);
    switch (b) {
    case 0:
        return {r, 0.0, z};
    case 1:
        return {-0.5 * r, 0.5 * kSqrt3 * r, z};
    default:
        return {-0.5 * r, -0.5 * kSqrt3 * r, z};
    }
}

/// Three lifted trine states with uniform priors.
class TrineEnsemble {
  public:
    explicit TrineEnsemble(double alpha)
        : alpha_(alpha),
          states_{trine_state(alpha, 0), trine_state(alpha, 1), trine_state(alpha, 2)} {}

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] const std::array<RealVec3, 3> &states() const noexcept { return states_; }
    [[nodiscard]] const RealVec3 &state(int b) const {
        detail::require_index(b);
        return states_[static_cast<std::size_t>(b)];
    }
    [[nodiscard]] static constexpr std::array<double, 3> priors() noexcept {
        return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    }

  private:
    double alpha_;
    std::array<RealVec3, 3> states_;
};

// --------------------------------------------------------------------------
// Symmetric measurement triples
// --------------------------------------------------------------------------

/// P_0, P_1, P_2 for lift angle phi and azimuth theta. All unit vectors.
[[nodiscard]] inline std::array<RealVec3, 3> povm_triple_vectors(double phi, double theta) {
    detail::require_lift_angle(phi);
    const auto [c, s] = detail::lift_cos_sin(phi);
    std::array<RealVec3, 3> out;
    for (std::size_t b = 0; b < 3; ++b) {
        const double az = theta + kAzimuthOffset[b];
        out[b] = {c * std::cos(az), c * std::sin(az), s};
    }
    return out;
}

/// One weighted triple sqrt(p) P_b(phi, theta), b = 0..2.
struct SymmetricTriple {
    double p{};
    double phi{};
    double theta{};

    [[nodiscard]] std::array<RealVec3, 3> scaled_vectors() const {
        auto v = povm_triple_vectors(phi, theta);
        const double scale = std::sqrt(p);
        for (auto &x : v) x = scale * x;
        return v;
    }
};

/// Residuals of the two linear constraints a set of triples must meet to form a POVM.
struct ConstraintResiduals {
    double weight{};  ///< |sum p - 1|
    double lift{};    ///< |sum p sin^2 phi - 1/3|

    [[nodiscard]] bool satisfied(double tol = kCompletenessTol) const {
        return weight <= tol && lift <= tol;
    }
};

[[nodiscard]] inline ConstraintResiduals constraint_residuals(std::span<const SymmetricTriple> triples) {
    double total = 0.0;
    double lift = 0.0;
    for (const auto &t : triples) {
        const double s = detail::lift_cos_sin(t.phi).second;
        total += t.p;
        lift += t.p * s * s;
    }
    return {std::abs(total - 1.0), std::abs(lift - 1.0 / 3.0)};
}

/// A list of triples that satisfies the POVM constraints.
struct SymmetricPovm {
    std::vector<SymmetricTriple> triples;

    [[nodiscard]] ConstraintResiduals residuals() const { return constraint_residuals(triples); }
};

// --------------------------------------------------------------------------
// General rank-1 POVMs
// --------------------------------------------------------------------------

struct PovmElement {
    double weight{};
    RealVec3 direction;
};

/// Arbitrary weighted list of rank-1 elements.
struct GeneralPovm {
    std::vector<PovmElement> elements;

    [[nodiscard]] Matrix3 element_sum() const {
        Matrix3 m{};
        for (const auto &e : elements) add_outer(m, e.weight, e.direction);
        return m;
    }
};

/// Max-entry deviation of sum w_i v_i v_i^T from the identity.
[[nodiscard]] inline double verify_completeness(const GeneralPovm &povm) {
    return max_abs_diff(povm.element_sum(), identity3());
}

/// Builds a POVM from raw (unnormalized) element vectors u_i = sqrt(w_i) v_i.
/// Zero vectors are dropped.
[[nodiscard]] inline GeneralPovm povm_from_vectors(std::span<const RealVec3> vectors) {
    GeneralPovm out;
    out.elements.reserve(vectors.size());
    for (const auto &u : vectors) {
        const double n = u.norm();
        if (n == 0.0) continue;
        out.elements.push_back({n * n, (1.0 / n) * u});
    }
    return out;
}

/// Expands triples into their 3m rank-1 elements; each vector of a triple
/// carries the triple weight p.
[[nodiscard]] inline GeneralPovm assemble_symmetric_povm(std::span<const SymmetricTriple> triples) {
    for (const auto &t : triples)
        if (!(t.p > 0.0)) throw DomainError("triple weights must be strictly positive");
    const auto r = constraint_residuals(triples);
    if (!r.satisfied())
        throw ConstraintViolation("triples do not form a POVM: |sum p - 1| = " +
                                      std::to_string(r.weight) + ", |sum p sin^2 phi - 1/3| = " +
                                      std::to_string(r.lift),
                                  r.weight, r.lift);
    GeneralPovm out;
    out.elements.reserve(3 * triples.size());
    for (const auto &t : triples)
        for (const auto &v : povm_triple_vectors(t.phi, t.theta)) out.elements.push_back({t.p, v});
    return out;
}

[[nodiscard]] inline GeneralPovm assemble_symmetric_povm(const SymmetricPovm &povm) {
    return assemble_symmetric_povm(std::span<const SymmetricTriple>(povm.triples));
}

// --------------------------------------------------------------------------
// Two-stage decomposition: lift matrices and the V(theta) basis
// --------------------------------------------------------------------------

/// M(phi) = diag(sqrt(3/2) cos phi, sqrt(3/2) cos phi, sqrt(3) sin phi).
struct LiftMatrix {
    double phi{};
    std::array<double, 3> diagonal{};

    [[nodiscard]] Matrix3 matrix() const {
        Matrix3 m{};
        for (std::size_t i = 0; i < 3; ++i) m[i][i] = diagonal[i];
        return m;
    }

    /// Row vector times M, equivalently M times column vector (M is diagonal).
    [[nodiscard]] RealVec3 apply(const RealVec3 &v) const {
        return {diagonal[0] * v.x, diagonal[1] * v.y, diagonal[2] * v.z};
    }
};

[[nodiscard]] inline LiftMatrix lift_matrix(double phi) {
    detail::require_lift_angle(phi);
    const auto [c, s] = detail::lift_cos_sin(phi);
    const double planar = std::sqrt(1.5) * c;
    return {phi, {planar, planar, kSqrt3 * s}};
}

/// Orthonormal basis V_b(theta) with every vector at height 1/sqrt(3).
struct VonNeumannBasis {
    double theta{};
    std::array<RealVec3, 3> vectors;

    [[nodiscard]] GeneralPovm povm() const {
        GeneralPovm out;
        for (const auto &v : vectors) out.elements.push_back({1.0, v});
        return out;
    }
};

[[nodiscard]] inline VonNeumannBasis von_neumann_basis(double theta) {
    const double planar = std::sqrt(2.0 / 3.0);
    const double height = 1.0 / kSqrt3;
    VonNeumannBasis out{theta, {}};
    for (std::size_t b = 0; b < 3; ++b) {
        const double az = theta + kAzimuthOffset[b];
        out.vectors[b] = {planar * std::cos(az), planar * std::sin(az), height};
    }
    return out;
}

/// max_b max-entry |V_b(theta) M(phi) - P_b(phi, theta)|.
[[nodiscard]] inline double factorization_check(double phi, double theta) {
    const auto m = lift_matrix(phi);
    const auto basis = von_neumann_basis(theta);
    const auto p = povm_triple_vectors(phi, theta);
    double worst = 0.0;
    for (std::size_t b = 0; b < 3; ++b)
        worst = std::max(worst, max_abs_diff(m.apply(basis.vectors[b]), p[b]));
    return worst;
}

// --------------------------------------------------------------------------
// Azimuth symmetry
// --------------------------------------------------------------------------

/// Representative of theta in [0, pi/3] under theta -> theta + 2pi/3 and theta -> -theta.
[[nodiscard]] inline double canonical_theta(double theta) {
    double t = std::fmod(theta, kThirdTurn);
    if (t < 0.0) t += kThirdTurn;
    if (t > kThirdTurn / 2.0) t = kThirdTurn - t;
    return t;
}

[[nodiscard]] inline bool same_azimuth_class(double a, double b, double tol = 1e-12) {
    return std::abs(canonical_theta(a) - canonical_theta(b)) <= tol;
}

} // namespace ltrine
