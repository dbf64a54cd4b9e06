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

// Brute-force and local-search verifiers that are independent of the
// envelope construction: a constrained grid over symmetric mixtures, a search
// over all orthonormal bases, and random perturbation of a given POVM.
// Reports are consistency evidence for optimality and uniqueness, not proofs.

#pragma once

#include "ltrine/errors.hpp"
#include "ltrine/geometry.hpp"
#include "ltrine/info.hpp"
#include "ltrine/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace ltrine {

// --------------------------------------------------------------------------
// Reproducible random streams
// --------------------------------------------------------------------------

/// Seed for the stream of sample `index`; streams for different indices are
/// independent, so evaluation order never changes what a sample sees.
[[nodiscard]] constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

[[nodiscard]] inline double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Random triples satisfying sum p = 1 and sum p sin^2 phi = 1/3 with every p > 0.
/// Two weights are solved from the constraints, the rest are drawn.
[[nodiscard]] inline std::vector<SymmetricTriple> random_valid_mixture(Rng &rng, std::size_t m) {
    if (m == 0) throw std::invalid_argument("random_valid_mixture: need at least one triple");
    if (m == 1) return {{1.0, kNeutralLift, kThirdTurn * (uniform01(rng) - 0.5)}};
    for (;;) {
        std::vector<SymmetricTriple> t(m);
        std::vector<double> s(m);
        for (std::size_t i = 0; i < m; ++i) {
            t[i].phi = kHalfPi * uniform01(rng);
            t[i].theta = 2.0 * kPi * (uniform01(rng) - 0.5);
            s[i] = std::sin(t[i].phi) * std::sin(t[i].phi);
        }
        // Free weights for triples 2..m-1; triples 0 and 1 absorb the constraints.
        double free_mass = 0.0;
        double free_lift = 0.0;
        for (std::size_t i = 2; i < m; ++i) {
            t[i].p = uniform01(rng) / static_cast<double>(m);
            free_mass += t[i].p;
            free_lift += t[i].p * s[i];
        }
        const double ds = s[1] - s[0];
        if (std::abs(ds) < 1e-3) continue;
        t[1].p = ((1.0 / 3.0 - free_lift) - (1.0 - free_mass) * s[0]) / ds;
        t[0].p = 1.0 - free_mass - t[1].p;
        if (t[0].p > 1e-6 && t[1].p > 1e-6) return t;
    }
}

// --------------------------------------------------------------------------
// Search reports
// --------------------------------------------------------------------------

struct SearchReport {
    std::string kind;  ///< "symmetric_mixture" or "von_neumann_basis"
    double alpha{};
    double best_info_bits = -std::numeric_limits<double>::infinity();
    /// symmetric_mixture: (p, phi, theta) per triple; von_neumann_basis: the three basis vectors.
    std::vector<double> best_parameters;
    std::uint64_t evaluations{};
    std::uint64_t seed{};
    std::size_t resolution{};
    bool feasible{};

    /// Single-line key=value record; doubles printed round-trip exact.
    [[nodiscard]] std::string to_record() const {
        auto num = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return std::string(buf);
        };
        std::string params;
        for (std::size_t i = 0; i < best_parameters.size(); ++i) {
            if (i) params += ':';
            params += num(best_parameters[i]);
        }
        return "search kind=" + kind + " alpha=" + num(alpha) + " feasible=" + (feasible ? "1" : "0") +
               " best_info_bits=" + num(best_info_bits) + " evaluations=" + std::to_string(evaluations) +
               " resolution=" + std::to_string(resolution) + " seed=" + std::to_string(seed) +
               " params=" + (params.empty() ? "-" : params);
    }
};

// --------------------------------------------------------------------------
// Grid search over symmetric mixtures
// --------------------------------------------------------------------------

/// Best information over symmetric mixtures of m <= 3 triples on a grid with
/// `resolution` intervals per coordinate, evaluated directly with general_info.
/// Two weights are eliminated by the POVM constraints:
///   m = 1: phi is pinned to arcsin(1/sqrt 3), theta scanned;
///   m = 2: phi_1 in [0, arcsin(1/sqrt 3)], phi_2 in [arcsin(1/sqrt 3), pi/2];
///   m = 3: all phi in [0, pi/2], p_3 in {1/r, ..., 1}.
/// Azimuths range over [0, pi/3]. Cells whose solved weights are not strictly
/// positive are skipped; if none survive the report is flagged infeasible.
[[nodiscard]] inline SearchReport grid_search_symmetric(double alpha, std::size_t m, std::size_t resolution,
                                                        Threads threads = {}) {
    if (m < 1 || m > 3) throw std::invalid_argument("grid_search_symmetric: triple count must be 1, 2 or 3");
    if (resolution < 1) throw std::invalid_argument("grid_search_symmetric: resolution must be positive");
    const auto ensemble = Ensemble::trines(alpha);
    const std::size_t n = resolution + 1;
    const double r = static_cast<double>(resolution);
    auto theta_at = [&](std::size_t k) { return (kThirdTurn / 2.0) * static_cast<double>(k) / r; };
    auto span_at = [&](double lo, double hi, std::size_t k) {
        return k == resolution ? hi : lo + (hi - lo) * static_cast<double>(k) / r;
    };

    // Mixed-radix layout: phi indices, then theta indices, then (m = 3) the free weight.
    std::vector<std::size_t> radix;
    if (m == 1) {
        radix = {n};
    } else if (m == 2) {
        radix = {n, n, n, n};
    } else {
        radix = {n, n, n, n, n, n, resolution};
    }
    const std::size_t cells =
        std::accumulate(radix.begin(), radix.end(), std::size_t{1}, std::multiplies<>());

    auto decode = [&](std::size_t cell, std::vector<SymmetricTriple> &t) -> bool {
        std::array<std::size_t, 7> idx{};
        for (std::size_t d = 0; d < radix.size(); ++d) {
            idx[d] = cell % radix[d];
            cell /= radix[d];
        }
        t.assign(m, {});
        if (m == 1) {
            t[0] = {1.0, kNeutralLift, theta_at(idx[0])};
            return true;
        }
        std::array<double, 3> s{};
        for (std::size_t i = 0; i < m; ++i) {
            if (m == 2)
                t[i].phi = i == 0 ? span_at(0.0, kNeutralLift, idx[0]) : span_at(kNeutralLift, kHalfPi, idx[1]);
            else
                t[i].phi = span_at(0.0, kHalfPi, idx[i]);
            t[i].theta = theta_at(idx[m + i]);
            const double sn = detail::lift_cos_sin(t[i].phi).second;
            s[i] = sn * sn;
        }
        const double p3 = m == 3 ? static_cast<double>(idx[6] + 1) / r : 0.0;
        if (m == 3) t[2].p = p3;
        const double ds = s[1] - s[0];
        if (ds == 0.0) return false;
        t[1].p = ((1.0 / 3.0 - p3 * s[2]) - (1.0 - p3) * s[0]) / ds;
        t[0].p = 1.0 - p3 - t[1].p;
        return t[0].p > 0.0 && t[1].p > 0.0 && constraint_residuals(t).satisfied();
    };

    const auto best = parallel_argmax(
        cells,
        [&](std::size_t cell) -> std::pair<bool, double> {
            std::vector<SymmetricTriple> t;
            if (!decode(cell, t)) return {false, 0.0};
            return {true, general_info(ensemble, assemble_symmetric_povm(t))};
        },
        threads);

    SearchReport report;
    report.kind = "symmetric_mixture";
    report.alpha = alpha;
    report.evaluations = cells;
    report.resolution = resolution;
    report.feasible = best.found();
    if (best.found()) {
        report.best_info_bits = best.value;
        std::vector<SymmetricTriple> t;
        decode(best.index, t);
        for (const auto &x : t) report.best_parameters.insert(report.best_parameters.end(), {x.p, x.phi, x.theta});
    }
    return report;
}

// --------------------------------------------------------------------------
// Search over all von Neumann measurements
// --------------------------------------------------------------------------

using Basis = std::array<RealVec3, 3>;

/// Columns of Rz(a) Ry(b) Rz(c).
[[nodiscard]] inline Basis euler_basis(double a, double b, double c) {
    const double ca = std::cos(a), sa = std::sin(a);
    const double cb = std::cos(b), sb = std::sin(b);
    const double cc = std::cos(c), sc = std::sin(c);
    return {RealVec3{ca * cb * cc - sa * sc, sa * cb * cc + ca * sc, -sb * cc},
            RealVec3{-ca * cb * sc - sa * cc, -sa * cb * sc + ca * cc, sb * sc},
            RealVec3{ca * sb, sa * sb, cb}};
}

/// Rotates every vector of the basis by `angle` about coordinate axis `axis`.
[[nodiscard]] inline Basis rotate_basis(const Basis &basis, int axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Basis out = basis;
    for (auto &v : out) {
        const RealVec3 w = v;
        switch (axis) {
        case 0: v = {w.x, c * w.y - s * w.z, s * w.y + c * w.z}; break;
        case 1: v = {c * w.x + s * w.z, w.y, -s * w.x + c * w.z}; break;
        default: v = {c * w.x - s * w.y, s * w.x + c * w.y, w.z}; break;
        }
    }
    return out;
}

[[nodiscard]] inline GeneralPovm basis_povm(const Basis &basis) {
    GeneralPovm out;
    for (const auto &v : basis) out.elements.push_back({1.0, v});
    return out;
}

namespace detail {

struct LocalResult {
    Basis basis;
    double value{};
    std::uint64_t evaluations{};
};

/// Compass search over small rotations about the coordinate axes.
inline LocalResult refine_basis(const Ensemble &ensemble, Basis basis, double step, double min_step) {
    LocalResult r{basis, general_info(ensemble, basis_povm(basis)), 1};
    while (step >= min_step) {
        bool moved = false;
        for (int axis = 0; axis < 3 && !moved; ++axis) {
            for (const double sign : {1.0, -1.0}) {
                const auto trial = rotate_basis(r.basis, axis, sign * step);
                const double v = general_info(ensemble, basis_povm(trial));
                ++r.evaluations;
                if (v > r.value) {
                    r = {trial, v, r.evaluations};
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) step *= 0.5;
    }
    return r;
}

} // namespace detail

/// Number of best grid cells and of seeded random bases that get refined.
inline constexpr std::size_t kBasisGridStarts = 4;
inline constexpr std::size_t kBasisRandomStarts = 8;

/// Maximizes general_info over orthonormal bases. Euler angles (a, b, c) are
/// scanned on a grid with `resolution` steps per angle; the best grid cells,
/// `kBasisRandomStarts` seeded random bases and the optimal V(theta) basis are
/// then refined by compass search. The result therefore dominates the V(theta) family.
[[nodiscard]] inline SearchReport best_von_neumann(double alpha, std::size_t resolution, std::uint64_t seed,
                                                   Threads threads = {}) {
    if (resolution < 2) throw std::invalid_argument("best_von_neumann: resolution must be at least 2");
    const auto ensemble = Ensemble::trines(alpha);
    const double step = 2.0 * kPi / static_cast<double>(resolution);
    const std::size_t n_ab = resolution;         // a, c in [0, 2pi)
    const std::size_t n_b = resolution / 2 + 1;  // b in [0, pi]
    auto grid_basis = [&](std::size_t cell) {
        const std::size_t ia = cell % n_ab;
        const std::size_t ib = (cell / n_ab) % n_b;
        const std::size_t ic = cell / (n_ab * n_b);
        return euler_basis(step * static_cast<double>(ia), std::min(kPi, step * static_cast<double>(ib)),
                           step * static_cast<double>(ic));
    };
    const std::size_t cells = n_ab * n_b * n_ab;
    const auto grid_values = parallel_map(
        cells, [&](std::size_t cell) { return general_info(ensemble, basis_povm(grid_basis(cell))); }, threads);

    std::vector<std::size_t> order(cells);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t keep = std::min(kBasisGridStarts, cells);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      [&](std::size_t i, std::size_t j) {
                          return grid_values[i] != grid_values[j] ? grid_values[i] > grid_values[j] : i < j;
                      });

    std::vector<Basis> starts;
    for (std::size_t k = 0; k < keep; ++k) starts.push_back(grid_basis(order[k]));
    for (std::size_t k = 0; k < kBasisRandomStarts; ++k) {
        Rng rng(stream_seed(seed, k));
        const double a = 2.0 * kPi * uniform01(rng);
        const double b = std::acos(2.0 * uniform01(rng) - 1.0);
        const double c = 2.0 * kPi * uniform01(rng);
        starts.push_back(euler_basis(a, b, c));
    }
    starts.push_back(von_neumann_basis(optimal_theta(alpha).theta_star).vectors);

    const auto refined = parallel_map(
        starts.size(), [&](std::size_t i) { return detail::refine_basis(ensemble, starts[i], step / 2.0, 1e-10); },
        threads);

    SearchReport report;
    report.kind = "von_neumann_basis";
    report.alpha = alpha;
    report.seed = seed;
    report.resolution = resolution;
    report.feasible = true;
    report.evaluations = cells;
    std::size_t best = 0;
    for (std::size_t i = 0; i < refined.size(); ++i) {
        report.evaluations += refined[i].evaluations;
        if (refined[i].value > refined[best].value) best = i;
    }
    report.best_info_bits = refined[best].value;
    for (const auto &v : refined[best].basis) report.best_parameters.insert(report.best_parameters.end(), {v.x, v.y, v.z});
    return report;
}

// --------------------------------------------------------------------------
// Local perturbation
// --------------------------------------------------------------------------

struct PerturbationReport {
    double max_improvement = -std::numeric_limits<double>::infinity();
    std::size_t accepted{};
    std::size_t rejected{};
};

/// Projects raw element vectors onto the completeness manifold: with
/// S = sum u u^T, each u becomes S^{-1/2} u. Returns false when S is (nearly) singular.
[[nodiscard]] inline bool project_to_complete(std::vector<RealVec3> &vectors) {
    Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
    for (const auto &u : vectors) {
        const Eigen::Vector3d e(u.x, u.y, u.z);
        s += e * e.transpose();
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(s);
    if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() <= 1e-12) return false;
    const Eigen::Matrix3d inv_sqrt = solver.operatorInverseSqrt();
    for (auto &u : vectors) {
        const Eigen::Vector3d e = inv_sqrt * Eigen::Vector3d(u.x, u.y, u.z);
        u = {e.x(), e.y(), e.z()};
    }
    return true;
}

/// Largest general_info gain over `trials` random perturbations of the POVM.
/// Each trial adds step * N(0, 1) noise to every element vector sqrt(w) v and
/// re-projects onto the completeness manifold; trials that cannot be projected
/// to within the completeness tolerance are rejected.
[[nodiscard]] inline PerturbationReport local_perturbation_test(double alpha, const GeneralPovm &povm,
                                                                std::size_t trials, double step,
                                                                std::uint64_t seed, Threads threads = {}) {
    const auto ensemble = Ensemble::trines(alpha);
    const double base = general_info(ensemble, povm);
    constexpr double kRejected = std::numeric_limits<double>::quiet_NaN();
    const auto gains = parallel_map(
        trials,
        [&](std::size_t trial) {
            Rng rng(stream_seed(seed, trial));
            std::normal_distribution<double> noise(0.0, 1.0);
            std::vector<RealVec3> u;
            u.reserve(povm.elements.size());
            for (const auto &e : povm.elements) {
                const RealVec3 kick{noise(rng), noise(rng), noise(rng)};
                u.push_back(std::sqrt(e.weight) * e.direction + step * kick);
            }
            if (!project_to_complete(u)) return kRejected;
            const auto perturbed = povm_from_vectors(u);
            if (!(verify_completeness(perturbed) <= kCompletenessTol)) return kRejected;
            return general_info(ensemble, perturbed) - base;
        },
        threads);

    PerturbationReport report;
    for (const double g : gains) {
        if (std::isnan(g)) {
            ++report.rejected;
            continue;
        }
        ++report.accepted;
        report.max_improvement = std::max(report.max_improvement, g);
    }
    return report;
}

} // namespace ltrine
