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

#include "ltrine/envelope.hpp"
#include "ltrine/oracle.hpp"
#include "reference.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace ltrine;
using Catch::Approx;

namespace {
constexpr double kGammaPub = kPublishedGamma1;
}

TEST_CASE("alpha_prime and p_prime", "[envelope]") {
    for (const double a : {0.0, 0.02, 0.3, 0.9}) {
        CHECK(alpha_prime(a, kNeutralLift) == Approx(a).margin(1e-15));
        CHECK(p_prime(0.37, a, kNeutralLift) == Approx(0.37).epsilon(1e-14));
        CHECK(alpha_prime(a, 0.0) == 0.0);
    }
    CHECK(alpha_prime(0.03, phi_alpha(0.03, kGammaPub)) == Approx(kGammaPub).margin(1e-5));
    CHECK(p_prime(1.0, 0.0, 0.0) == 1.5);

    const std::vector<SymmetricTriple> mix{{2.0 / 3.0, 0.0, kPi / 6}, {1.0 / 3.0, kHalfPi, 0.0}};
    const auto branches = pushforward(0.02, mix);
    REQUIRE(branches.size() == 2);
    CHECK(branches[0].p_prime == Approx(0.98).epsilon(1e-14));
    CHECK(branches[1].p_prime == Approx(0.02).epsilon(1e-14));
    CHECK(branches[0].p_prime + branches[1].p_prime == Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(alpha_prime(0.0, kHalfPi), DomainError);
    CHECK_THROWS_AS(alpha_prime(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(alpha_prime(0.1, 1.7), DomainError);
    CHECK_THROWS_AS(p_prime(1.0, -0.1, 0.0), DomainError);
}

TEST_CASE("conservation over random mixtures", "[envelope][property]") {
    Rng rng(2718);
    for (int i = 0; i < 1000; ++i) {
        const double a = uniform01(rng);
        const auto t = random_valid_mixture(rng, 1 + static_cast<std::size_t>(i % 3));
        double mass = 0.0, lift = 0.0;
        for (const auto &b : pushforward(a, t)) {
            mass += b.p_prime;
            lift += b.p_prime * b.alpha_prime;
        }
        CHECK(std::abs(mass - 1.0) <= 1e-10);
        CHECK(std::abs(lift - a) <= 1e-10);
    }
}

TEST_CASE("phi_alpha", "[envelope]") {
    CHECK(phi_alpha(0.0, kGammaPub) == kHalfPi);
    const double s = std::sin(phi_alpha(kGammaPub, kGammaPub));
    CHECK(std::abs(s * s - 1.0 / 3.0) <= 1e-14);
    const double s3 = std::sin(phi_alpha(0.03, kGammaPub));
    CHECK(s3 * s3 == Approx(reference::kSin2PhiAlpha003).margin(1e-14));
    CHECK(s3 * s3 == Approx(0.513846).margin(1e-6));
    CHECK(phi_alpha(0.03, kGammaPub) == Approx(0.79924618744791).margin(1e-12));
    CHECK((2.0 - 3.0 * kGammaPub) / kGammaPub == Approx(29.591).margin(1e-3));
    CHECK_THROWS_AS(phi_alpha(0.07, kGammaPub), DomainError);
    CHECK_THROWS_AS(phi_alpha(-0.01, kGammaPub), DomainError);
}

TEST_CASE("find_gamma1", "[envelope]") {
    const double g = find_gamma1(1e-6);
    CHECK(std::abs(g - 0.061367) <= 5e-5);
    CHECK(std::abs(g - reference::kGamma1) <= 1e-6);
    CHECK(std::abs(std::asin(std::sqrt(g)) - 0.25033) <= 1e-4);

    const double tight = find_gamma1(1e-10);
    CHECK(std::abs(tight - reference::kGamma1) <= 1e-8);

    // chord from the planar end lies weakly above the curve on [0, gamma1]
    const double planar = optimal_theta(0.0).info_bits;
    const double top = optimal_theta(tight).info_bits;
    for (double a = 0.0; a <= tight; a += 1e-3) {
        const double chord = planar + (a / tight) * (top - planar);
        CHECK(chord >= optimal_theta(a).info_bits - 1e-12);
    }

    // the chord slope is unimodal on a fine grid over (0, 0.2]
    int sign_changes = 0;
    double prev = chord_slope(0.001, planar);
    int prev_dir = 0;
    for (int k = 2; k <= 200; ++k) {
        const double cur = chord_slope(0.001 * k, planar);
        const int dir = cur > prev ? 1 : -1;
        if (prev_dir != 0 && dir != prev_dir) ++sign_changes;
        prev_dir = dir;
        prev = cur;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("optimal_povm six-element branch", "[envelope]") {
    const auto sol = optimal_povm(0.03, kGammaPub);
    CHECK(sol.branch == Branch::six_element);
    REQUIRE(sol.povm.triples.size() == 2);
    const auto &planar = sol.povm.triples[0];
    const auto &lifted = sol.povm.triples[1];
    CHECK(lifted.p == Approx(reference::kLiftedWeight003).margin(1e-13));
    CHECK(lifted.p == Approx(0.648703).margin(1e-6));
    CHECK(planar.p == Approx(0.351297).margin(1e-6));
    CHECK(planar.phi == 0.0);
    CHECK(planar.theta == Approx(kPi / 6));
    CHECK(lifted.theta == 0.0);

    const auto povm = assemble_symmetric_povm(sol.povm);
    REQUIRE(povm.elements.size() == 6);
    CHECK(verify_completeness(povm) <= 1e-10);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j)
            CHECK(max_abs_diff(povm.elements[i].direction, povm.elements[j].direction) > 1e-3);

    CHECK(sol.info_bits == Approx(reference::kEnvelopeAt003Published).margin(1e-12));
    CHECK(std::abs(general_info(Ensemble::trines(0.03), povm) - sol.info_bits) <= 1e-10);
    double mass = 0.0, lift = 0.0;
    for (const auto &m : sol.mixture) {
        mass += m.p_prime;
        lift += m.p_prime * m.alpha_prime;
    }
    CHECK(std::abs(mass - 1.0) <= 1e-10);
    CHECK(std::abs(lift - 0.03) <= 1e-10);
}

TEST_CASE("optimal_povm weights stay positive on (0, gamma1)", "[envelope][property]") {
    for (int k = 1; k < 200; ++k) {
        const double a = kGammaPub * k / 200.0;
        const auto sol = optimal_povm(a, kGammaPub);
        REQUIRE(sol.branch == Branch::six_element);
        CHECK(sol.povm.triples[0].p > 0.0);
        CHECK(sol.povm.triples[1].p > 0.0);
        CHECK(sol.povm.residuals().satisfied());
    }
}

TEST_CASE("optimal_povm degenerate and von Neumann branches", "[envelope]") {
    const auto at_gamma = optimal_povm(kGammaPub, kGammaPub);
    CHECK(at_gamma.branch == Branch::gamma1_degenerate);
    CHECK(at_gamma.degenerate());
    REQUIRE(at_gamma.povm.triples.size() == 1);
    CHECK(at_gamma.povm.triples[0].p == 1.0);
    // the six-element weights tend to (0, 1) as alpha -> gamma1
    CHECK(optimal_povm(kGammaPub - 1e-9, kGammaPub).povm.triples[0].p == Approx(0.0).margin(1e-6));

    const auto at_zero = optimal_povm(0.0, kGammaPub);
    CHECK(at_zero.branch == Branch::planar_degenerate);
    CHECK(verify_completeness(assemble_symmetric_povm(at_zero.povm)) <= 1e-12);
    CHECK(at_zero.info_bits == Approx(kLog2Three - 1.0).margin(1e-12));

    const auto high = optimal_povm(0.2, kGammaPub);
    CHECK(high.branch == Branch::von_neumann);
    CHECK(assemble_symmetric_povm(high.povm).elements.size() == 3);
    CHECK(high.info_bits == Approx(symmetric_info(0.2, 0.0)).margin(1e-12));

    CHECK_THROWS_AS(optimal_povm(8.0 / 9.0, kGammaPub), UnsupportedRegimeError);
    CHECK_THROWS_AS(optimal_povm(0.95, kGammaPub), UnsupportedRegimeError);
    CHECK_THROWS_AS(optimal_povm(-0.01, kGammaPub), DomainError);

    // continuity across gamma1
    CHECK(std::abs(optimal_povm(kGammaPub - 1e-8, kGammaPub).info_bits -
                   optimal_povm(kGammaPub + 1e-8, kGammaPub).info_bits) <= 1e-6);
}

TEST_CASE("accessible_information", "[envelope]") {
    const double g = reference::kGamma1;
    CHECK(accessible_information(0.0, g).info_bits == Approx(0.584963).margin(1e-6));
    CHECK(std::abs(accessible_information(0.0, g).info_bits - (kLog2Three - 1.0)) <= 1e-12);
    CHECK(accessible_information(g, g).info_bits == Approx(reference::kInfoGamma1).margin(1e-12));
    CHECK(accessible_information(0.03, g).info_bits == Approx(reference::kEnvelopeAt003).margin(1e-12));
    CHECK(accessible_information(0.03, g).info_bits == Approx(0.7423).margin(5e-5));
    CHECK_THROWS_AS(accessible_information(0.07, g), DomainError);
    CHECK_THROWS_AS(accessible_information(-0.01, g), DomainError);

    for (int k = 0; k <= 60; ++k) {
        const double a = g * k / 60.0;
        const auto sol = accessible_information(a, g);
        const double direct = general_info(Ensemble::trines(a), assemble_symmetric_povm(sol.povm));
        INFO("alpha = " << a);
        CHECK(std::abs(direct - sol.info_bits) <= 1e-9);
        if (k > 0 && k < 60) {
            const double best_single = std::max(symmetric_info(a, 0.0), optimal_theta(a).info_bits);
            CHECK(sol.info_bits > best_single);
        }
    }
    CHECK(std::abs(accessible_information(0.0, g).info_bits - optimal_theta(0.0).info_bits) <= 1e-9);
    CHECK(std::abs(accessible_information(g, g).info_bits - optimal_theta(g).info_bits) <= 1e-9);
}

TEST_CASE("two_stage_check", "[envelope]") {
    const std::vector<SymmetricTriple> single{{1.0, kNeutralLift, 0.0}};
    CHECK(two_stage_check(0.05, single) <= 1e-12);

    const auto sol = optimal_povm(0.03, kGammaPub);
    CHECK(two_stage_check(0.03, sol.povm.triples) <= 1e-10);

    for (int seed = 0; seed < 100; ++seed) {
        Rng r(stream_seed(100, static_cast<std::uint64_t>(seed)));
        const double a = uniform01(r);
        CHECK(two_stage_check(a, random_valid_mixture(r, 3)) <= 1e-9);
    }

    const std::vector<SymmetricTriple> bad{{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(two_stage_check(0.1, bad), ConstraintViolation);
}
