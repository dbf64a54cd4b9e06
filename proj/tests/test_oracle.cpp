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

using namespace ltrine;
using Catch::Approx;

namespace {
constexpr double kEnvelope003 = reference::kEnvelopeAt003;
}

TEST_CASE("stream_seed gives independent reproducible streams", "[oracle]") {
    CHECK(stream_seed(1, 0) == stream_seed(1, 0));
    CHECK(stream_seed(1, 0) != stream_seed(1, 1));
    CHECK(stream_seed(1, 0) != stream_seed(2, 0));
    Rng a(stream_seed(5, 3)), b(stream_seed(5, 3));
    for (int i = 0; i < 10; ++i) CHECK(uniform01(a) == uniform01(b));
}

TEST_CASE("grid_search_symmetric", "[oracle]") {
    SECTION("two triples approach the envelope from below") {
        const auto r = grid_search_symmetric(0.03, 2, 24, Threads{2});
        CHECK(r.feasible);
        CHECK(r.best_info_bits <= kEnvelope003 + 1e-9);
        CHECK(r.best_info_bits >= kEnvelope003 - 2e-3);
        CHECK(r.best_info_bits <= kLog2Three);
        CHECK(r.evaluations == 25u * 25u * 25u * 25u);
        REQUIRE(r.best_parameters.size() == 6);
    }
    SECTION("one triple is the V(theta) family") {
        const auto one = grid_search_symmetric(0.03, 1, 600);
        CHECK(one.best_info_bits == Approx(reference::kInfoOpt003).margin(1e-5));
        CHECK(one.best_info_bits < kEnvelope003 - 3e-3);
    }
    SECTION("planar ensemble") {
        const auto r = grid_search_symmetric(0.0, 1, 60);
        CHECK(std::abs(r.best_info_bits - (kLog2Three - 1.0)) <= 1e-12);
        REQUIRE(r.best_parameters.size() == 3);
        CHECK(r.best_parameters[2] == Approx(kPi / 6));
    }
    SECTION("three triples never beat the envelope") {
        const auto r = grid_search_symmetric(0.03, 3, 5);
        CHECK(r.feasible);
        CHECK(r.best_info_bits <= kEnvelope003 + 1e-9);
    }
    SECTION("infeasible grid is flagged") {
        const auto r = grid_search_symmetric(0.03, 3, 1);
        CHECK_FALSE(r.feasible);
        CHECK(r.best_parameters.empty());
    }
    SECTION("reports are independent of the thread count") {
        const auto a = grid_search_symmetric(0.02, 2, 10, Threads{1});
        const auto b = grid_search_symmetric(0.02, 2, 10, Threads{4});
        CHECK(a.to_record() == b.to_record());
    }
    CHECK_THROWS_AS(grid_search_symmetric(0.03, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(grid_search_symmetric(0.03, 4, 4), std::invalid_argument);
}

TEST_CASE("euler_basis is orthonormal", "[oracle][property]") {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const auto b = euler_basis(7 * uniform01(rng), 4 * uniform01(rng), 7 * uniform01(rng));
        CHECK(verify_completeness(basis_povm(b)) <= 1e-12);
        const auto r = rotate_basis(b, i % 3, uniform01(rng));
        CHECK(verify_completeness(basis_povm(r)) <= 1e-12);
    }
}

TEST_CASE("best_von_neumann", "[oracle]") {
    const auto r = best_von_neumann(0.03, 16, 7, Threads{2});
    CHECK(r.best_info_bits >= optimal_theta(0.03).info_bits - 1e-12);
    CHECK(r.best_info_bits >= symmetric_info(0.03, 0.0));
    CHECK(r.best_info_bits <= kEnvelope003 - 3e-3);
    CHECK(r.best_info_bits == Approx(reference::kInfoOpt003).margin(1e-8));
    REQUIRE(r.best_parameters.size() == 9);

    const auto ortho = best_von_neumann(1.0 / 3.0, 8, 1);
    CHECK(std::abs(ortho.best_info_bits - kLog2Three) <= 1e-12);

    const auto again = best_von_neumann(0.03, 16, 7, Threads{1});
    CHECK(again.to_record() == r.to_record());
}

TEST_CASE("local_perturbation_test", "[oracle]") {
    const auto sol = optimal_povm(0.03, reference::kGamma1);
    const auto optimum = assemble_symmetric_povm(sol.povm);
    const auto at_opt = local_perturbation_test(0.03, optimum, 2000, 1e-2, 3);
    CHECK(at_opt.accepted > 1900);
    CHECK(at_opt.max_improvement <= 1e-9);

    const auto vn = local_perturbation_test(0.03, von_neumann_basis(0.0).povm(), 2000, 1e-2, 3);
    CHECK(vn.max_improvement > 1e-4);

    const TrineEnsemble ortho(1.0 / 3.0);
    GeneralPovm aligned;
    for (const auto &s : ortho.states()) aligned.elements.push_back({1.0, s});
    CHECK(local_perturbation_test(1.0 / 3.0, aligned, 500, 1e-2, 3).max_improvement <= 1e-12);

    const auto t1 = local_perturbation_test(0.03, optimum, 300, 1e-2, 9, Threads{1});
    const auto t4 = local_perturbation_test(0.03, optimum, 300, 1e-2, 9, Threads{4});
    CHECK(t1.max_improvement == t4.max_improvement);
    CHECK(t1.accepted == t4.accepted);
}

TEST_CASE("SearchReport record format", "[oracle]") {
    SearchReport r;
    r.kind = "symmetric_mixture";
    r.alpha = 0.5;
    r.best_info_bits = 0.25;
    r.best_parameters = {1.0, 0.5};
    r.evaluations = 12;
    r.seed = 3;
    r.resolution = 4;
    r.feasible = true;
    CHECK(r.to_record() == "search kind=symmetric_mixture alpha=0.5 feasible=1 best_info_bits=0.25 evaluations=12 "
                           "resolution=4 seed=3 params=1:0.5");
    CHECK(r.to_record().find('\n') == std::string::npos);
}
