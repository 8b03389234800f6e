// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ququart/serialize.hpp"
#include "ququart/upb.hpp"

using namespace ququart;

TEST_CASE("shifts construction") {
    auto upb = shifts_upb();
    CHECK(upb.parties == 3);
    CHECK(upb.local_dim == 2);
    CHECK(upb.members.size() == 4); // m = M(d-1)+1
    auto fulls = upb.full_states();
    for (std::size_t i = 0; i < fulls.size(); ++i)
        for (std::size_t j = i + 1; j < fulls.size(); ++j)
            CHECK(std::abs(inner_product(fulls[i], fulls[j])) < 1e-12);
}

TEST_CASE("tiles construction") {
    auto upb = tiles_upb();
    CHECK(upb.parties == 2);
    CHECK(upb.local_dim == 3);
    CHECK(upb.members.size() == 5); // m = 2(3-1)+1
    auto fulls = upb.full_states();
    for (std::size_t i = 0; i < fulls.size(); ++i)
        for (std::size_t j = i + 1; j < fulls.size(); ++j)
            CHECK(std::abs(inner_product(fulls[i], fulls[j])) < 1e-12);
}

TEST_CASE("shifts is unextendible after 81 assignments") {
    auto report = verify_upb(shifts_upb());
    CHECK(report.orthogonal);
    CHECK(report.max_pairwise_overlap < 1e-12);
    CHECK(report.unextendible);
    CHECK(report.assignments_checked == 81);
    CHECK(!report.extension_witness);
}

TEST_CASE("tiles is unextendible after 32 assignments") {
    auto report = verify_upb(tiles_upb());
    CHECK(report.orthogonal);
    CHECK(report.unextendible);
    CHECK(report.assignments_checked == 32);
}

TEST_CASE("dropping the last shifts member makes it extendible") {
    auto upb = shifts_upb();
    upb.members.pop_back();
    auto report = verify_upb(upb);
    CHECK(report.orthogonal);
    CHECK(!report.unextendible);
    REQUIRE(report.extension_witness.has_value());

    // the witness is a genuine orthogonal product extension
    const auto& w = *report.extension_witness;
    REQUIRE(w.size() == 3);
    StateVector full = tensor_product(tensor_product(w[0], w[1]), w[2]);
    for (const auto& member : upb.full_states())
        CHECK(std::abs(inner_product(member, full)) < 1e-10);
}

TEST_CASE("complement dimensions are 4 for both systems") {
    for (auto upb : {shifts_upb(), tiles_upb()}) {
        long total = 1;
        for (int k = 0; k < upb.parties; ++k) total *= upb.local_dim;
        auto comp = complement_orthonormal_basis(upb.full_states(), total);
        CHECK(comp.size() == 4);
    }
}

TEST_CASE("ees vectors are orthonormal, orthogonal to the upb, and entangled") {
    for (auto upb : {shifts_upb(), tiles_upb()}) {
        auto ees = extract_ees(upb, 200, 0x5eed);
        REQUIRE(ees.vectors.size() == 4);
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t b = 0; b < 4; ++b) {
                Amplitude want = a == b ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
                CHECK(std::abs(inner_product(ees.vectors[a], ees.vectors[b]) - want) < 1e-10);
            }
            for (const auto& member : upb.full_states())
                CHECK(std::abs(inner_product(member, ees.vectors[a])) < 1e-10);

            for (int cut = 0; cut < upb.parties; ++cut) {
                auto sv = schmidt_singular_values(ees.vectors[a], std::array<int, 1>{cut});
                REQUIRE(sv.size() >= 2);
                CHECK(sv[1] > 1e-6);
            }
        }
    }
}

TEST_CASE("no ees vector has a pure single-qubit reduction") {
    auto ees = extract_ees(shifts_upb(), 50, 1);
    for (const auto& v : ees.vectors)
        for (int party = 0; party < 3; ++party) {
            auto rho = partial_trace(v, std::array<int, 1>{party});
            CHECK(purity(rho) < 1.0 - 1e-6);
        }
}

TEST_CASE("union of upb and ees spans the full space") {
    for (auto upb : {shifts_upb(), tiles_upb()}) {
        long total = 1;
        for (int k = 0; k < upb.parties; ++k) total *= upb.local_dim;
        auto ees = extract_ees(upb, 10, 2);
        auto all = upb.full_states();
        all.insert(all.end(), ees.vectors.begin(), ees.vectors.end());
        CHECK(complement_orthonormal_basis(all, total).empty());
    }
}

TEST_CASE("ees extraction is deterministic") {
    auto a = extract_ees(shifts_upb(), 10, 3);
    auto b = extract_ees(shifts_upb(), 10, 3);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < a.vectors[k].amps.size(); ++i)
            CHECK(a.vectors[k].amps[i] == b.vectors[k].amps[i]);
}

TEST_CASE("dimension equation") {
    auto sols = solve_dimension_equation(10, 10);
    REQUIRE(sols.size() == 2);
    CHECK(sols[0] == std::pair<int, int>{2, 3});
    CHECK(sols[1] == std::pair<int, int>{3, 2});
    // 2^3 - 3*1 - 1 = 4 and 3^2 - 2*2 - 1 = 4
    CHECK(8 - 3 - 1 == 4);
    CHECK(9 - 4 - 1 == 4);
    CHECK_THROWS_AS(solve_dimension_equation(1, 10), InputError);
}

TEST_CASE("upb serializes to json with per-member factors") {
    auto j = to_json(shifts_upb());
    CHECK(j["parties"] == 3);
    CHECK(j["local_dim"] == 2);
    CHECK(j["members"].size() == 4);
    CHECK(j["members"][0].size() == 3);  // three factors
    CHECK(j["members"][0][0].size() == 2); // two amplitudes each
}
