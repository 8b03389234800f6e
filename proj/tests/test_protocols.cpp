// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <fstream>
#include <map>

#include "ququart/protocols.hpp"
#include "ququart/serialize.hpp"

using namespace ququart;

namespace {

StateVector random_ququart(SeededRng& rng) {
    std::vector<Amplitude> amps(4);
    for (auto& a : amps) a = Amplitude{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
    return StateVector({4}, std::move(amps)).normalized();
}

// Hand-derived swapping table for the X1 (x) X1 resource, frozen as the
// independent oracle for the brute-force derivation.
const std::map<std::string, std::pair<int, std::string>> kExpectedSwap = {
    {"W0", {+1, "Y2"}}, {"W1", {-1, "W3"}}, {"W2", {-1, "Y0"}}, {"W3", {+1, "W1"}},
    {"X0", {+1, "X2"}}, {"X1", {-1, "Z3"}}, {"X2", {-1, "X0"}}, {"X3", {+1, "Z1"}},
    {"Y0", {-1, "W2"}}, {"Y1", {+1, "Y3"}}, {"Y2", {+1, "W0"}}, {"Y3", {-1, "Y1"}},
    {"Z0", {-1, "Z2"}}, {"Z1", {+1, "X3"}}, {"Z2", {+1, "Z0"}}, {"Z3", {-1, "X1"}},
};

} // namespace

TEST_CASE("teleport branches recover every input on every outcome") {
    SeededRng rng(101);
    for (int t = 0; t < 100; ++t) {
        auto phi = random_ququart(rng);
        auto branches = teleport_branches(phi, default_resource());
        for (const auto& br : branches) {
            CHECK(br.probability == doctest::Approx(1.0 / 16).epsilon(1e-12));
            CHECK(state_fidelity(phi, br.clara_post) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("W3 branch carries (a, b, -c, -d) before correction") {
    StateVector phi({4}, {0.1, 0.2, 0.3, 0.4});
    auto branches = teleport_branches(phi, default_resource());
    const auto& w3 = branches[BasisLabel{Family::W, 3}.flat()];
    auto want = StateVector({4}, {0.1, 0.2, -0.3, -0.4}).normalized();
    CHECK(state_fidelity(want, w3.clara_pre) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identity teleport") {
    auto zero = StateVector::basis({4}, 0);
    for (const auto& br : teleport_branches(zero, default_resource()))
        CHECK(state_fidelity(zero, br.clara_post) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("teleport works with any resource label") {
    SeededRng rng(103);
    auto phi = random_ququart(rng);
    for (auto resource : all_labels()) {
        auto branches = teleport_branches(phi, resource);
        for (const auto& br : branches) {
            CHECK(br.probability == doctest::Approx(1.0 / 16).epsilon(1e-12));
            CHECK(state_fidelity(phi, br.clara_post) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("teleport rejects bad inputs") {
    CHECK_THROWS_AS(teleport_branches(StateVector({4}, {0.0, 0.0, 0.0, 0.0}), default_resource()),
                    InputError);
    CHECK_THROWS_AS(teleport_branches(StateVector::basis({4, 4}, 0), default_resource()), ShapeError);
}

TEST_CASE("teleport run replays bit-exactly and keeps fidelity 1") {
    SeededRng rng(107);
    auto phi = random_ququart(rng);
    auto a = teleport_run(phi, default_resource(), 42);
    auto b = teleport_run(phi, default_resource(), 42);
    CHECK(a == b);
    CHECK(a.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.steps.size() == 8);
    for (std::size_t k = 0; k < a.steps.size(); ++k) CHECK(a.steps[k].step == static_cast<int>(k));

    // transcripts serialize with the protocol name and outcome label
    auto j = to_json(a);
    CHECK(j["protocol"] == "teleport");
    CHECK(j["seed"] == 42);
    CHECK(j["steps"].size() == 8);
}

TEST_CASE("sampled teleport outcomes cover all 16 labels") {
    SeededRng rng(109);
    auto phi = random_ququart(rng);
    std::array<int, 16> counts{};
    for (int t = 0; t < 800; ++t) {
        auto run = teleport_run(phi, default_resource(), derive_seed(7, static_cast<std::uint64_t>(t)));
        ++counts[static_cast<std::size_t>(run.outcome.flat())];
        CHECK(run.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (int c : counts) CHECK(c > 10); // ~50 expected per outcome
}

TEST_CASE("derived swap table matches the hand-derived oracle") {
    auto table = derive_swap_table();
    for (const auto& e : table) {
        auto want = kExpectedSwap.at(e.outcome_23.str());
        CHECK(e.phase == want.first);
        CHECK(e.result_14.str() == want.second);
        CHECK(e.coefficient_magnitude == doctest::Approx(0.25).epsilon(1e-12));
    }

    // bijection: all 16 results distinct
    std::array<bool, 16> seen{};
    for (const auto& e : table) {
        CHECK(!seen[static_cast<std::size_t>(e.result_14.flat())]);
        seen[static_cast<std::size_t>(e.result_14.flat())] = true;
    }
}

TEST_CASE("swap probabilities are uniform") {
    for (double p : swap_outcome_probabilities())
        CHECK(p == doctest::Approx(1.0 / 16).epsilon(1e-12));
}

TEST_CASE("reference swap table and its data file") {
    auto ref = reference_swap_table();
    const auto& w0 = ref[BasisLabel{Family::W, 0}.flat()];
    CHECK(w0.result_14 == BasisLabel{Family::Z, 2});
    CHECK(w0.phase == +1);

    std::ifstream in(QUQUART_DATA_DIR "/swap_table.txt");
    REQUIRE(in.good());
    auto parsed = parse_swap_table(in);
    for (int k = 0; k < 16; ++k) {
        CHECK(parsed[static_cast<std::size_t>(k)].result_14 == ref[static_cast<std::size_t>(k)].result_14);
        CHECK(parsed[static_cast<std::size_t>(k)].phase == ref[static_cast<std::size_t>(k)].phase);
    }

    std::istringstream again(format_swap_table(ref));
    auto round = parse_swap_table(again);
    for (int k = 0; k < 16; ++k)
        CHECK(round[static_cast<std::size_t>(k)].result_14 == ref[static_cast<std::size_t>(k)].result_14);
}

TEST_CASE("swap diff flags the published bijection violations") {
    auto derived = derive_swap_table();
    auto diff = swap_table_diff(derived, reference_swap_table());
    CHECK(!diff.identical());
    CHECK(diff.mismatches.size() >= 2);
    CHECK(!diff.reference_is_bijection);

    std::vector<std::string> dup;
    for (auto l : diff.duplicated_reference_results) dup.push_back(l.str());
    CHECK(dup == std::vector<std::string>{"X3", "Z1"});

    std::vector<std::string> missing;
    for (auto l : diff.missing_reference_results) missing.push_back(l.str());
    CHECK(missing == std::vector<std::string>{"W3", "Y1"});

    // a self-diff is clean
    auto self_diff = swap_table_diff(derived, derived);
    CHECK(self_diff.identical());
    CHECK(self_diff.reference_is_bijection);
}

TEST_CASE("swap runs land on the derived table entry") {
    auto a = swap_run(7);
    auto b = swap_run(7);
    CHECK(a == b);
    for (int t = 0; t < 100; ++t) {
        auto run = swap_run(derive_seed(11, static_cast<std::uint64_t>(t)));
        CHECK(run.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("jsonl export emits one object per event") {
    auto run = swap_run(3);
    auto lines = to_jsonl(run.steps);
    std::size_t newlines = 0;
    for (char c : lines)
        if (c == '\n') ++newlines;
    CHECK(newlines == run.steps.size());
    CHECK(lines.find("\"kind\"") != std::string::npos);
    CHECK(lines.find("\"party\"") != std::string::npos);
}
