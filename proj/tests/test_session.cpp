// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ququart/serialize.hpp"
#include "ququart/session.hpp"

using namespace ququart;

namespace {

std::vector<StateVector> wxyz_projectors() {
    auto basis = build_basis();
    return {basis.states.begin(), basis.states.end()};
}

StateVector random_ququart(std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<Amplitude> amps(4);
    for (auto& a : amps) a = Amplitude{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
    return StateVector({4}, std::move(amps)).normalized();
}

} // namespace

TEST_CASE("session setup requires total ownership") {
    auto global = tensor_product(StateVector::basis({4}, 0), basis_state(default_resource()));
    CHECK_NOTHROW(Session(global, {Party::Alice, Party::Bob, Party::Bob}, 1));
    CHECK_THROWS_AS(Session(global, {}, 1), SetupError);
    CHECK_THROWS_AS(Session(global, {Party::Alice, Party::Bob}, 1), SetupError);
}

TEST_CASE("transfer moves ownership and logs") {
    auto global = tensor_product(StateVector::basis({4}, 0), basis_state(default_resource()));
    Session s(global, {Party::Alice, Party::Bob, Party::Bob}, 1);
    auto before = s.state().amps;

    s.transfer(Party::Bob, Party::Alice, std::array<int, 1>{1});
    s.transfer(Party::Bob, Party::Clara, std::array<int, 1>{2});
    CHECK(s.owner(1) == Party::Alice);
    CHECK(s.owner(2) == Party::Clara);
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(s.state().amps[i] == before[i]);

    // non-owner transfer is rejected
    CHECK_THROWS_AS(s.transfer(Party::Bob, Party::Alice, std::array<int, 1>{2}), AuthorizationError);

    // re-transfer logs as a distinct event
    auto log_before = s.log().size();
    s.transfer(Party::Clara, Party::Bob, std::array<int, 1>{2});
    s.transfer(Party::Bob, Party::Clara, std::array<int, 1>{2});
    CHECK(s.log().size() == log_before + 2);
}

TEST_CASE("measurement needs ownership and a 16-element basis") {
    auto global = tensor_product(random_ququart(31), basis_state(default_resource()));
    Session s(global, {Party::Alice, Party::Alice, Party::Clara}, 9);
    CHECK_THROWS_AS(s.measure(Party::Clara, std::array<int, 2>{0, 1}, wxyz_projectors()),
                    AuthorizationError);
    std::vector<StateVector> natural{StateVector::basis({4}, 0), StateVector::basis({4}, 1)};
    CHECK_THROWS_AS(s.measure(Party::Alice, std::array<int, 2>{0, 1}, natural), BasisError);

    auto outcome = s.measure(Party::Alice, std::array<int, 2>{0, 1}, wxyz_projectors());
    CHECK(outcome.flat() >= 0);
    CHECK(outcome.flat() < 16);
}

TEST_CASE("identical seed and script replay identically") {
    for (int rep = 0; rep < 2; ++rep) {
        auto a = scripted_teleport(random_ququart(77), default_resource(), 1234);
        auto b = scripted_teleport(random_ququart(77), default_resource(), 1234);
        CHECK(a.transcript == b.transcript);
        for (std::size_t i = 0; i < a.final_state.amps.size(); ++i)
            CHECK(a.final_state.amps[i] == b.final_state.amps[i]);
    }
}

TEST_CASE("correction requires the classical message first") {
    auto phi = random_ququart(41);
    auto global = tensor_product(phi, basis_state(default_resource()));
    Session s(global, {Party::Alice, Party::Alice, Party::Clara}, 3);
    auto outcome = s.measure(Party::Alice, std::array<int, 2>{0, 1}, wxyz_projectors());
    auto u = derive_correction(outcome, default_resource()).to_operator();

    CHECK_THROWS_AS(s.apply_correction(Party::Clara, u, 2, outcome), CausalityError);
    s.send_classical(Party::Alice, Party::Clara, outcome);
    CHECK_NOTHROW(s.apply_correction(Party::Clara, u, 2, outcome));

    // only the owner of the subsystem may correct it
    CHECK_THROWS_AS(s.apply_correction(Party::Bob, u, 2, outcome), AuthorizationError);
}

TEST_CASE("event steps are strictly increasing") {
    auto run = scripted_teleport(random_ququart(51), default_resource(), 8);
    for (std::size_t k = 1; k < run.transcript.steps.size(); ++k)
        CHECK(run.transcript.steps[k].step == run.transcript.steps[k - 1].step + 1);
}

TEST_CASE("scripted teleport matches the direct protocol computation") {
    for (std::uint64_t seed : {1ULL, 7ULL, 42ULL, 99ULL}) {
        auto phi = random_ququart(seed * 13 + 1);
        auto scripted = scripted_teleport(phi, default_resource(), seed);
        auto direct = teleport_run(phi, default_resource(), seed);

        CHECK(scripted.transcript.outcome == direct.outcome);
        CHECK(scripted.transcript.fidelity == doctest::Approx(1.0).epsilon(1e-12));

        auto branches = teleport_branches(phi, default_resource());
        const auto& br = branches[static_cast<std::size_t>(scripted.transcript.outcome.flat())];
        CHECK(state_fidelity(br.clara_post, scripted.final_state) ==
              doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(scripted.final_state.amps[i] - br.clara_post.amps[i]) < 1e-12);
    }
}

TEST_CASE("scripted swap matches the direct protocol computation") {
    for (std::uint64_t seed : {2ULL, 11ULL, 63ULL}) {
        auto scripted = scripted_swap(seed);
        auto direct = swap_run(seed);
        CHECK(scripted.transcript.outcome == direct.outcome);
        CHECK(scripted.transcript.fidelity == doctest::Approx(1.0).epsilon(1e-12));

        auto table = derive_swap_table();
        const auto& entry = table[static_cast<std::size_t>(scripted.transcript.outcome.flat())];
        CHECK(state_fidelity(basis_state(entry.result_14), scripted.final_state) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("session events export as json lines") {
    auto run = scripted_teleport(random_ququart(5), default_resource(), 2);
    auto lines = to_jsonl(run.transcript.steps);
    CHECK(lines.find("\"step\"") != std::string::npos);
    CHECK(lines.find("\"payload\"") != std::string::npos);
}
