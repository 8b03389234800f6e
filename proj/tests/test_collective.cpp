// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ququart/collective.hpp"

using namespace ququart;

namespace {

StateVector random_ququart(SeededRng& rng) {
    std::vector<Amplitude> amps(4);
    for (auto& a : amps) a = Amplitude{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
    return StateVector({4}, std::move(amps)).normalized();
}

constexpr std::array<CollectiveSystem, 2> kSystems{CollectiveSystem::ThreeQubit,
                                                   CollectiveSystem::TwoQutrit};

} // namespace

TEST_CASE("embedding basics") {
    for (auto system : kSystems) {
        const auto& map = embedding_for(system);
        CHECK(map.slot_dim() == (system == CollectiveSystem::ThreeQubit ? 8 : 9));

        // embed(|0>) is the first basis vector of the encoded subspace
        auto e0 = embed(StateVector::basis({4}, 0), map);
        CHECK(std::abs(inner_product(map.eeb.vectors[0], e0) - Amplitude{1.0, 0.0}) < 1e-12);

        // isometry on 100 random pairs
        SeededRng rng(211);
        for (int t = 0; t < 100; ++t) {
            auto u = random_ququart(rng), v = random_ququart(rng);
            auto uv = inner_product(u, v);
            auto euv = inner_product(embed(u, map), embed(v, map));
            CHECK(std::abs(uv - euv) < 1e-12);
        }
    }
}

TEST_CASE("logical projection round trips and measures leakage") {
    for (auto system : kSystems) {
        const auto& map = embedding_for(system);
        SeededRng rng(223);
        auto v = random_ququart(rng);
        auto proj = project_logical(embed(v, map), map);
        CHECK(proj.residual_norm < 1e-12);
        CHECK(state_fidelity(v, proj.logical) == doctest::Approx(1.0).epsilon(1e-12));
    }

    // a UPB member is orthogonal to the whole encoded subspace: residual 1
    const auto& map = embedding_for(CollectiveSystem::ThreeQubit);
    auto outside = shifts_upb().members[0].full_state();
    auto proj = project_logical(outside, map);
    CHECK(proj.residual_norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(project_logical(outside, map, kLeakageTol), LeakageError);
}

TEST_CASE("embedded resource carries the X1 coefficient pattern") {
    for (auto system : kSystems) {
        const auto& map = embedding_for(system);
        auto phys = embed_pair(basis_state(default_resource()), map);
        auto proj = project_logical_pair(phys, map);
        CHECK(proj.residual_norm < 1e-12);
        auto at = [&](int i, int j) { return proj.logical.amps[static_cast<std::size_t>(i * 4 + j)]; };
        CHECK(std::abs(at(1, 0) - Amplitude{0.5, 0.0}) < 1e-12);
        CHECK(std::abs(at(2, 1) - Amplitude{0.5, 0.0}) < 1e-12);
        CHECK(std::abs(at(3, 2) - Amplitude{-0.5, 0.0}) < 1e-12);
        CHECK(std::abs(at(0, 3) - Amplitude{-0.5, 0.0}) < 1e-12);
    }
}

TEST_CASE("embedded operators are unitary and act as identity off the code") {
    for (auto system : kSystems) {
        const auto& map = embedding_for(system);
        for (auto l : all_labels()) {
            auto u = embed_operator(derive_correction(l, default_resource()).to_operator(), map);
            CHECK(u.is_unitary(1e-12));
        }
        // identity off the code: apply to a UPB member, nothing changes
        auto u = embed_operator(derive_correction(all_labels()[3], default_resource()).to_operator(), map);
        auto outside = (system == CollectiveSystem::ThreeQubit ? shifts_upb() : tiles_upb())
                           .members[0]
                           .full_state();
        auto moved = apply(u, outside);
        CHECK(state_fidelity(outside, moved) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("collective teleportation recovers the logical input on every branch") {
    SeededRng rng(227);
    for (auto system : kSystems) {
        auto phi = random_ququart(rng);
        auto branches = collective_teleport_branches(system, phi);
        auto logical = teleport_branches(phi, default_resource());
        for (const auto& br : branches) {
            CHECK(br.probability == doctest::Approx(1.0 / 16).epsilon(1e-12));
            CHECK(br.fidelity >= 1.0 - 1e-10);
            CHECK(br.max_residual < 1e-8);
            // commutation with the logical protocol, branch by branch
            const auto& lb = logical[static_cast<std::size_t>(br.outcome.flat())];
            CHECK(state_fidelity(lb.clara_post, br.logical_post) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(std::abs(br.probability - lb.probability) < 1e-12);
        }
    }
}

TEST_CASE("collective teleport of a basis state") {
    auto zero = StateVector::basis({4}, 0);
    auto run = collective_teleport(CollectiveSystem::ThreeQubit, zero, 5);
    CHECK(run.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    auto replay = collective_teleport(CollectiveSystem::ThreeQubit, zero, 5);
    CHECK(run == replay);
}

TEST_CASE("collective swap lands every branch on the derived table") {
    for (auto system : kSystems) {
        auto branches = collective_swap_branches(system);
        auto logical_probs = swap_outcome_probabilities();
        auto table = derive_swap_table();
        for (const auto& br : branches) {
            CHECK(br.probability == doctest::Approx(1.0 / 16).epsilon(1e-12));
            CHECK(std::abs(br.probability - logical_probs[static_cast<std::size_t>(br.outcome.flat())]) <
                  1e-12);
            CHECK(br.fidelity >= 1.0 - 1e-10);
            CHECK(br.residual < 1e-8);
            CHECK(br.expected_result == table[static_cast<std::size_t>(br.outcome.flat())].result_14);
        }
    }
}

TEST_CASE("collective swap replays bit-exactly") {
    auto a = collective_swap(CollectiveSystem::ThreeQubit, 17);
    auto b = collective_swap(CollectiveSystem::ThreeQubit, 17);
    CHECK(a == b);
    CHECK(a.fidelity == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("physical measurement distribution matches the logical one") {
    for (auto system : kSystems) {
        const auto& map = embedding_for(system);
        SeededRng rng(229);
        auto phi = random_ququart(rng);
        StateVector total =
            tensor_product(embed(phi, map), embed_pair(basis_state(default_resource()), map));
        std::vector<int> targets;
        for (int k = 0; k < 2 * map.parties_per_slot(); ++k) targets.push_back(k);
        auto probs = outcome_probabilities(total, embedded_pair_basis(map), targets);
        double sum = 0.0;
        for (double p : probs) {
            CHECK(p == doctest::Approx(1.0 / 16).epsilon(1e-12));
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-10)); // no leakage
    }
}
