// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "ququart/basis.hpp"
#include "ququart/qmath.hpp"

using namespace ququart;

namespace {

StateVector random_state(std::vector<int> dims, SeededRng& rng, bool normalize = true) {
    long total = 1;
    for (int d : dims) total *= d;
    std::vector<Amplitude> amps(static_cast<std::size_t>(total));
    for (auto& a : amps) a = Amplitude{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
    StateVector v(std::move(dims), std::move(amps));
    return normalize ? v.normalized() : v;
}

StateVector ququart_state(Amplitude a, Amplitude b, Amplitude c, Amplitude d) {
    return StateVector({4}, {a, b, c, d});
}

} // namespace

TEST_CASE("state vector validation") {
    CHECK_THROWS_AS(StateVector({4}, {1.0, 0.0}), ShapeError);
    CHECK_THROWS_AS(StateVector({1}, {1.0}), ShapeError);
    CHECK_THROWS_AS(StateVector({2}, {std::nan(""), 0.0}), InputError);
    CHECK_THROWS_AS(StateVector::basis({4}, 7), ShapeError);
    // dimension cap at 2^20
    std::vector<int> too_big(21, 2);
    CHECK_THROWS_AS(StateVector::basis(too_big, 0), DimensionError);
}

TEST_CASE("tensor product basics") {
    auto z4 = StateVector::basis({4}, 0);
    auto prod = tensor_product(z4, z4);
    CHECK(prod.dims == std::vector<int>{4, 4});
    CHECK(prod.amps[0] == Amplitude{1.0, 0.0});
    for (std::size_t i = 1; i < 16; ++i) CHECK(prod.amps[i] == Amplitude{0.0, 0.0});
}

TEST_CASE("input (x) X1 reproduces the teleport total state") {
    auto phi = ququart_state(0.5, 0.5, 0.5, 0.5);
    auto total = tensor_product(phi, basis_state(BasisLabel{Family::X, 1}));
    CHECK(total.dims == std::vector<int>{4, 4, 4});
    // X1 carries +1/2 at pairs (1,0),(2,1) and -1/2 at (3,2),(0,3).
    auto at = [&](int a, int m, int k) { return total.amps[static_cast<std::size_t>(a * 16 + m * 4 + k)]; };
    for (int a = 0; a < 4; ++a) {
        CHECK(at(a, 1, 0).real() == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(at(a, 2, 1).real() == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(at(a, 3, 2).real() == doctest::Approx(-0.25).epsilon(1e-15));
        CHECK(at(a, 0, 3).real() == doctest::Approx(-0.25).epsilon(1e-15));
        CHECK(at(a, 0, 0) == Amplitude{0.0, 0.0});
    }
}

TEST_CASE("norms multiply over 100 random pairs") {
    SeededRng rng(11);
    for (int t = 0; t < 100; ++t) {
        auto a = random_state({4}, rng, false);
        auto b = random_state({2, 2}, rng, false);
        CHECK(tensor_product(a, b).norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-12));
    }
    CHECK_THROWS_AS(tensor_product(StateVector::basis(std::vector<int>(10, 4), 0),
                                   StateVector::basis(std::vector<int>(2, 4), 0)),
                    DimensionError);
}

TEST_CASE("inner product") {
    auto z = StateVector::basis({4}, 0);
    CHECK(inner_product(z, z) == Amplitude{1.0, 0.0});
    CHECK(inner_product(basis_state(BasisLabel{Family::W, 0}), basis_state(BasisLabel{Family::Z, 2})) ==
          Amplitude{0.0, 0.0});
    CHECK(inner_product(basis_state(BasisLabel{Family::W, 0}), basis_state(BasisLabel{Family::W, 0}))
              .real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(inner_product(z, StateVector::basis({2, 2}, 0)), ShapeError);

    // conjugate-linear in the first argument
    SeededRng rng(5);
    auto a = random_state({4}, rng), b = random_state({4}, rng);
    auto ab = inner_product(a, b), ba = inner_product(b, a);
    CHECK(ab.real() == doctest::Approx(ba.real()).epsilon(1e-12));
    CHECK(ab.imag() == doctest::Approx(-ba.imag()).epsilon(1e-12));
}

TEST_CASE("apply_local identity and corrections") {
    SeededRng rng(7);
    auto state = random_state({4, 4}, rng);
    const std::array<int, 1> first{0};
    auto same = apply_local(state, Operator::identity(4), first);
    for (std::size_t i = 0; i < 16; ++i) CHECK(same.amps[i] == state.amps[i]);

    // diag(1,1,-1,-1) fixes the W3 teleport branch
    Operator u_w3(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1});
    auto branch = ququart_state(0.1, 0.2, -0.3, -0.4).normalized();
    auto fixed = apply_local(branch, u_w3, std::array<int, 1>{0});
    auto want = ququart_state(0.1, 0.2, 0.3, 0.4).normalized();
    CHECK(std::abs(inner_product(want, fixed) - Amplitude{1.0, 0.0}) < 1e-14);

    CHECK_THROWS_AS(apply_local(state, Operator::identity(3), first), ShapeError);
    CHECK_THROWS_AS(apply_local(state, Operator::identity(4), std::array<int, 1>{5}), ShapeError);
}

TEST_CASE("cyclic shift round trip") {
    // X|k> = |k+1 mod 4>
    Operator shift(4, std::vector<Amplitude>(16, Amplitude{0.0, 0.0}));
    for (int k = 0; k < 4; ++k) shift.at((k + 1) % 4, k) = 1.0;
    SeededRng rng(13);
    auto state = random_state({4, 4, 4}, rng);
    const std::array<int, 1> mid{1};
    auto back = apply_local(apply_local(state, shift, mid), shift.adjoint(), mid);
    for (std::size_t i = 0; i < state.amps.size(); ++i)
        CHECK(std::abs(back.amps[i] - state.amps[i]) < 1e-14);
    CHECK(shift.is_unitary());
}

TEST_CASE("partial trace") {
    auto p00 = tensor_product(StateVector::basis({2}, 0), StateVector::basis({2}, 0));
    auto rho = partial_trace(p00, std::array<int, 1>{0});
    CHECK(rho.dim == 2);
    CHECK(rho.at(0, 0) == Amplitude{1.0, 0.0});
    CHECK(rho.at(1, 1) == Amplitude{0.0, 0.0});
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-15));

    // maximally entangled states reduce to I/4 on either side
    for (int side = 0; side < 2; ++side) {
        auto r = partial_trace(basis_state(BasisLabel{Family::W, 0}), std::array<int, 1>{side});
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double want = i == j ? 0.25 : 0.0;
                CHECK(std::abs(r.at(i, j) - Amplitude{want, 0.0}) < 1e-14);
            }
        CHECK(purity(r) == doctest::Approx(0.25).epsilon(1e-14));
    }

    SeededRng rng(3);
    for (int t = 0; t < 20; ++t) {
        auto v = random_state({2, 2, 2}, rng);
        auto r = partial_trace(v, std::array<int, 1>{1});
        CHECK(purity(r) <= 1.0 + 1e-12);
        CHECK(r.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(r.trace().imag()) < 1e-12);
        // Hermitian and PSD
        for (int i = 0; i < r.dim; ++i)
            for (int j = 0; j < r.dim; ++j)
                CHECK(std::abs(r.at(i, j) - std::conj(r.at(j, i))) < 1e-12);
        for (double ev : hermitian_eigenvalues(r)) CHECK(ev > -1e-10);
    }
}

TEST_CASE("partial trace is order-independent over disjoint discards") {
    // discard subsystem 1, then discard what was subsystem 3, against
    // discarding both at once
    auto trace_out_last = [](const Operator& rho, int keep_dim, int drop_dim) {
        Operator out(keep_dim, std::vector<Amplitude>(static_cast<std::size_t>(keep_dim) * keep_dim,
                                                      Amplitude{0.0, 0.0}));
        for (int a = 0; a < keep_dim; ++a)
            for (int b = 0; b < keep_dim; ++b)
                for (int k = 0; k < drop_dim; ++k)
                    out.at(a, b) += rho.at(a * drop_dim + k, b * drop_dim + k);
        return out;
    };

    SeededRng rng(17);
    auto v = random_state({2, 3, 2, 2}, rng);
    auto both_at_once = partial_trace(v, std::array<int, 2>{0, 2});
    auto step_one = partial_trace(v, std::array<int, 3>{0, 2, 3}); // drop subsystem 1 first
    auto stepwise = trace_out_last(step_one, 4, 2);                // then drop the old subsystem 3
    REQUIRE(stepwise.dim == both_at_once.dim);
    for (int i = 0; i < stepwise.dim; ++i)
        for (int j = 0; j < stepwise.dim; ++j)
            CHECK(std::abs(both_at_once.at(i, j) - stepwise.at(i, j)) < 1e-12);
}

TEST_CASE("hermitian eigenvalues") {
    Operator h(3, {2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 5.0});
    auto eig = hermitian_eigenvalues(h);
    CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eig[2] == doctest::Approx(5.0).epsilon(1e-12));

    // complex Hermitian: [[1, i],[-i, 1]] has eigenvalues 0 and 2
    Operator hc(2, {Amplitude{1, 0}, Amplitude{0, 1}, Amplitude{0, -1}, Amplitude{1, 0}});
    auto eigc = hermitian_eigenvalues(hc);
    CHECK(eigc[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eigc[1] == doctest::Approx(2.0).epsilon(1e-12));

    // eigenvalue sum and square sum match trace and Frobenius norm
    SeededRng rng(23);
    for (int t = 0; t < 10; ++t) {
        auto v = random_state({3, 3}, rng);
        auto rho = partial_trace(v, std::array<int, 1>{0});
        auto eigs = hermitian_eigenvalues(rho);
        double sum = 0.0, sq = 0.0;
        for (double e : eigs) {
            sum += e;
            sq += e * e;
        }
        CHECK(sum == doctest::Approx(rho.trace().real()).epsilon(1e-10));
        CHECK(sq == doctest::Approx(purity(rho)).epsilon(1e-10));
    }
}

TEST_CASE("schmidt values") {
    auto prod = tensor_product(StateVector::basis({4}, 2), StateVector::basis({4}, 1));
    auto sv = schmidt_singular_values(prod, std::array<int, 1>{0});
    CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t k = 1; k < sv.size(); ++k) CHECK(std::abs(sv[k]) < 1e-10);

    auto w0 = schmidt_singular_values(basis_state(BasisLabel{Family::W, 0}), std::array<int, 1>{0});
    REQUIRE(w0.size() == 4);
    for (double v : w0) CHECK(v == doctest::Approx(0.5).epsilon(1e-10));

    CHECK(schmidt_rank(basis_state(BasisLabel{Family::X, 1}), std::array<int, 1>{0}) == 4);

    SeededRng rng(29);
    for (int t = 0; t < 20; ++t) {
        auto v = random_state({2, 2, 3}, rng);
        auto vals = schmidt_singular_values(v, std::array<int, 2>{0, 2});
        double sq = 0.0;
        for (double x : vals) sq += x * x;
        CHECK(sq == doctest::Approx(1.0).epsilon(1e-10));
        for (std::size_t k = 1; k < vals.size(); ++k) CHECK(vals[k - 1] >= vals[k] - 1e-12);
    }

    CHECK_THROWS_AS(schmidt_singular_values(prod, std::array<int, 2>{0, 1}), ShapeError);
}

TEST_CASE("orthogonal complement") {
    std::vector<StateVector> in{StateVector::basis({4}, 0), StateVector::basis({4}, 1)};
    auto comp = complement_orthonormal_basis(in, 4);
    REQUIRE(comp.size() == 2);
    CHECK(std::abs(comp[0].amps[2] - Amplitude{1.0, 0.0}) < 1e-14);
    CHECK(std::abs(comp[1].amps[3] - Amplitude{1.0, 0.0}) < 1e-14);

    // deterministic: bit-identical on a rerun
    SeededRng rng(31);
    std::vector<StateVector> span{random_state({2, 2, 2}, rng), random_state({2, 2, 2}, rng),
                                  random_state({2, 2, 2}, rng)};
    auto c1 = complement_orthonormal_basis(span, 8);
    auto c2 = complement_orthonormal_basis(span, 8);
    REQUIRE(c1.size() == 5);
    for (std::size_t k = 0; k < c1.size(); ++k)
        for (std::size_t i = 0; i < 8; ++i) CHECK(c1[k].amps[i] == c2[k].amps[i]);

    // complement together with the span covers the space and is orthogonal
    for (const auto& c : c1) {
        for (const auto& v : span) CHECK(std::abs(inner_product(v, c)) < 1e-10);
        for (const auto& d : c1)
            if (&c != &d) CHECK(std::abs(inner_product(c, d)) < 1e-10);
    }
    auto all = span;
    all.insert(all.end(), c1.begin(), c1.end());
    CHECK(complement_orthonormal_basis(all, 8).empty());

    // dependent inputs are rejected
    std::vector<StateVector> dep{span[0], span[0]};
    CHECK_THROWS_AS(complement_orthonormal_basis(dep, 8), RankError);
}

TEST_CASE("born measurement basics") {
    auto z = StateVector::basis({4}, 0);
    std::vector<StateVector> natural;
    for (int k = 0; k < 4; ++k) natural.push_back(StateVector::basis({4}, k));
    auto m = born_measure(z, natural, std::array<int, 1>{0}, 99);
    CHECK(m.outcome == 0);
    CHECK(m.probability == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(m.post_state.amps[0] - Amplitude{1.0, 0.0}) < 1e-14);
}

TEST_CASE("teleport total state measures uniformly") {
    SeededRng rng(41);
    auto phi = random_state({4}, rng);
    auto total = tensor_product(phi, basis_state(BasisLabel{Family::X, 1}));
    auto basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    auto probs = outcome_probabilities(total, projectors, std::array<int, 2>{0, 1});
    REQUIRE(probs.size() == 16);
    for (double p : probs) CHECK(p == doctest::Approx(1.0 / 16).epsilon(1e-12));
}

TEST_CASE("born completeness holds for 100 random states") {
    SeededRng rng(43);
    auto basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    for (int t = 0; t < 100; ++t) {
        auto v = random_state({4, 4}, rng);
        auto probs = outcome_probabilities(v, projectors, std::array<int, 2>{0, 1});
        double sum = 0.0;
        for (double p : probs) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("born measurement rejects incomplete bases") {
    SeededRng rng(47);
    auto v = random_state({4}, rng);
    std::vector<StateVector> partial{StateVector::basis({4}, 0), StateVector::basis({4}, 1)};
    CHECK_THROWS_AS(born_measure(v, partial, std::array<int, 1>{0}, 1), BasisError);
}

TEST_CASE("born measurement replays bit-exactly") {
    SeededRng rng(53);
    auto v = random_state({4, 4}, rng);
    auto basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    auto a = born_measure(v, projectors, std::array<int, 2>{0, 1}, 1234);
    auto b = born_measure(v, projectors, std::array<int, 2>{0, 1}, 1234);
    CHECK(a.outcome == b.outcome);
    CHECK(a.probability == b.probability);
    for (std::size_t i = 0; i < a.post_state.amps.size(); ++i)
        CHECK(a.post_state.amps[i] == b.post_state.amps[i]);
}

TEST_CASE("projector completeness of handled bases") {
    // sum_k |b_k><b_k| = I within 1e-12, checked entrywise
    auto basis = build_basis();
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            Amplitude s{0.0, 0.0};
            for (const auto& b : basis.states)
                s += b.amps[static_cast<std::size_t>(r)] * std::conj(b.amps[static_cast<std::size_t>(c)]);
            Amplitude want = r == c ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            CHECK(std::abs(s - want) < 1e-12);
        }
}
