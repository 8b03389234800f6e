// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include "ququart/upb.hpp"

#include <cmath>

#include "ququart/basis.hpp"

namespace ququart {

namespace {

constexpr double kEntangledTol = 1e-6; // second Schmidt value above this => entangled

StateVector local(int dim, std::vector<double> re) {
    std::vector<Amplitude> amps;
    amps.reserve(re.size());
    for (double r : re) amps.emplace_back(r, 0.0);
    return StateVector({dim}, std::move(amps)).normalized();
}

// Orthonormal spanning set of possibly dependent vectors (MGS, small
// residuals dropped).
std::vector<std::vector<Amplitude>> orthonormal_span(const std::vector<const StateVector*>& vecs) {
    std::vector<std::vector<Amplitude>> out;
    for (const auto* v : vecs) {
        std::vector<Amplitude> r = v->amps;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : out) {
                Amplitude ov{0.0, 0.0};
                for (std::size_t i = 0; i < r.size(); ++i) ov += std::conj(u[i]) * r[i];
                for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ov * u[i];
            }
        double nr = 0.0;
        for (const auto& x : r) nr += std::norm(x);
        nr = std::sqrt(nr);
        if (nr < kRankTol) continue;
        for (auto& x : r) x /= nr;
        out.push_back(std::move(r));
    }
    return out;
}

// All bipartitions of parties 0..m-1, each as the side containing party 0.
std::vector<std::vector<int>> bipartitions(int parties) {
    std::vector<std::vector<int>> cuts;
    for (int mask = 1; mask < (1 << parties); ++mask) {
        if (!(mask & 1)) continue;                  // canonical side holds party 0
        if (mask == (1 << parties) - 1) continue;   // complement must be non-empty
        std::vector<int> side;
        for (int k = 0; k < parties; ++k)
            if (mask & (1 << k)) side.push_back(k);
        cuts.push_back(std::move(side));
    }
    return cuts;
}

bool entangled_every_cut(const StateVector& v, const std::vector<std::vector<int>>& cuts) {
    for (const auto& cut : cuts) {
        auto sv = schmidt_singular_values(v, cut);
        if (sv.size() < 2 || sv[1] <= kEntangledTol) return false;
    }
    return true;
}

} // namespace

StateVector ProductBasisMember::full_state() const {
    StateVector out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) out = tensor_product(out, factors[k]);
    return out;
}

std::vector<int> Upb::dims() const { return std::vector<int>(static_cast<std::size_t>(parties), local_dim); }

std::vector<StateVector> Upb::full_states() const {
    std::vector<StateVector> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.full_state());
    return out;
}

Upb shifts_upb() {
    StateVector zero = local(2, {1, 0});
    StateVector one = local(2, {0, 1});
    StateVector plus = local(2, {1, 1});
    StateVector minus = local(2, {1, -1});
    Upb upb;
    upb.parties = 3;
    upb.local_dim = 2;
    upb.members = {
        ProductBasisMember{{zero, one, plus}},
        ProductBasisMember{{one, plus, zero}},
        ProductBasisMember{{plus, zero, one}},
        ProductBasisMember{{minus, minus, minus}},
    };
    return upb;
}

Upb tiles_upb() {
    StateVector k0 = local(3, {1, 0, 0});
    StateVector k2 = local(3, {0, 0, 1});
    StateVector d01 = local(3, {1, -1, 0});
    StateVector d12 = local(3, {0, 1, -1});
    StateVector sum = local(3, {1, 1, 1});
    Upb upb;
    upb.parties = 2;
    upb.local_dim = 3;
    upb.members = {
        ProductBasisMember{{k0, d01}},
        ProductBasisMember{{k2, d12}},
        ProductBasisMember{{d01, k2}},
        ProductBasisMember{{d12, k0}},
        ProductBasisMember{{sum, sum}},
    };
    return upb;
}

UpbReport verify_upb(const Upb& upb) {
    UpbReport report;
    const int m = static_cast<int>(upb.members.size());
    const int parties = upb.parties;
    const int d = upb.local_dim;

    auto fulls = upb.full_states();
    report.max_pairwise_overlap = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double ov = std::abs(inner_product(fulls[static_cast<std::size_t>(i)],
                                               fulls[static_cast<std::size_t>(j)]));
            report.max_pairwise_overlap = std::max(report.max_pairwise_overlap, ov);
        }
    report.orthogonal = report.max_pairwise_overlap <= kOrthoTol;

    // A new orthogonal product state needs, for every member, some party
    // whose factor kills the overlap. Try every assignment of members to
    // "killing" parties; the assignment fails as soon as one party's
    // assigned factors span its whole local space.
    long total_assignments = 1;
    for (int i = 0; i < m; ++i) total_assignments *= parties;

    report.unextendible = true;
    report.assignments_checked = 0;
    std::vector<int> assign(static_cast<std::size_t>(m), 0);
    for (long code = 0; code < total_assignments; ++code) {
        long c = code;
        for (int i = 0; i < m; ++i) {
            assign[static_cast<std::size_t>(i)] = static_cast<int>(c % parties);
            c /= parties;
        }
        ++report.assignments_checked;

        bool blocked = false;
        std::vector<std::vector<std::vector<Amplitude>>> spans(static_cast<std::size_t>(parties));
        for (int party = 0; party < parties && !blocked; ++party) {
            std::vector<const StateVector*> factors;
            for (int i = 0; i < m; ++i)
                if (assign[static_cast<std::size_t>(i)] == party)
                    factors.push_back(&upb.members[static_cast<std::size_t>(i)]
                                           .factors[static_cast<std::size_t>(party)]);
            auto span = orthonormal_span(factors);
            if (static_cast<int>(span.size()) >= d) blocked = true;
            spans[static_cast<std::size_t>(party)] = std::move(span);
        }
        if (blocked) continue;

        // Unblocked assignment: build the witness from each party's local
        // complement and double-check it against every member.
        std::vector<StateVector> witness;
        for (int party = 0; party < parties; ++party) {
            std::vector<StateVector> span_states;
            for (auto& v : spans[static_cast<std::size_t>(party)])
                span_states.emplace_back(std::vector<int>{d}, v);
            auto comp = complement_orthonormal_basis(span_states, d);
            witness.push_back(comp.front());
        }
        StateVector wit_full = witness.front();
        for (int k = 1; k < parties; ++k) wit_full = tensor_product(wit_full, witness[static_cast<std::size_t>(k)]);
        for (const auto& f : fulls)
            if (std::abs(inner_product(f, wit_full)) > kAssertTol)
                throw StructureError("verify_upb: witness construction failed orthogonality");

        report.unextendible = false;
        report.extension_witness = std::move(witness);
        break;
    }
    return report;
}

EesBasis extract_ees(const Upb& upb, int samples, std::uint64_t seed) {
    auto report = verify_upb(upb);
    if (!report.passed())
        throw StructureError("extract_ees: UPB verification failed");

    long total = 1;
    for (int k = 0; k < upb.parties; ++k) total *= upb.local_dim;

    EesBasis ees;
    ees.dims = upb.dims();
    ees.vectors = complement_orthonormal_basis(upb.full_states(), total);

    // The raw lexicographic complement of the 2x2x2 construction contains a
    // vector that is product across the first cut (|1> (x) chi_23). A fixed
    // orthogonal recombination with the +-1 family patterns spreads every
    // output across all cuts while keeping the construction deterministic.
    if (ees.vectors.size() == 4) {
        std::vector<StateVector> mixed;
        mixed.reserve(4);
        for (int f = 0; f < 4; ++f) {
            std::vector<Amplitude> amps(static_cast<std::size_t>(total), Amplitude{0.0, 0.0});
            for (int k = 0; k < 4; ++k) {
                double w = 0.5 * family_sign(static_cast<Family>(f), k);
                for (long a = 0; a < total; ++a)
                    amps[static_cast<std::size_t>(a)] +=
                        w * ees.vectors[static_cast<std::size_t>(k)].amps[static_cast<std::size_t>(a)];
            }
            mixed.emplace_back(ees.dims, std::move(amps));
        }
        ees.vectors = std::move(mixed);
    }

    auto cuts = bipartitions(upb.parties);
    for (const auto& v : ees.vectors)
        if (!entangled_every_cut(v, cuts))
            throw StructureError("extract_ees: complement basis vector is product across a cut");

    SeededRng rng(seed);
    const int n = static_cast<int>(ees.vectors.size());
    for (int s = 0; s < samples; ++s) {
        std::vector<Amplitude> coeffs(static_cast<std::size_t>(n));
        for (auto& ci : coeffs)
            ci = Amplitude{2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0};
        StateVector combo(ees.dims, std::vector<Amplitude>(static_cast<std::size_t>(total), Amplitude{0.0, 0.0}));
        for (int i = 0; i < n; ++i)
            for (long a = 0; a < total; ++a)
                combo.amps[static_cast<std::size_t>(a)] +=
                    coeffs[static_cast<std::size_t>(i)] *
                    ees.vectors[static_cast<std::size_t>(i)].amps[static_cast<std::size_t>(a)];
        combo = combo.normalized();
        if (!entangled_every_cut(combo, cuts))
            throw StructureError("extract_ees: sampled combination is product across a cut");
    }
    return ees;
}

std::vector<std::pair<int, int>> solve_dimension_equation(int max_parties, int max_local_dim) {
    if (max_parties < 2 || max_local_dim < 2)
        throw InputError("solve_dimension_equation: bounds must be >= 2");
    std::vector<std::pair<int, int>> solutions;
    for (int parties = 2; parties <= max_parties; ++parties)
        for (int d = 2; d <= max_local_dim; ++d) {
            long long power = 1;
            bool overflow = false;
            for (int k = 0; k < parties; ++k) {
                power *= d;
                if (power > (1LL << 40)) {
                    overflow = true;
                    break;
                }
            }
            if (overflow) continue;
            if (power - static_cast<long long>(parties) * (d - 1) - 1 == 4)
                solutions.emplace_back(parties, d);
        }
    return solutions;
}

} // namespace ququart
