// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include "ququart/collective.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace ququart {

namespace {

constexpr double kLogicalFidTol = 1e-10;

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Subsystem indices of slot `k` (0-based) in a chain of equal slots.
std::vector<int> slot_targets(const EmbeddingMap& map, int slot) {
    int p = map.parties_per_slot();
    std::vector<int> t(static_cast<std::size_t>(p));
    std::iota(t.begin(), t.end(), slot * p);
    return t;
}

std::vector<int> two_slot_targets(const EmbeddingMap& map, int first_slot) {
    auto a = slot_targets(map, first_slot);
    auto b = slot_targets(map, first_slot + 1);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

std::string collective_system_name(CollectiveSystem s) {
    return s == CollectiveSystem::ThreeQubit ? "three_qubit" : "two_qutrit";
}

long EmbeddingMap::slot_dim() const {
    long d = 1;
    for (int k : eeb.dims) d *= k;
    return d;
}

const EmbeddingMap& embedding_for(CollectiveSystem system) {
    static const EmbeddingMap three_qubit{CollectiveSystem::ThreeQubit, extract_ees(shifts_upb())};
    static const EmbeddingMap two_qutrit{CollectiveSystem::TwoQutrit, extract_ees(tiles_upb())};
    return system == CollectiveSystem::ThreeQubit ? three_qubit : two_qutrit;
}

StateVector embed(const StateVector& logical, const EmbeddingMap& map) {
    if (logical.dims != std::vector<int>{4})
        throw ShapeError("embed: logical state must be a single ququart");
    long d = map.slot_dim();
    std::vector<Amplitude> amps(static_cast<std::size_t>(d), Amplitude{0.0, 0.0});
    for (int i = 0; i < 4; ++i) {
        Amplitude c = logical.amps[static_cast<std::size_t>(i)];
        if (c == Amplitude{0.0, 0.0}) continue;
        const auto& eps = map.eeb.vectors[static_cast<std::size_t>(i)];
        for (long a = 0; a < d; ++a) amps[static_cast<std::size_t>(a)] += c * eps.amps[static_cast<std::size_t>(a)];
    }
    return StateVector(map.eeb.dims, std::move(amps));
}

StateVector embed_pair(const StateVector& logical, const EmbeddingMap& map) {
    if (logical.dims != std::vector<int>{4, 4})
        throw ShapeError("embed_pair: logical state must be two ququarts");
    std::vector<int> dims = map.eeb.dims;
    dims.insert(dims.end(), map.eeb.dims.begin(), map.eeb.dims.end());
    long d = map.slot_dim();
    std::vector<Amplitude> amps(static_cast<std::size_t>(d * d), Amplitude{0.0, 0.0});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Amplitude c = logical.amps[static_cast<std::size_t>(i * 4 + j)];
            if (c == Amplitude{0.0, 0.0}) continue;
            const auto& ei = map.eeb.vectors[static_cast<std::size_t>(i)];
            const auto& ej = map.eeb.vectors[static_cast<std::size_t>(j)];
            for (long a = 0; a < d; ++a) {
                Amplitude ca = c * ei.amps[static_cast<std::size_t>(a)];
                if (ca == Amplitude{0.0, 0.0}) continue;
                for (long b = 0; b < d; ++b)
                    amps[static_cast<std::size_t>(a * d + b)] += ca * ej.amps[static_cast<std::size_t>(b)];
            }
        }
    return StateVector(std::move(dims), std::move(amps));
}

Operator embed_operator(const Operator& u, const EmbeddingMap& map) {
    if (u.dim != 4) throw ShapeError("embed_operator: logical operator must be 4x4");
    int d = static_cast<int>(map.slot_dim());
    // E U E^dagger
    Operator out(d, std::vector<Amplitude>(static_cast<std::size_t>(d) * d, Amplitude{0.0, 0.0}));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Amplitude uij = u.at(i, j);
            if (uij == Amplitude{0.0, 0.0}) continue;
            const auto& ei = map.eeb.vectors[static_cast<std::size_t>(i)];
            const auto& ej = map.eeb.vectors[static_cast<std::size_t>(j)];
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    out.at(r, c) += uij * ei.amps[static_cast<std::size_t>(r)] *
                                    std::conj(ej.amps[static_cast<std::size_t>(c)]);
        }
    // + (I - E E^dagger): identity on the complement of the encoded subspace
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            Amplitude proj{0.0, 0.0};
            for (int i = 0; i < 4; ++i) {
                const auto& ei = map.eeb.vectors[static_cast<std::size_t>(i)];
                proj += ei.amps[static_cast<std::size_t>(r)] * std::conj(ei.amps[static_cast<std::size_t>(c)]);
            }
            out.at(r, c) += ((r == c) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0}) - proj;
        }
    return out;
}

std::vector<StateVector> embedded_pair_basis(const EmbeddingMap& map) {
    std::vector<StateVector> out;
    out.reserve(16);
    for (auto l : all_labels()) out.push_back(embed_pair(basis_state(l), map));
    return out;
}

LogicalProjection project_logical(const StateVector& physical, const EmbeddingMap& map,
                                  double max_residual) {
    if (physical.dims != map.eeb.dims)
        throw ShapeError("project_logical: physical dims do not match the embedding");
    std::vector<Amplitude> coeffs(4);
    for (int i = 0; i < 4; ++i)
        coeffs[static_cast<std::size_t>(i)] = inner_product(map.eeb.vectors[static_cast<std::size_t>(i)], physical);

    // Residual as an explicit vector; the norm-difference route squares away
    // into rounding noise for in-subspace states.
    std::vector<Amplitude> rest = physical.amps;
    for (int i = 0; i < 4; ++i) {
        const auto& eps = map.eeb.vectors[static_cast<std::size_t>(i)];
        for (std::size_t a = 0; a < rest.size(); ++a)
            rest[a] -= coeffs[static_cast<std::size_t>(i)] * eps.amps[a];
    }
    double rest_sq = 0.0;
    for (const auto& x : rest) rest_sq += std::norm(x);

    LogicalProjection out;
    out.logical = StateVector({4}, std::move(coeffs));
    out.residual_norm = std::sqrt(rest_sq);
    if (max_residual >= 0.0 && out.residual_norm > max_residual)
        throw LeakageError("project_logical: state left the encoded subspace");
    return out;
}

LogicalProjection project_logical_pair(const StateVector& physical, const EmbeddingMap& map,
                                       double max_residual) {
    std::vector<int> want = map.eeb.dims;
    want.insert(want.end(), map.eeb.dims.begin(), map.eeb.dims.end());
    if (physical.dims != want)
        throw ShapeError("project_logical_pair: physical dims do not match the embedding");
    long d = map.slot_dim();
    std::vector<Amplitude> coeffs(16, Amplitude{0.0, 0.0});
    std::vector<Amplitude> rest = physical.amps;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const auto& ei = map.eeb.vectors[static_cast<std::size_t>(i)];
            const auto& ej = map.eeb.vectors[static_cast<std::size_t>(j)];
            Amplitude f{0.0, 0.0};
            for (long a = 0; a < d; ++a) {
                Amplitude cia = std::conj(ei.amps[static_cast<std::size_t>(a)]);
                if (cia == Amplitude{0.0, 0.0}) continue;
                for (long b = 0; b < d; ++b)
                    f += cia * std::conj(ej.amps[static_cast<std::size_t>(b)]) *
                         physical.amps[static_cast<std::size_t>(a * d + b)];
            }
            coeffs[static_cast<std::size_t>(i * 4 + j)] = f;
            for (long a = 0; a < d; ++a) {
                Amplitude fia = f * ei.amps[static_cast<std::size_t>(a)];
                if (fia == Amplitude{0.0, 0.0}) continue;
                for (long b = 0; b < d; ++b)
                    rest[static_cast<std::size_t>(a * d + b)] -= fia * ej.amps[static_cast<std::size_t>(b)];
            }
        }
    double rest_sq = 0.0;
    for (const auto& x : rest) rest_sq += std::norm(x);

    LogicalProjection out;
    out.logical = StateVector({4, 4}, std::move(coeffs));
    out.residual_norm = std::sqrt(rest_sq);
    if (max_residual >= 0.0 && out.residual_norm > max_residual)
        throw LeakageError("project_logical_pair: state left the encoded subspace");
    return out;
}

std::array<CollectiveBranch, 16> collective_teleport_branches(CollectiveSystem system,
                                                              const StateVector& logical_input) {
    const EmbeddingMap& map = embedding_for(system);
    StateVector phi = logical_input.normalized();

    // Slot A carries the input; slots (B, C) the embedded resource.
    StateVector total = tensor_product(embed(phi, map), embed_pair(basis_state(default_resource()), map));
    auto meas_targets = two_slot_targets(map, 0);
    auto projectors = embedded_pair_basis(map);
    CorrectionTable corrections = derive_correction_table(default_resource());

    std::array<CollectiveBranch, 16> out;
    for (auto label : all_labels()) {
        auto proj = project_branch(total, projectors[static_cast<std::size_t>(label.flat())], meas_targets);
        CollectiveBranch br;
        br.outcome = label;
        br.probability = proj.probability;

        // Receiver slot state, corrected in the physical space.
        auto pre = project_logical(proj.remainder, map); // leakage measured, not yet fatal
        Operator u_phys = embed_operator(corrections.op(label).to_operator(), map);
        StateVector corrected = apply(u_phys, proj.remainder);
        auto post = project_logical(corrected, map);

        br.max_residual = std::max(pre.residual_norm, post.residual_norm);
        if (br.max_residual > kLeakageTol)
            throw LeakageError("collective_teleport_branches: protocol state left the encoded subspace");
        br.logical_post = post.logical;
        br.fidelity = state_fidelity(phi, post.logical);
        out[static_cast<std::size_t>(label.flat())] = br;
    }
    return out;
}

ProtocolTranscript collective_teleport(CollectiveSystem system, const StateVector& logical_input,
                                       std::uint64_t seed) {
    const EmbeddingMap& map = embedding_for(system);
    StateVector phi = logical_input.normalized();

    ProtocolTranscript t;
    t.protocol = Protocol::CollectiveTeleport;
    t.seed = seed;
    int p = map.parties_per_slot();
    auto group = [&](int slot) {
        std::ostringstream os;
        os << "particles " << slot * p + 1 << ".." << (slot + 1) * p;
        return os.str();
    };

    t.steps.push_back({0, "prepare", "Alice", group(0) + " in the unknown logical state"});
    t.steps.push_back({1, "prepare", "Bob", group(1) + "," + group(2) + " in logical " +
                                                default_resource().str()});
    t.steps.push_back({2, "transfer", "Bob", group(1) + " -> Alice"});
    t.steps.push_back({3, "transfer", "Bob", group(2) + " -> Clara"});

    StateVector total = tensor_product(embed(phi, map), embed_pair(basis_state(default_resource()), map));
    auto meas_targets = two_slot_targets(map, 0);
    auto projectors = embedded_pair_basis(map);
    auto m = born_measure(total, projectors, meas_targets, derive_seed(seed, 0));
    BasisLabel outcome = BasisLabel::from_flat(m.outcome);
    t.steps.push_back({4, "measure", "Alice", "logical pair (A,B) -> " + outcome.str()});
    t.steps.push_back({5, "classical", "Alice", "-> Clara: " + outcome.str()});

    auto cond = project_branch(total, projectors[static_cast<std::size_t>(m.outcome)], meas_targets).remainder;
    Operator u_phys = embed_operator(derive_correction(outcome, default_resource()).to_operator(), map);
    StateVector corrected = apply(u_phys, cond);
    t.steps.push_back({6, "correction", "Clara", "apply embedded U_" + outcome.str()});

    auto post = project_logical(corrected, map, kLeakageTol);
    t.outcome = outcome;
    t.fidelity = state_fidelity(phi, post.logical);
    t.steps.push_back({7, "result", "Clara",
                       "logical fidelity=" + format_double(t.fidelity) +
                           " residual=" + format_double(post.residual_norm)});
    if (std::abs(t.fidelity - 1.0) > kLogicalFidTol)
        throw StructureError("collective_teleport: logical state not recovered");
    return t;
}

std::array<CollectiveSwapBranch, 16> collective_swap_branches(CollectiveSystem system) {
    const EmbeddingMap& map = embedding_for(system);

    // Slots: A, B entangled; B', C entangled. Bob measures (B, B').
    StateVector resource = embed_pair(basis_state(default_resource()), map);
    StateVector total = tensor_product(resource, resource);
    auto middle = two_slot_targets(map, 1);
    auto projectors = embedded_pair_basis(map);
    SwapTable table = derive_swap_table();
    QuquartBasis logical_basis = build_basis();

    std::array<CollectiveSwapBranch, 16> out;
    for (auto label : all_labels()) {
        auto proj = project_branch(total, projectors[static_cast<std::size_t>(label.flat())], middle);
        const auto& entry = table[static_cast<std::size_t>(label.flat())];

        CollectiveSwapBranch br;
        br.outcome = label;
        br.probability = proj.probability;
        br.expected_result = entry.result_14;
        br.expected_phase = entry.phase;

        auto outer = project_logical_pair(proj.remainder, map);
        br.residual = outer.residual_norm;
        if (br.residual > kLeakageTol)
            throw LeakageError("collective_swap_branches: outer pair left the encoded subspace");
        br.fidelity = state_fidelity(logical_basis.state(entry.result_14), outer.logical);
        out[static_cast<std::size_t>(label.flat())] = br;
    }
    return out;
}

ProtocolTranscript collective_swap(CollectiveSystem system, std::uint64_t seed) {
    const EmbeddingMap& map = embedding_for(system);

    ProtocolTranscript t;
    t.protocol = Protocol::CollectiveSwap;
    t.seed = seed;
    int p = map.parties_per_slot();
    auto group = [&](int slot) {
        std::ostringstream os;
        os << "particles " << slot * p + 1 << ".." << (slot + 1) * p;
        return os.str();
    };
    t.steps.push_back({0, "prepare", "Alice", group(0) + "," + group(1) + " in logical " +
                                                  default_resource().str()});
    t.steps.push_back({1, "prepare", "Clara", group(2) + "," + group(3) + " in logical " +
                                                  default_resource().str()});
    t.steps.push_back({2, "transfer", "Alice", group(1) + " -> Bob"});
    t.steps.push_back({3, "transfer", "Clara", group(2) + " -> Bob"});

    StateVector resource = embed_pair(basis_state(default_resource()), map);
    StateVector total = tensor_product(resource, resource);
    auto middle = two_slot_targets(map, 1);
    auto projectors = embedded_pair_basis(map);
    auto m = born_measure(total, projectors, middle, derive_seed(seed, 0));
    BasisLabel outcome = BasisLabel::from_flat(m.outcome);
    t.steps.push_back({4, "measure", "Bob", "logical pair (B,B') -> " + outcome.str()});
    t.steps.push_back({5, "classical", "Bob", "-> Alice,Clara: " + outcome.str()});

    auto cond = project_branch(total, projectors[static_cast<std::size_t>(m.outcome)], middle).remainder;
    auto outer = project_logical_pair(cond, map, kLeakageTol);
    SwapTable table = derive_swap_table();
    const auto& entry = table[static_cast<std::size_t>(outcome.flat())];
    double fid = state_fidelity(basis_state(entry.result_14), outer.logical);
    t.steps.push_back({6, "result", "Bob",
                       "outer pair in " + entry.result_14.str() + " fidelity=" + format_double(fid)});

    t.outcome = outcome;
    t.fidelity = fid;
    if (std::abs(fid - 1.0) > kLogicalFidTol)
        throw StructureError("collective_swap: outer pair does not match the derived table");
    return t;
}

} // namespace ququart
