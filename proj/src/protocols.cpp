// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include "ququart/protocols.hpp"

#include <cmath>
#include <istream>
#include <sstream>

namespace ququart {

namespace {

constexpr double kFidelityTol = 1e-12;

// Published swapping table, outcome -> (sign, result), flat label order.
// Kept content-identical with data/swap_table.txt; a unit test enforces it.
struct RefEntry {
    const char* outcome;
    int sign;
    const char* result;
};
constexpr RefEntry kReference[16] = {
    {"W0", +1, "Z2"}, {"W1", -1, "X3"}, {"W2", -1, "Y0"}, {"W3", +1, "W1"},
    {"X0", +1, "X2"}, {"X1", -1, "X3"}, {"X2", -1, "X0"}, {"X3", -1, "X1"},
    {"Y0", -1, "W2"}, {"Y1", +1, "Y3"}, {"Y2", +1, "Z0"}, {"Y3", -1, "Z1"},
    {"Z0", -1, "Y2"}, {"Z1", -1, "Z3"}, {"Z2", +1, "W0"}, {"Z3", +1, "Z1"},
};

int push_event(std::vector<TranscriptEvent>& steps, const std::string& kind,
               const std::string& party, const std::string& payload) {
    int step = static_cast<int>(steps.size());
    steps.push_back(TranscriptEvent{step, kind, party, payload});
    return step;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

double state_fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner_product(a, b));
}

std::string protocol_name(Protocol p) {
    switch (p) {
    case Protocol::Teleport: return "teleport";
    case Protocol::Swap: return "swap";
    case Protocol::CollectiveTeleport: return "collective_teleport";
    case Protocol::CollectiveSwap: return "collective_swap";
    }
    return "?";
}

std::array<TeleportBranch, 16> teleport_branches(const StateVector& input, BasisLabel resource) {
    if (input.dims != std::vector<int>{4})
        throw ShapeError("teleport_branches: input must be a single ququart");
    if (input.norm() <= 0.0) throw InputError("teleport_branches: zero-norm input");
    StateVector phi = input.normalized();
    StateVector total = tensor_product(phi, basis_state(resource));
    const std::array<int, 2> meas{0, 1};

    std::array<TeleportBranch, 16> branches;
    for (auto label : all_labels()) {
        auto proj = project_branch(total, basis_state(label), meas);
        TeleportBranch br;
        br.outcome = label;
        br.probability = proj.probability;
        br.clara_pre = proj.remainder;
        br.correction = derive_correction(label, resource);
        br.clara_post = apply(br.correction.to_operator(), br.clara_pre);
        branches[static_cast<std::size_t>(label.flat())] = br;
    }
    return branches;
}

ProtocolTranscript teleport_run(const StateVector& input, BasisLabel resource, std::uint64_t seed) {
    if (input.dims != std::vector<int>{4})
        throw ShapeError("teleport_run: input must be a single ququart");
    if (input.norm() <= 0.0) throw InputError("teleport_run: zero-norm input");
    StateVector phi = input.normalized();

    ProtocolTranscript t;
    t.protocol = Protocol::Teleport;
    t.seed = seed;

    push_event(t.steps, "prepare", "Alice", "particle 1 in unknown state");
    push_event(t.steps, "prepare", "Bob", "particles 2,3 in " + resource.str());
    push_event(t.steps, "transfer", "Bob", "particle 2 -> Alice");
    push_event(t.steps, "transfer", "Bob", "particle 3 -> Clara");

    StateVector total = tensor_product(phi, basis_state(resource));
    QuquartBasis basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    const std::array<int, 2> meas{0, 1};
    auto m = born_measure(total, projectors, meas, derive_seed(seed, 0));
    BasisLabel outcome = BasisLabel::from_flat(m.outcome);
    push_event(t.steps, "measure", "Alice", "particles 1,2 -> " + outcome.str());
    push_event(t.steps, "classical", "Alice", "-> Clara: " + outcome.str());

    auto clara_pre = project_branch(total, basis.state(outcome), meas).remainder;
    SignedPermutation u = derive_correction(outcome, resource);
    StateVector clara_post = apply(u.to_operator(), clara_pre);
    push_event(t.steps, "correction", "Clara", "apply U_" + outcome.str());

    t.outcome = outcome;
    t.fidelity = state_fidelity(phi, clara_post);
    push_event(t.steps, "result", "Clara", "fidelity=" + format_double(t.fidelity));
    if (std::abs(t.fidelity - 1.0) > kFidelityTol)
        throw StructureError("teleport_run: corrected state does not match the input");
    return t;
}

SwapTable derive_swap_table(BasisLabel resource_12, BasisLabel resource_34) {
    StateVector psi = tensor_product(basis_state(resource_12), basis_state(resource_34));
    QuquartBasis basis = build_basis();
    const std::array<int, 2> middle{1, 2}; // particles 2 and 3

    SwapTable table;
    std::array<int, 16> result_seen{};
    for (auto outcome : all_labels()) {
        auto proj = project_branch(psi, basis.state(outcome), middle);
        double mag = std::sqrt(proj.probability);
        // Match the conditional (1,4) state to +- one basis element.
        const StateVector& cond = proj.remainder;
        int found = -1;
        int phase = 0;
        for (auto candidate : all_labels()) {
            Amplitude ov = inner_product(basis.state(candidate), cond);
            if (std::abs(ov) > 0.5) {
                if (std::abs(std::abs(ov.real()) - 1.0) > kAssertTol ||
                    std::abs(ov.imag()) > kAssertTol)
                    throw StructureError("derive_swap_table: conditional not proportional to a basis element");
                found = candidate.flat();
                phase = ov.real() > 0 ? +1 : -1;
                break;
            }
        }
        if (found < 0)
            throw StructureError("derive_swap_table: conditional state matches no basis element");
        ++result_seen[static_cast<std::size_t>(found)];

        table[static_cast<std::size_t>(outcome.flat())] =
            SwapTableEntry{outcome, BasisLabel::from_flat(found), phase, mag};
    }
    for (int count : result_seen)
        if (count != 1) throw StructureError("derive_swap_table: outcome->result map is not a bijection");
    return table;
}

SwapTable derive_swap_table() { return derive_swap_table(default_resource(), default_resource()); }

SwapTable reference_swap_table() {
    SwapTable table;
    for (int k = 0; k < 16; ++k) {
        auto outcome = BasisLabel::parse(kReference[k].outcome);
        auto result = BasisLabel::parse(kReference[k].result);
        table[static_cast<std::size_t>(k)] =
            SwapTableEntry{*outcome, *result, kReference[k].sign, 0.25};
    }
    return table;
}

SwapTableDiff swap_table_diff(const SwapTable& derived, const SwapTable& reference) {
    SwapTableDiff diff;
    std::array<int, 16> counts{};
    for (int k = 0; k < 16; ++k) {
        const auto& d = derived[static_cast<std::size_t>(k)];
        const auto& r = reference[static_cast<std::size_t>(k)];
        if (!(d.result_14 == r.result_14) || d.phase != r.phase)
            diff.mismatches.push_back(
                SwapTableDiff::EntryDiff{d.outcome_23, d.result_14, d.phase, r.result_14, r.phase});
        ++counts[static_cast<std::size_t>(r.result_14.flat())];
    }
    for (int f = 0; f < 16; ++f) {
        if (counts[static_cast<std::size_t>(f)] > 1)
            diff.duplicated_reference_results.push_back(BasisLabel::from_flat(f));
        if (counts[static_cast<std::size_t>(f)] == 0)
            diff.missing_reference_results.push_back(BasisLabel::from_flat(f));
    }
    diff.reference_is_bijection = diff.duplicated_reference_results.empty() &&
                                  diff.missing_reference_results.empty();
    return diff;
}

std::array<double, 16> swap_outcome_probabilities() {
    StateVector psi = tensor_product(basis_state(default_resource()), basis_state(default_resource()));
    QuquartBasis basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    const std::array<int, 2> middle{1, 2};
    auto probs = outcome_probabilities(psi, projectors, middle);
    std::array<double, 16> out{};
    for (int k = 0; k < 16; ++k) out[static_cast<std::size_t>(k)] = probs[static_cast<std::size_t>(k)];
    return out;
}

ProtocolTranscript swap_run(std::uint64_t seed) {
    ProtocolTranscript t;
    t.protocol = Protocol::Swap;
    t.seed = seed;

    BasisLabel res = default_resource();
    push_event(t.steps, "prepare", "Alice", "particles 1,2 in " + res.str());
    push_event(t.steps, "prepare", "Clara", "particles 3,4 in " + res.str());
    push_event(t.steps, "transfer", "Alice", "particle 2 -> Bob");
    push_event(t.steps, "transfer", "Clara", "particle 3 -> Bob");

    StateVector psi = tensor_product(basis_state(res), basis_state(res));
    QuquartBasis basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    const std::array<int, 2> middle{1, 2};
    auto m = born_measure(psi, projectors, middle, derive_seed(seed, 0));
    BasisLabel outcome = BasisLabel::from_flat(m.outcome);
    push_event(t.steps, "measure", "Bob", "particles 2,3 -> " + outcome.str());
    push_event(t.steps, "classical", "Bob", "-> Alice,Clara: " + outcome.str());

    auto cond = project_branch(psi, basis.state(outcome), middle).remainder;
    SwapTable table = derive_swap_table();
    const auto& entry = table[static_cast<std::size_t>(outcome.flat())];
    double fid = state_fidelity(basis.state(entry.result_14), cond);
    push_event(t.steps, "result", "Bob",
               "pair (1,4) in " + entry.result_14.str() + " fidelity=" + format_double(fid));

    t.outcome = outcome;
    t.fidelity = fid;
    if (std::abs(fid - 1.0) > kFidelityTol)
        throw StructureError("swap_run: (1,4) state does not match the derived table");
    return t;
}

SwapTable parse_swap_table(std::istream& in) {
    SwapTable table;
    std::array<bool, 16> seen{};
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string outcome_s, sign_s, result_s;
        if (!(ls >> outcome_s)) continue;
        if (!(ls >> sign_s >> result_s)) throw InputError("swap table: malformed line");
        auto outcome = BasisLabel::parse(outcome_s);
        auto result = BasisLabel::parse(result_s);
        if (!outcome || !result || (sign_s != "+" && sign_s != "-"))
            throw InputError("swap table: malformed line");
        if (seen[static_cast<std::size_t>(outcome->flat())])
            throw InputError("swap table: duplicate outcome " + outcome->str());
        seen[static_cast<std::size_t>(outcome->flat())] = true;
        table[static_cast<std::size_t>(outcome->flat())] =
            SwapTableEntry{*outcome, *result, sign_s == "+" ? +1 : -1, 0.25};
    }
    for (bool s : seen)
        if (!s) throw InputError("swap table: missing outcome line");
    return table;
}

std::string format_swap_table(const SwapTable& t) {
    std::ostringstream out;
    for (const auto& e : t)
        out << e.outcome_23.str() << " " << (e.phase > 0 ? "+" : "-") << " "
            << e.result_14.str() << "\n";
    return out.str();
}

} // namespace ququart
