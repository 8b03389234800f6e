// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include "ququart/session.hpp"

#include <cmath>
#include <sstream>

namespace ququart {

namespace {

std::string join_indices(std::span<const int> subsystems) {
    std::ostringstream os;
    for (std::size_t k = 0; k < subsystems.size(); ++k) os << (k ? "," : "") << subsystems[k];
    return os.str();
}

} // namespace

std::string party_name(Party p) {
    switch (p) {
    case Party::Alice: return "Alice";
    case Party::Bob: return "Bob";
    case Party::Clara: return "Clara";
    }
    return "?";
}

Session::Session(StateVector global_state, std::vector<Party> ownership, std::uint64_t seed)
    : state_(std::move(global_state)), ownership_(std::move(ownership)), seed_(seed) {
    if (ownership_.size() != state_.dims.size())
        throw SetupError("Session: ownership must cover every subsystem");
    push("session", Party::Alice, "seed=" + std::to_string(seed_));
}

Party Session::owner(int subsystem) const {
    if (subsystem < 0 || subsystem >= static_cast<int>(ownership_.size()))
        throw ShapeError("Session: subsystem index out of range");
    return ownership_[static_cast<std::size_t>(subsystem)];
}

void Session::check_owns(Party p, std::span<const int> subsystems, const char* action) const {
    for (int s : subsystems)
        if (owner(s) != p)
            throw AuthorizationError(std::string("Session: ") + party_name(p) + " does not own subsystem " +
                                     std::to_string(s) + " for " + action);
}

int Session::push(const std::string& kind, Party party, const std::string& payload) {
    int step = static_cast<int>(log_.size());
    log_.push_back(TranscriptEvent{step, kind, party_name(party), payload});
    return step;
}

void Session::transfer(Party from, Party to, std::span<const int> subsystems) {
    check_owns(from, subsystems, "transfer");
    for (int s : subsystems) ownership_[static_cast<std::size_t>(s)] = to;
    push("transfer", from, join_indices(subsystems) + " -> " + party_name(to));
}

BasisLabel Session::measure(Party party, std::span<const int> subsystems,
                            const std::vector<StateVector>& basis) {
    check_owns(party, subsystems, "measure");
    if (basis.size() != 16)
        throw BasisError("Session: measurement basis must have 16 elements");
    std::uint64_t event_seed = derive_seed(seed_, event_counter_++);
    auto m = born_measure(state_, basis, subsystems, event_seed);
    state_ = m.post_state;
    BasisLabel outcome = BasisLabel::from_flat(m.outcome);
    push("measure", party, join_indices(subsystems) + " -> " + outcome.str());
    return outcome;
}

void Session::send_classical(Party from, Party to, BasisLabel payload) {
    int step = push("classical", from, "-> " + party_name(to) + ": " + payload.str());
    messages_.push_back(ClassicalMessage{from, to, payload, step});
}

void Session::apply_correction(Party party, const Operator& op, int subsystem,
                               BasisLabel responding_to) {
    const std::array<int, 1> targets{subsystem};
    check_owns(party, targets, "correction");
    bool informed = false;
    for (const auto& msg : messages_)
        if (msg.to == party && msg.payload == responding_to) {
            informed = true;
            break;
        }
    if (!informed)
        throw CausalityError("Session: correction before the classical message it depends on");
    state_ = apply_local(state_, op, targets);
    push("correction", party, "U_" + responding_to.str() + " on " + std::to_string(subsystem));
}

SessionRunResult scripted_teleport(const StateVector& input, BasisLabel resource,
                                   std::uint64_t seed) {
    StateVector phi = input.normalized();
    StateVector global = tensor_product(phi, basis_state(resource));
    Session session(global, {Party::Alice, Party::Bob, Party::Bob}, seed);

    const std::array<int, 1> p2{1}, p3{2};
    session.transfer(Party::Bob, Party::Alice, p2);
    session.transfer(Party::Bob, Party::Clara, p3);

    QuquartBasis basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    const std::array<int, 2> joint{0, 1};
    BasisLabel outcome = session.measure(Party::Alice, joint, projectors);
    session.send_classical(Party::Alice, Party::Clara, outcome);
    session.apply_correction(Party::Clara, derive_correction(outcome, resource).to_operator(), 2,
                             outcome);

    // Clara's particle after the protocol.
    auto clara = project_branch(session.state(), basis.state(outcome), joint).remainder;

    SessionRunResult out;
    out.transcript.protocol = Protocol::Teleport;
    out.transcript.seed = seed;
    out.transcript.steps = session.log();
    out.transcript.outcome = outcome;
    out.transcript.fidelity = state_fidelity(phi, clara);
    out.final_state = clara;
    return out;
}

SessionRunResult scripted_swap(std::uint64_t seed) {
    BasisLabel res = default_resource();
    StateVector global = tensor_product(basis_state(res), basis_state(res));
    Session session(global, {Party::Alice, Party::Bob, Party::Bob, Party::Clara}, seed);

    QuquartBasis basis = build_basis();
    std::vector<StateVector> projectors(basis.states.begin(), basis.states.end());
    const std::array<int, 2> middle{1, 2};
    BasisLabel outcome = session.measure(Party::Bob, middle, projectors);
    session.send_classical(Party::Bob, Party::Alice, outcome);
    session.send_classical(Party::Bob, Party::Clara, outcome);

    auto pair14 = project_branch(session.state(), basis.state(outcome), middle).remainder;

    SessionRunResult out;
    out.transcript.protocol = Protocol::Swap;
    out.transcript.seed = seed;
    out.transcript.steps = session.log();
    out.transcript.outcome = outcome;
    SwapTable table = derive_swap_table();
    out.transcript.fidelity =
        state_fidelity(basis.state(table[static_cast<std::size_t>(outcome.flat())].result_14), pair14);
    out.final_state = pair14;
    return out;
}

} // namespace ququart
