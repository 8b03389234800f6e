// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic multi-party session harness: Alice, Bob and Clara act on a
// shared global state through an ordered event log. Parties own subsystems;
// transfers move ownership only, measurements draw per-event seeds from the
// master seed, and corrections must cite a previously logged classical
// message. Replaying a script with the same seed is bit-exact.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ququart/basis.hpp"
#include "ququart/protocols.hpp"
#include "ququart/qmath.hpp"

namespace ququart {

enum class Party { Alice, Bob, Clara };
std::string party_name(Party p);

struct ClassicalMessage {
    Party from = Party::Alice;
    Party to = Party::Alice;
    BasisLabel payload;
    int step_index = 0;
};

class Session {
  public:
    /// SetupError unless `ownership` assigns an owner to every subsystem of
    /// `global_state` (one entry per subsystem, in order).
    Session(StateVector global_state, std::vector<Party> ownership, std::uint64_t seed);

    /// Reassign ownership of `subsystems` from one party to another.
    /// AuthorizationError unless `from` owns them all. State untouched.
    void transfer(Party from, Party to, std::span<const int> subsystems);

    /// Joint projective measurement of `subsystems` in a 16-element basis.
    /// AuthorizationError unless `party` owns them all. The event seed is
    /// derived from (master seed, event counter).
    BasisLabel measure(Party party, std::span<const int> subsystems,
                       const std::vector<StateVector>& basis);

    /// Log a classical message.
    void send_classical(Party from, Party to, BasisLabel payload);

    /// Apply a correction to one subsystem. AuthorizationError unless `party`
    /// owns it; CausalityError unless a message to `party` carrying
    /// `responding_to` was logged earlier.
    void apply_correction(Party party, const Operator& op, int subsystem,
                          BasisLabel responding_to);

    const StateVector& state() const { return state_; }
    Party owner(int subsystem) const;
    const std::vector<TranscriptEvent>& log() const { return log_; }
    const std::vector<ClassicalMessage>& messages() const { return messages_; }
    std::uint64_t seed() const { return seed_; }

  private:
    void check_owns(Party p, std::span<const int> subsystems, const char* action) const;
    int push(const std::string& kind, Party party, const std::string& payload);

    StateVector state_;
    std::vector<Party> ownership_;
    std::uint64_t seed_;
    std::uint64_t event_counter_ = 0;
    std::vector<TranscriptEvent> log_;
    std::vector<ClassicalMessage> messages_;
};

/// Teleportation driven through the session harness: Alice{1}, Bob{2,3},
/// Clara{} to start; returns the transcript and Clara's final particle state.
struct SessionRunResult {
    ProtocolTranscript transcript;
    StateVector final_state;
};
SessionRunResult scripted_teleport(const StateVector& input, BasisLabel resource,
                                   std::uint64_t seed);

/// Swapping driven through the session harness: Alice{1}, Bob{2,3}, Clara{4}.
/// final_state is the post-measurement (1,4) pair.
SessionRunResult scripted_swap(std::uint64_t seed);

} // namespace ququart
