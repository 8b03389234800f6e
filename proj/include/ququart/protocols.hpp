// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0
//
// Four-level teleportation and entanglement swapping: exact branch
// decompositions, seeded sampled runs with replayable transcripts, the
// derived swapping outcome table, and its diff against the published
// reference transcription.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ququart/basis.hpp"
#include "ququart/qmath.hpp"

namespace ququart {

/// One summand of the teleportation decomposition: the outcome label, its
/// exact Born probability, the receiver's conditional state before and after
/// the correction.
struct TeleportBranch {
    BasisLabel outcome;
    double probability = 0.0;
    StateVector clara_pre;
    SignedPermutation correction;
    StateVector clara_post;
};

/// Exact enumeration of all 16 branches; no sampling. InputError on a
/// zero-norm input. Probabilities are 1/16 independent of the input.
std::array<TeleportBranch, 16> teleport_branches(const StateVector& input, BasisLabel resource);

/// Global-phase-insensitive fidelity |<a|b>|^2.
double state_fidelity(const StateVector& a, const StateVector& b);

struct TranscriptEvent {
    int step = 0;
    std::string kind;
    std::string party;
    std::string payload;

    friend bool operator==(const TranscriptEvent&, const TranscriptEvent&) = default;
};

enum class Protocol { Teleport, Swap, CollectiveTeleport, CollectiveSwap };
std::string protocol_name(Protocol p);

/// Seeded, replayable record of one protocol run. Replaying with the same
/// seed reproduces the transcript bit-exactly.
struct ProtocolTranscript {
    Protocol protocol = Protocol::Teleport;
    std::uint64_t seed = 0;
    std::vector<TranscriptEvent> steps;
    BasisLabel outcome;
    double fidelity = 0.0;

    friend bool operator==(const ProtocolTranscript&, const ProtocolTranscript&) = default;
};

/// One sampled teleportation run: prepare, transfer, measure, classical
/// message, correction. Fidelity is checked against 1 within 1e-12.
ProtocolTranscript teleport_run(const StateVector& input, BasisLabel resource, std::uint64_t seed);

/// One entry of the swapping table: Bob's (2,3) outcome against the
/// entangled state the outer pair (1,4) collapses to.
struct SwapTableEntry {
    BasisLabel outcome_23;
    BasisLabel result_14;
    int phase = +1;
    double coefficient_magnitude = 0.0;

    friend bool operator==(const SwapTableEntry&, const SwapTableEntry&) = default;
};

using SwapTable = std::array<SwapTableEntry, 16>;

/// Brute-force derivation of the swapping table for the given resource pair:
/// expand |resource^(1,2)> (x) |resource^(3,4)>, project every (2,3) outcome,
/// and match the conditional (1,4) state to +- one basis element.
/// StructureError if a conditional fails to match (which would falsify the
/// swapping claim); the derived outcome->result map must be a bijection.
SwapTable derive_swap_table(BasisLabel resource_12, BasisLabel resource_34);
SwapTable derive_swap_table(); // both resources X1

/// The published table, transcribed verbatim (it is not a bijection; see
/// swap_table_diff).
SwapTable reference_swap_table();

/// Entry-by-entry diff between two tables plus a bijectivity analysis of the
/// second ("reference") table.
struct SwapTableDiff {
    struct EntryDiff {
        BasisLabel outcome;
        BasisLabel derived_result;
        int derived_phase;
        BasisLabel reference_result;
        int reference_phase;
    };
    std::vector<EntryDiff> mismatches;
    std::vector<BasisLabel> duplicated_reference_results; // listed twice or more
    std::vector<BasisLabel> missing_reference_results;    // never listed
    bool reference_is_bijection = false;

    bool identical() const { return mismatches.empty(); }
};
SwapTableDiff swap_table_diff(const SwapTable& derived, const SwapTable& reference);

/// One sampled swapping run on |X1^(1,2)> (x) |X1^(3,4)>: Bob measures
/// (2,3); the (1,4) post-state is checked against the derived table entry
/// (fidelity 1 within 1e-12, StructureError otherwise).
ProtocolTranscript swap_run(std::uint64_t seed);

/// Exact (2,3)-outcome probabilities of the swap state; all 1/16.
std::array<double, 16> swap_outcome_probabilities();

/// Parse/serialize the reference table data file: 16 lines of
/// "outcome_label sign result_label" with sign '+' or '-'.
SwapTable parse_swap_table(std::istream& in);
std::string format_swap_table(const SwapTable& t);

} // namespace ququart
