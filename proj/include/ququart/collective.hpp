// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0
//
// Collective translation: the ququart protocols executed on logical levels
// encoded as exact-entanglement-basis vectors of a 2x2x2 or 3x3 system, so
// that whole multi-particle entangled states are teleported or swapped as
// units. All measurements and corrections act in the physical space;
// embedded operators are identity on the complement of the encoded subspace.

#pragma once

#include <array>
#include <cstdint>

#include "ququart/protocols.hpp"
#include "ququart/upb.hpp"

namespace ququart {

enum class CollectiveSystem { ThreeQubit, TwoQutrit };
std::string collective_system_name(CollectiveSystem s);

/// Isometry between the 4-dim logical space and the exact entanglement
/// subspace of one physical slot (three qubits or two qutrits).
struct EmbeddingMap {
    CollectiveSystem system = CollectiveSystem::ThreeQubit;
    EesBasis eeb; // four orthonormal physical vectors

    int parties_per_slot() const { return static_cast<int>(eeb.dims.size()); }
    long slot_dim() const; // 8 or 9
};

/// Embedding for the given system, built from the certified UPB complement.
/// Deterministic; the result is cached per system.
const EmbeddingMap& embedding_for(CollectiveSystem system);

/// Sum_i c_i |i>  ->  Sum_i c_i |eps_i>. Isometric.
StateVector embed(const StateVector& logical, const EmbeddingMap& map);

/// Two-slot embedding of a 4x4 logical state (16 coefficients f_ij).
StateVector embed_pair(const StateVector& logical, const EmbeddingMap& map);

/// Logical-space operator lifted to one physical slot:
/// E U E^dagger + (I - E E^dagger), unitary whenever U is.
Operator embed_operator(const Operator& u, const EmbeddingMap& map);

/// The 16 W/X/Y/Z basis states embedded on a slot pair (measurement
/// projectors for the collective protocols).
std::vector<StateVector> embedded_pair_basis(const EmbeddingMap& map);

/// Coefficients of a physical state against the (tensor products of) EEB
/// vectors, plus the norm of the component outside the embedded subspace.
/// LeakageError if that residual exceeds max_residual.
struct LogicalProjection {
    StateVector logical;
    double residual_norm = 0.0;
};
LogicalProjection project_logical(const StateVector& physical, const EmbeddingMap& map,
                                  double max_residual = -1.0); // negative: never throw
LogicalProjection project_logical_pair(const StateVector& physical, const EmbeddingMap& map,
                                       double max_residual = -1.0);

inline constexpr double kLeakageTol = 1e-8;

/// One branch of the collective teleportation, fully enumerated in the
/// physical space (dim 512 or 729).
struct CollectiveBranch {
    BasisLabel outcome;
    double probability = 0.0;
    StateVector logical_post; // receiver state pulled back to the logical space
    double fidelity = 0.0;    // against the logical input
    double max_residual = 0.0;
};
std::array<CollectiveBranch, 16> collective_teleport_branches(CollectiveSystem system,
                                                              const StateVector& logical_input);

/// Sampled collective teleportation run with transcript.
ProtocolTranscript collective_teleport(CollectiveSystem system, const StateVector& logical_input,
                                       std::uint64_t seed);

/// One branch of the collective swap (dim 4096 or 6561): middle slot pair
/// measured, outer pair checked against the derived swapping table.
struct CollectiveSwapBranch {
    BasisLabel outcome;
    double probability = 0.0;
    BasisLabel expected_result;
    int expected_phase = +1;
    double fidelity = 0.0; // outer logical pair against the table entry
    double residual = 0.0;
};
std::array<CollectiveSwapBranch, 16> collective_swap_branches(CollectiveSystem system);

/// Sampled collective swap run with transcript.
ProtocolTranscript collective_swap(CollectiveSystem system, std::uint64_t seed);

} // namespace ququart
