// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0
//
// Unextendible product bases for the 2x2x2 and 3x3 systems, exhaustive
// unextendibility certification, extraction of the four-dimensional exact
// entanglement basis from the complement, and the dimension equation whose
// integer solutions single out those two systems.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ququart/qmath.hpp"

namespace ququart {

/// One product state |f_1> (x) ... (x) |f_M>, stored factor by factor.
struct ProductBasisMember {
    std::vector<StateVector> factors;

    StateVector full_state() const; // the tensor product over all factors
};

/// An orthogonal product basis candidate for unextendibility.
struct Upb {
    int parties = 0;
    int local_dim = 0;
    std::vector<ProductBasisMember> members;

    std::vector<int> dims() const; // parties copies of local_dim
    std::vector<StateVector> full_states() const;
};

/// The standard 2x2x2 construction with members
/// {|0,1,+>, |1,+,0>, |+,0,1>, |-,-,->}, |+-> = (|0> +- |1>)/sqrt(2).
Upb shifts_upb();

/// The standard 3x3 construction:
/// {|0>(|0>-|1>), |2>(|1>-|2>), (|0>-|1>)|2>, (|1>-|2>)|0>, (|0>+|1>+|2>)^2}
/// (each factor normalized).
Upb tiles_upb();

/// Certificate from verify_upb. A product extension exists iff some
/// assignment of members to parties leaves every party's assigned factors
/// short of spanning its local space; the verifier searches all parties^m
/// assignments.
struct UpbReport {
    bool orthogonal = false;
    double max_pairwise_overlap = 0.0;
    bool unextendible = false;
    long assignments_checked = 0;
    // Factors of an orthogonal product state outside the span, when one exists.
    std::optional<std::vector<StateVector>> extension_witness;

    bool passed() const { return orthogonal && unextendible; }
};

UpbReport verify_upb(const Upb& upb);

/// Orthonormal basis of the complement of the UPB span: every vector (and
/// every combination of them) is entangled across every bipartition.
struct EesBasis {
    std::vector<StateVector> vectors;
    std::vector<int> dims;
};

/// Complement basis of the UPB's span, via the deterministic complement
/// construction. Checks entanglement of each basis vector across every cut
/// and of `samples` seeded random unit combinations; StructureError if any
/// combination comes out product (would falsify the unextendibility
/// certificate).
EesBasis extract_ees(const Upb& upb, int samples = 1000, std::uint64_t seed = 0x5eedULL);

/// Positive integer pairs (parties M, local dimension d), both >= 2 and
/// bounded by the arguments, with d^M - M(d-1) - 1 = 4.
std::vector<std::pair<int, int>> solve_dimension_equation(int max_parties, int max_local_dim);

} // namespace ququart
