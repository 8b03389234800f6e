// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0
//
// The 16-element W/X/Y/Z entangled basis of two ququarts, the inverse
// transform back to the natural product basis, and the sixteen correction
// unitaries (both the published reference transcription and an independent
// derivation from the teleportation branch structure).

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "ququart/qmath.hpp"

namespace ququart {

enum class Family : int { W = 0, X = 1, Y = 2, Z = 3 };

char family_char(Family f);
std::optional<Family> parse_family(char c);

// Sign pattern of each family over the second-slot level k:
// W = ++++, X = ++--, Y = +-+-, Z = +--+.
int family_sign(Family f, int k);

/// One of the 16 labels {W,X,Y,Z} x {0..3}. Flat order W0..W3,X0..X3,Y0..Y3,
/// Z0..Z3 is the canonical serialization order everywhere.
struct BasisLabel {
    Family family = Family::W;
    int index = 0;

    int flat() const { return static_cast<int>(family) * 4 + index; }
    static BasisLabel from_flat(int f);
    std::string str() const;
    static std::optional<BasisLabel> parse(std::string_view s);

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// All 16 labels in canonical flat order.
std::array<BasisLabel, 16> all_labels();

/// The 16 orthonormal entangled states of the 4x4 system, flat label order.
/// |F_i> = 1/2 sum_k s_F(k) |i+k mod 4>|k>.
struct QuquartBasis {
    std::array<StateVector, 16> states;
    const StateVector& state(BasisLabel l) const { return states[static_cast<std::size_t>(l.flat())]; }
};

QuquartBasis build_basis();

/// Single basis state without building the full set.
StateVector basis_state(BasisLabel l);

/// |i>|j> = 1/2 * sum over the four families of sign * |family, index>.
struct DecompositionTerm {
    BasisLabel label;
    int sign; // +1 or -1; the overall coefficient is 1/2
};
std::array<DecompositionTerm, 4> natural_decomposition(int i, int j);

/// 4x4 matrix with entries in {0, +1, -1}, exactly one nonzero per row and
/// column. Integer storage so unitarity holds exactly.
struct SignedPermutation {
    std::array<std::array<int, 4>, 4> m{};

    Operator to_operator() const;
    bool is_signed_permutation() const; // entries in {0,+-1}, one per row/col
    friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

/// Map from measurement outcome label to the receiver's correction unitary.
struct CorrectionTable {
    std::array<SignedPermutation, 16> ops;
    const SignedPermutation& op(BasisLabel l) const { return ops[static_cast<std::size_t>(l.flat())]; }
    friend bool operator==(const CorrectionTable&, const CorrectionTable&) = default;
};

/// The published correction matrices, transcribed verbatim. Shipped as data:
/// protocol runs use the derived table, and any mismatch between the two is
/// surfaced by correction_table_diff rather than silently patched.
CorrectionTable transcribed_correction_table();

/// Correction for measurement outcome `label` with entanglement resource
/// `resource`, derived from first principles: solve on the four natural
/// basis inputs for the unique signed permutation U with U|phi_label> = |phi>.
/// ProtocolError if no signed-permutation solution exists.
SignedPermutation derive_correction(BasisLabel label, BasisLabel resource);

/// Full correction table derived for the given resource.
CorrectionTable derive_correction_table(BasisLabel resource);

/// Labels where the derived table (resource X1) differs from the
/// transcription. Empty means the published tables match the derivation.
std::vector<BasisLabel> correction_table_diff();

/// Parse/serialize the reference data file: 16 blocks, each a label line
/// ("W0".."Z3") followed by four rows of four signed integers. '#' starts a
/// comment line.
CorrectionTable parse_correction_table(std::istream& in);
std::string format_correction_table(const CorrectionTable& t);

/// The resource label used by the shipped protocols (X1).
BasisLabel default_resource();

} // namespace ququart
