// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra over small tensor-product spaces: state
// vectors with explicit per-subsystem dimensions, local operator action,
// partial trace, Schmidt values via a Jacobi eigensolver, orthogonal
// complements, and seeded Born-rule measurement. Everything is exact dense
// arithmetic in double precision; the spaces in play are desk-scale.

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "ququart/errors.hpp"
#include "ququart/rng.hpp"

namespace ququart {

using Amplitude = std::complex<double>;

// Hard cap on the total dimension of any constructed space.
inline constexpr long kMaxTotalDim = 1L << 20;

// Tolerances used throughout. Inputs are exact dyadic rationals (plus a few
// 1/sqrt(2) and 1/3 factors), so only rounding noise accumulates.
inline constexpr double kOrthoTol = 1e-12;   // orthonormality / unitarity
inline constexpr double kAssertTol = 1e-10;  // general numeric assertions
inline constexpr double kRankTol = 1e-8;     // entanglement-rank threshold

/// Pure state of a tensor product of subsystems, amplitudes row-major with
/// the last subsystem varying fastest: index = ((l0*d1 + l1)*d2 + l2)...
struct StateVector {
    std::vector<int> dims;
    std::vector<Amplitude> amps;

    StateVector() = default;
    // Validates: dims each >= 2, product within cap, amps length matches,
    // all entries finite.
    StateVector(std::vector<int> dims_, std::vector<Amplitude> amps_);

    // Natural basis vector |index> of the given space.
    static StateVector basis(std::vector<int> dims_, long index);

    long total_dim() const;
    double norm() const;
    double norm_squared() const;
    StateVector normalized() const; // InputError on zero norm
};

/// Square complex matrix, row-major.
struct Operator {
    int dim = 0;
    std::vector<Amplitude> entries;

    Operator() = default;
    Operator(int dim_, std::vector<Amplitude> entries_);

    static Operator identity(int dim_);

    Amplitude& at(int r, int c) { return entries[static_cast<std::size_t>(r) * dim + c]; }
    const Amplitude& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * dim + c];
    }

    Operator adjoint() const;
    bool is_unitary(double tol = kOrthoTol) const;
    Amplitude trace() const;
};

Operator multiply(const Operator& a, const Operator& b);
StateVector apply(const Operator& op, const StateVector& state);

/// a (x) b. Dims concatenate; amplitude at (i,j) is a[i]*b[j].
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// <a|b>, conjugate-linear in the first argument. ShapeError on dims mismatch.
Amplitude inner_product(const StateVector& a, const StateVector& b);

/// Apply `op` to the listed subsystems (identity elsewhere). The operator
/// index space is the targets in the given order, last target fastest.
StateVector apply_local(const StateVector& state, const Operator& op,
                        std::span<const int> targets);

/// Reduced density operator on `keep` (in the given order), tracing out the
/// rest. For normalized input: trace 1, Hermitian, positive semidefinite.
Operator partial_trace(const StateVector& state, std::span<const int> keep);

/// Tr(rho^2).
double purity(const Operator& rho);

/// Eigenvalues of a Hermitian operator by cyclic Jacobi, ascending.
std::vector<double> hermitian_eigenvalues(const Operator& h);

/// Schmidt singular values across the bipartition (side_a | complement),
/// non-negative and descending; squares sum to the squared norm. Computed
/// from the eigenvalues of the reduced density operator on the smaller side.
/// ShapeError if either side of the cut is empty.
std::vector<double> schmidt_singular_values(const StateVector& state,
                                            std::span<const int> side_a);

/// Count of Schmidt values above `threshold`.
int schmidt_rank(const StateVector& state, std::span<const int> side_a,
                 double threshold = kRankTol);

/// Deterministic orthonormal basis of the orthogonal complement of
/// span(vectors) in the full space: natural basis vectors are projected in
/// lexicographic order through modified Gram-Schmidt, residuals below 1e-8
/// are skipped. RankError if the inputs are linearly dependent.
std::vector<StateVector> complement_orthonormal_basis(
    const std::vector<StateVector>& vectors, long total_dim);

/// Probability of `outcome_vector` on `targets` together with the normalized
/// conditional state of the untouched subsystems (in their original order).
/// When targets cover every subsystem the remainder stays empty and the
/// complex overlap carries the phase.
struct BranchProjection {
    double probability = 0.0;
    StateVector remainder; // normalized; empty when probability is 0
    Amplitude overlap{0.0, 0.0};
};
BranchProjection project_branch(const StateVector& state,
                                const StateVector& outcome_vector,
                                std::span<const int> targets);

/// Projective measurement of `targets` in `projector_basis`, outcome drawn by
/// inverse CDF over the exact Born probabilities using the seeded generator.
/// BasisError unless the probabilities sum to 1 within 1e-10 (basis must be
/// complete on the support of the state). Post-state keeps all subsystems.
struct MeasurementOutcome {
    int outcome = 0;
    double probability = 0.0;
    StateVector post_state;
};
MeasurementOutcome born_measure(const StateVector& state,
                                const std::vector<StateVector>& projector_basis,
                                std::span<const int> targets, std::uint64_t seed);

/// All outcome probabilities of the above measurement, without sampling.
std::vector<double> outcome_probabilities(const StateVector& state,
                                          const std::vector<StateVector>& projector_basis,
                                          std::span<const int> targets);

} // namespace ququart
