// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ququart {

// Error taxonomy. Every throwing path in the library uses one of these so
// callers (and tests) can tell an ownership violation from a numerical
// structure failure.

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested tensor space exceeds the configured size cap.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Linearly dependent inputs where independence is required.
struct RankError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Measurement basis not orthonormal/complete on the measured factors.
struct BasisError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A mathematical claim the protocol relies on failed to hold numerically.
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Derived correction is not a signed permutation (cannot happen for the
// shipped bases; guards against inconsistent inputs).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State acquired weight outside the embedded entangled subspace.
struct LeakageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Session construction with incomplete ownership or malformed script.
struct SetupError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A party acted on a subsystem it does not own.
struct AuthorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A correction was applied before the classical message it depends on.
struct CausalityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ququart
