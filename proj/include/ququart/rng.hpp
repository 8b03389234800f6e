// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace ququart {

// splitmix64 finalizer. Used both as the core generator step and as the
// counter mixer for deriving independent per-trial seeds from a master seed,
// so batch results do not depend on scheduling order.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for trial/event `counter` under `master`. Pure function of both.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
    return mix64(master ^ mix64(counter));
}

// Minimal deterministic generator. Identical output on every platform for a
// given seed; replay contracts depend on this.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

} // namespace ququart
