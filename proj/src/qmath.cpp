// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include "ququart/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ququart {

namespace {

bool finite(const Amplitude& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

void check_finite(const std::vector<Amplitude>& amps, const char* what) {
    for (const auto& a : amps) {
        if (!finite(a)) throw InputError(std::string(what) + ": non-finite amplitude");
    }
}

// stride[k] = product of dims after k (last subsystem fastest).
std::vector<long> strides_of(const std::vector<int>& dims) {
    std::vector<long> s(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
        s[k] = s[k + 1] * dims[k + 1];
    return s;
}

void check_targets(const std::vector<int>& dims, std::span<const int> targets) {
    if (targets.empty()) throw ShapeError("targets: empty");
    std::vector<bool> seen(dims.size(), false);
    for (int t : targets) {
        if (t < 0 || t >= static_cast<int>(dims.size()))
            throw ShapeError("targets: subsystem index out of range");
        if (seen[t]) throw ShapeError("targets: duplicate subsystem index");
        seen[t] = true;
    }
}

// Flat offsets of every composite level of `targets` (given order, last
// fastest), all other subsystems at level 0.
std::vector<long> target_offsets(const std::vector<int>& dims, std::span<const int> targets) {
    auto strides = strides_of(dims);
    long block = 1;
    for (int t : targets) block *= dims[t];
    std::vector<long> offs(static_cast<std::size_t>(block), 0);
    long repeat = block;
    for (int t : targets) {
        repeat /= dims[t];
        for (long idx = 0; idx < block; ++idx) {
            long level = (idx / repeat) % dims[t];
            offs[static_cast<std::size_t>(idx)] += level * strides[t];
        }
    }
    return offs;
}

// Flat offsets of every assignment of the non-target subsystems (their
// natural order), targets held at level 0.
std::vector<long> rest_offsets(const std::vector<int>& dims, std::span<const int> targets) {
    auto strides = strides_of(dims);
    std::vector<bool> is_target(dims.size(), false);
    for (int t : targets) is_target[t] = true;
    std::vector<long> offs{0};
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (is_target[k]) continue;
        std::vector<long> next;
        next.reserve(offs.size() * dims[k]);
        for (long base : offs)
            for (int l = 0; l < dims[k]; ++l) next.push_back(base + l * strides[k]);
        offs = std::move(next);
    }
    return offs;
}

} // namespace

StateVector::StateVector(std::vector<int> dims_, std::vector<Amplitude> amps_)
    : dims(std::move(dims_)), amps(std::move(amps_)) {
    if (dims.empty()) throw ShapeError("StateVector: no subsystems");
    long total = 1;
    for (int d : dims) {
        if (d < 2) throw ShapeError("StateVector: subsystem dimension must be >= 2");
        total *= d;
        if (total > kMaxTotalDim) throw DimensionError("StateVector: dimension cap exceeded");
    }
    if (static_cast<long>(amps.size()) != total)
        throw ShapeError("StateVector: amplitude count does not match dims");
    check_finite(amps, "StateVector");
}

StateVector StateVector::basis(std::vector<int> dims_, long index) {
    long total = 1;
    for (int d : dims_) {
        if (d < 2) throw ShapeError("StateVector: subsystem dimension must be >= 2");
        total *= d;
        if (total > kMaxTotalDim) throw DimensionError("StateVector: dimension cap exceeded");
    }
    if (index < 0 || index >= total) throw ShapeError("basis: index out of range");
    std::vector<Amplitude> amps(static_cast<std::size_t>(total), Amplitude{0.0, 0.0});
    amps[static_cast<std::size_t>(index)] = Amplitude{1.0, 0.0};
    return StateVector(std::move(dims_), std::move(amps));
}

long StateVector::total_dim() const { return static_cast<long>(amps.size()); }

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector StateVector::normalized() const {
    double n = norm();
    if (n <= 0.0 || !std::isfinite(n)) throw InputError("normalized: zero-norm state");
    StateVector out = *this;
    for (auto& a : out.amps) a /= n;
    return out;
}

Operator::Operator(int dim_, std::vector<Amplitude> entries_)
    : dim(dim_), entries(std::move(entries_)) {
    if (dim <= 0) throw ShapeError("Operator: dimension must be positive");
    if (entries.size() != static_cast<std::size_t>(dim) * dim)
        throw ShapeError("Operator: entry count does not match dim^2");
    check_finite(entries, "Operator");
}

Operator Operator::identity(int dim_) {
    std::vector<Amplitude> e(static_cast<std::size_t>(dim_) * dim_, Amplitude{0.0, 0.0});
    for (int i = 0; i < dim_; ++i) e[static_cast<std::size_t>(i) * dim_ + i] = 1.0;
    return Operator(dim_, std::move(e));
}

Operator Operator::adjoint() const {
    Operator out = Operator::identity(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) out.at(r, c) = std::conj(at(c, r));
    return out;
}

bool Operator::is_unitary(double tol) const {
    Operator prod = multiply(adjoint(), *this);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            Amplitude want = (r == c) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
            if (std::abs(prod.at(r, c) - want) > tol) return false;
        }
    return true;
}

Amplitude Operator::trace() const {
    Amplitude t{0.0, 0.0};
    for (int i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

Operator multiply(const Operator& a, const Operator& b) {
    if (a.dim != b.dim) throw ShapeError("multiply: operator dims differ");
    Operator out(a.dim, std::vector<Amplitude>(static_cast<std::size_t>(a.dim) * a.dim));
    for (int r = 0; r < a.dim; ++r)
        for (int c = 0; c < a.dim; ++c) {
            Amplitude s{0.0, 0.0};
            for (int k = 0; k < a.dim; ++k) s += a.at(r, k) * b.at(k, c);
            out.at(r, c) = s;
        }
    return out;
}

StateVector apply(const Operator& op, const StateVector& state) {
    if (op.dim != state.total_dim()) throw ShapeError("apply: operator/state dims differ");
    StateVector out = state;
    for (int r = 0; r < op.dim; ++r) {
        Amplitude s{0.0, 0.0};
        for (int c = 0; c < op.dim; ++c) s += op.at(r, c) * state.amps[static_cast<std::size_t>(c)];
        out.amps[static_cast<std::size_t>(r)] = s;
    }
    return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    if (a.total_dim() * b.total_dim() > kMaxTotalDim)
        throw DimensionError("tensor_product: dimension cap exceeded");
    std::vector<int> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    std::vector<Amplitude> amps;
    amps.reserve(a.amps.size() * b.amps.size());
    for (const auto& x : a.amps)
        for (const auto& y : b.amps) amps.push_back(x * y);
    return StateVector(std::move(dims), std::move(amps));
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
    if (a.dims != b.dims) throw ShapeError("inner_product: dims differ");
    Amplitude s{0.0, 0.0};
    for (std::size_t i = 0; i < a.amps.size(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

StateVector apply_local(const StateVector& state, const Operator& op,
                        std::span<const int> targets) {
    check_targets(state.dims, targets);
    long block = 1;
    for (int t : targets) block *= state.dims[t];
    if (op.dim != block) throw ShapeError("apply_local: operator dim does not match targets");

    auto toffs = target_offsets(state.dims, targets);
    auto roffs = rest_offsets(state.dims, targets);
    StateVector out = state;
    std::vector<Amplitude> in(static_cast<std::size_t>(block));
    for (long ro : roffs) {
        for (long t = 0; t < block; ++t)
            in[static_cast<std::size_t>(t)] = state.amps[static_cast<std::size_t>(ro + toffs[t])];
        for (long r = 0; r < block; ++r) {
            Amplitude s{0.0, 0.0};
            for (long c = 0; c < block; ++c)
                s += op.at(static_cast<int>(r), static_cast<int>(c)) * in[static_cast<std::size_t>(c)];
            out.amps[static_cast<std::size_t>(ro + toffs[r])] = s;
        }
    }
    return out;
}

Operator partial_trace(const StateVector& state, std::span<const int> keep) {
    check_targets(state.dims, keep);
    long block = 1;
    for (int t : keep) block *= state.dims[t];
    auto toffs = target_offsets(state.dims, keep);
    auto roffs = rest_offsets(state.dims, keep);
    Operator rho(static_cast<int>(block),
                 std::vector<Amplitude>(static_cast<std::size_t>(block) * block, Amplitude{0.0, 0.0}));
    for (long ro : roffs)
        for (long a = 0; a < block; ++a) {
            Amplitude pa = state.amps[static_cast<std::size_t>(ro + toffs[a])];
            if (pa == Amplitude{0.0, 0.0}) continue;
            for (long b = 0; b < block; ++b)
                rho.at(static_cast<int>(a), static_cast<int>(b)) +=
                    pa * std::conj(state.amps[static_cast<std::size_t>(ro + toffs[b])]);
        }
    return rho;
}

double purity(const Operator& rho) {
    double s = 0.0;
    for (int r = 0; r < rho.dim; ++r)
        for (int c = 0; c < rho.dim; ++c) s += std::norm(rho.at(r, c));
    return s;
}

std::vector<double> hermitian_eigenvalues(const Operator& h) {
    const int n = h.dim;
    std::vector<Amplitude> a = h.entries;
    auto at = [&](int r, int c) -> Amplitude& { return a[static_cast<std::size_t>(r) * n + c]; };

    double scale = 0.0;
    for (const auto& e : a) scale += std::norm(e);
    scale = std::sqrt(scale);
    const double stop = 1e-15 * (scale + 1.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * std::norm(at(p, q));
        if (std::sqrt(off) < stop) break;

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                Amplitude apq = at(p, q);
                double beta = std::abs(apq);
                if (beta < 1e-300) continue;
                double phi = std::arg(apq);
                double app = at(p, p).real();
                double aqq = at(q, q).real();
                double theta = 0.5 * std::atan2(2.0 * beta, app - aqq);
                double c = std::cos(theta), s = std::sin(theta);
                Amplitude eip = std::polar(1.0, phi);
                Amplitude sn = s * eip;  // R[p][q] = -sn, R[q][p] = conj(sn)

                // B = A * R (columns p and q change)
                for (int k = 0; k < n; ++k) {
                    Amplitude akp = at(k, p), akq = at(k, q);
                    at(k, p) = akp * c + akq * std::conj(sn);
                    at(k, q) = -akp * sn + akq * c;
                }
                // A' = R^dagger * B (rows p and q change)
                for (int k = 0; k < n; ++k) {
                    Amplitude apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk + sn * aqk;
                    at(q, k) = -std::conj(sn) * apk + c * aqk;
                }
            }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<double> schmidt_singular_values(const StateVector& state,
                                            std::span<const int> side_a) {
    if (side_a.empty()) throw ShapeError("schmidt: empty side of cut");
    check_targets(state.dims, side_a);
    if (side_a.size() == state.dims.size()) throw ShapeError("schmidt: empty side of cut");

    long dim_a = 1;
    for (int t : side_a) dim_a *= state.dims[t];
    long dim_b = state.total_dim() / dim_a;

    Operator rho = [&] {
        if (dim_a <= dim_b) return partial_trace(state, side_a);
        std::vector<int> side_b;
        std::vector<bool> in_a(state.dims.size(), false);
        for (int t : side_a) in_a[t] = true;
        for (int k = 0; k < static_cast<int>(state.dims.size()); ++k)
            if (!in_a[k]) side_b.push_back(k);
        return partial_trace(state, side_b);
    }();

    auto eig = hermitian_eigenvalues(rho);
    std::vector<double> sv;
    sv.reserve(eig.size());
    for (auto it = eig.rbegin(); it != eig.rend(); ++it) sv.push_back(std::sqrt(std::max(0.0, *it)));
    return sv;
}

int schmidt_rank(const StateVector& state, std::span<const int> side_a, double threshold) {
    auto sv = schmidt_singular_values(state, side_a);
    int rank = 0;
    for (double v : sv)
        if (v > threshold) ++rank;
    return rank;
}

std::vector<StateVector> complement_orthonormal_basis(const std::vector<StateVector>& vectors,
                                                      long total_dim) {
    std::vector<int> dims = vectors.empty() ? std::vector<int>{static_cast<int>(total_dim)}
                                            : vectors.front().dims;
    std::vector<std::vector<Amplitude>> ortho;
    ortho.reserve(vectors.size());

    auto project_out = [](std::vector<Amplitude>& r, const std::vector<std::vector<Amplitude>>& basis) {
        for (const auto& u : basis) {
            Amplitude overlap{0.0, 0.0};
            for (std::size_t i = 0; i < r.size(); ++i) overlap += std::conj(u[i]) * r[i];
            for (std::size_t i = 0; i < r.size(); ++i) r[i] -= overlap * u[i];
        }
    };
    auto vec_norm = [](const std::vector<Amplitude>& r) {
        double s = 0.0;
        for (const auto& x : r) s += std::norm(x);
        return std::sqrt(s);
    };

    for (const auto& v : vectors) {
        if (v.total_dim() != total_dim)
            throw ShapeError("complement_orthonormal_basis: dimension mismatch");
        std::vector<Amplitude> r = v.amps;
        project_out(r, ortho);
        project_out(r, ortho); // second pass keeps orthogonality at full precision
        double nr = vec_norm(r);
        if (nr < kRankTol) throw RankError("complement_orthonormal_basis: dependent inputs");
        for (auto& x : r) x /= nr;
        ortho.push_back(std::move(r));
    }

    std::vector<std::vector<Amplitude>> out;
    for (long j = 0; j < total_dim; ++j) {
        std::vector<Amplitude> r(static_cast<std::size_t>(total_dim), Amplitude{0.0, 0.0});
        r[static_cast<std::size_t>(j)] = 1.0;
        project_out(r, ortho);
        project_out(r, out);
        project_out(r, ortho);
        project_out(r, out);
        double nr = vec_norm(r);
        if (nr < kRankTol) continue;
        for (auto& x : r) x /= nr;
        out.push_back(std::move(r));
    }
    if (static_cast<long>(out.size() + vectors.size()) != total_dim)
        throw StructureError("complement_orthonormal_basis: complement dimension mismatch");

    std::vector<StateVector> result;
    result.reserve(out.size());
    for (auto& r : out) result.emplace_back(dims, std::move(r));
    return result;
}

BranchProjection project_branch(const StateVector& state, const StateVector& outcome_vector,
                                std::span<const int> targets) {
    check_targets(state.dims, targets);
    long block = 1;
    for (int t : targets) block *= state.dims[t];
    if (outcome_vector.total_dim() != block)
        throw ShapeError("project_branch: outcome vector does not match targets");

    auto toffs = target_offsets(state.dims, targets);
    auto roffs = rest_offsets(state.dims, targets);

    std::vector<int> rest_dims;
    std::vector<bool> is_target(state.dims.size(), false);
    for (int t : targets) is_target[t] = true;
    for (std::size_t k = 0; k < state.dims.size(); ++k)
        if (!is_target[k]) rest_dims.push_back(state.dims[k]);

    std::vector<Amplitude> cond(roffs.size(), Amplitude{0.0, 0.0});
    for (std::size_t ri = 0; ri < roffs.size(); ++ri) {
        Amplitude s{0.0, 0.0};
        for (long t = 0; t < block; ++t)
            s += std::conj(outcome_vector.amps[static_cast<std::size_t>(t)]) *
                 state.amps[static_cast<std::size_t>(roffs[ri] + toffs[t])];
        cond[ri] = s;
    }
    double p = 0.0;
    for (const auto& c : cond) p += std::norm(c);

    BranchProjection out;
    out.probability = p;
    // When the measurement covers every subsystem the remainder is a bare
    // phase; it is carried in `overlap` and `remainder` stays empty.
    out.overlap = cond[0];
    if (p > 0.0 && !rest_dims.empty()) {
        double inv = 1.0 / std::sqrt(p);
        for (auto& c : cond) c *= inv;
        out.remainder = StateVector(rest_dims, std::move(cond));
    }
    return out;
}

std::vector<double> outcome_probabilities(const StateVector& state,
                                          const std::vector<StateVector>& projector_basis,
                                          std::span<const int> targets) {
    std::vector<double> probs;
    probs.reserve(projector_basis.size());
    for (const auto& b : projector_basis)
        probs.push_back(project_branch(state, b, targets).probability);
    return probs;
}

MeasurementOutcome born_measure(const StateVector& state,
                                const std::vector<StateVector>& projector_basis,
                                std::span<const int> targets, std::uint64_t seed) {
    if (projector_basis.empty()) throw BasisError("born_measure: empty basis");
    auto probs = outcome_probabilities(state, projector_basis, targets);
    double total = 0.0;
    for (double p : probs) total += p;
    if (std::abs(total - 1.0) > kAssertTol)
        throw BasisError("born_measure: outcome probabilities do not sum to 1 (incomplete basis)");

    SeededRng rng(seed);
    double u = rng.next_double() * total;
    int outcome = static_cast<int>(probs.size()) - 1;
    double cum = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        cum += probs[k];
        if (u < cum) {
            outcome = static_cast<int>(k);
            break;
        }
    }

    auto branch = project_branch(state, projector_basis[static_cast<std::size_t>(outcome)], targets);
    if (branch.probability <= 0.0)
        throw StructureError("born_measure: sampled a zero-probability outcome");

    // Reassemble the full post-state: outcome vector on targets, conditional
    // remainder elsewhere, original subsystem order.
    const auto& b = projector_basis[static_cast<std::size_t>(outcome)];
    auto toffs = target_offsets(state.dims, targets);
    std::vector<Amplitude> post(state.amps.size(), Amplitude{0.0, 0.0});
    if (targets.size() == state.dims.size()) {
        Amplitude phase = branch.overlap / std::abs(branch.overlap);
        for (std::size_t i = 0; i < post.size(); ++i) post[i] = b.amps[i] * phase;
    } else {
        auto roffs = rest_offsets(state.dims, targets);
        for (std::size_t ri = 0; ri < roffs.size(); ++ri)
            for (long t = 0; t < static_cast<long>(toffs.size()); ++t)
                post[static_cast<std::size_t>(roffs[ri] + toffs[t])] =
                    b.amps[static_cast<std::size_t>(t)] * branch.remainder.amps[ri];
    }

    MeasurementOutcome out;
    out.outcome = outcome;
    out.probability = branch.probability;
    out.post_state = StateVector(state.dims, std::move(post));
    return out;
}

} // namespace ququart
