// Copyright (c) 2026 The ququart authors.
// SPDX-License-Identifier: Apache-2.0

#include "ququart/basis.hpp"

#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>

namespace ququart {

namespace {

// Family sign patterns over the second-slot level.
constexpr int kSigns[4][4] = {
    {+1, +1, +1, +1}, // W
    {+1, +1, -1, -1}, // X
    {+1, -1, +1, -1}, // Y
    {+1, -1, -1, +1}, // Z
};

// The published correction matrices U_{W0}..U_{Z3}, transcribed verbatim in
// flat label order. Kept byte-identical with data/correction_matrices.txt;
// a unit test enforces the equality.
constexpr int kTranscribed[16][4][4] = {
    // W0
    {{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}},
    // W1
    {{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}},
    // W2
    {{0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}},
    // W3
    {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
    // X0
    {{0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}},
    // X1
    {{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}},
    // X2
    {{0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}},
    // X3
    {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
    // Y0
    {{0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}},
    // Y1
    {{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}},
    // Y2
    {{0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}},
    // Y3
    {{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}},
    // Z0
    {{0, 0, 0, -1}, {-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}},
    // Z1
    {{0, 0, -1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, -1, 0, 0}},
    // Z2
    {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}},
    // Z3
    {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
};

} // namespace

char family_char(Family f) {
    switch (f) {
    case Family::W: return 'W';
    case Family::X: return 'X';
    case Family::Y: return 'Y';
    case Family::Z: return 'Z';
    }
    return '?';
}

std::optional<Family> parse_family(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'W': return Family::W;
    case 'X': return Family::X;
    case 'Y': return Family::Y;
    case 'Z': return Family::Z;
    default: return std::nullopt;
    }
}

int family_sign(Family f, int k) { return kSigns[static_cast<int>(f)][k & 3]; }

BasisLabel BasisLabel::from_flat(int f) {
    if (f < 0 || f > 15) throw InputError("BasisLabel: flat index out of range");
    return BasisLabel{static_cast<Family>(f / 4), f % 4};
}

std::string BasisLabel::str() const {
    return std::string(1, family_char(family)) + std::to_string(index);
}

std::optional<BasisLabel> BasisLabel::parse(std::string_view s) {
    if (s.size() != 2) return std::nullopt;
    auto fam = parse_family(s[0]);
    if (!fam || s[1] < '0' || s[1] > '3') return std::nullopt;
    return BasisLabel{*fam, s[1] - '0'};
}

std::array<BasisLabel, 16> all_labels() {
    std::array<BasisLabel, 16> out;
    for (int f = 0; f < 16; ++f) out[static_cast<std::size_t>(f)] = BasisLabel::from_flat(f);
    return out;
}

StateVector basis_state(BasisLabel l) {
    std::vector<Amplitude> amps(16, Amplitude{0.0, 0.0});
    for (int k = 0; k < 4; ++k) {
        int first = (l.index + k) % 4;
        amps[static_cast<std::size_t>(first * 4 + k)] = 0.5 * family_sign(l.family, k);
    }
    return StateVector({4, 4}, std::move(amps));
}

QuquartBasis build_basis() {
    QuquartBasis basis;
    for (auto l : all_labels()) basis.states[static_cast<std::size_t>(l.flat())] = basis_state(l);
    return basis;
}

std::array<DecompositionTerm, 4> natural_decomposition(int i, int j) {
    if (i < 0 || i > 3 || j < 0 || j > 3)
        throw InputError("natural_decomposition: levels must be in 0..3");
    // |i>|j> lives in the four states with family index i-j mod 4; the signs
    // are each family's pattern at slot j.
    int idx = ((i - j) % 4 + 4) % 4;
    std::array<DecompositionTerm, 4> terms;
    for (int f = 0; f < 4; ++f) {
        Family fam = static_cast<Family>(f);
        terms[static_cast<std::size_t>(f)] = DecompositionTerm{BasisLabel{fam, idx}, family_sign(fam, j)};
    }
    return terms;
}

Operator SignedPermutation::to_operator() const {
    Operator op(4, std::vector<Amplitude>(16, Amplitude{0.0, 0.0}));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) op.at(r, c) = static_cast<double>(m[r][c]);
    return op;
}

bool SignedPermutation::is_signed_permutation() const {
    int rows[4] = {0, 0, 0, 0}, cols[4] = {0, 0, 0, 0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            int v = m[r][c];
            if (v != 0 && v != 1 && v != -1) return false;
            if (v != 0) {
                ++rows[r];
                ++cols[c];
            }
        }
    for (int k = 0; k < 4; ++k)
        if (rows[k] != 1 || cols[k] != 1) return false;
    return true;
}

CorrectionTable transcribed_correction_table() {
    CorrectionTable t;
    for (int f = 0; f < 16; ++f)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                t.ops[static_cast<std::size_t>(f)].m[static_cast<std::size_t>(r)]
                     [static_cast<std::size_t>(c)] = kTranscribed[f][r][c];
    return t;
}

BasisLabel default_resource() { return BasisLabel{Family::X, 1}; }

SignedPermutation derive_correction(BasisLabel label, BasisLabel resource) {
    const StateVector outcome = basis_state(label);
    const StateVector res = basis_state(resource);
    const std::array<int, 2> meas_targets{0, 1};

    SignedPermutation u{};
    for (int j = 0; j < 4; ++j) {
        // Input |j> on particle 1, resource on (2,3); the conditional state of
        // particle 3 for this outcome must be +-1 times one natural level.
        StateVector total = tensor_product(StateVector::basis({4}, j), res);
        auto branch = project_branch(total, outcome, meas_targets);
        if (branch.probability <= 0.0)
            throw ProtocolError("derive_correction: outcome has zero amplitude on a basis input");
        const auto& cond = branch.remainder;
        int nonzero = -1;
        for (int k = 0; k < 4; ++k) {
            double mag = std::abs(cond.amps[static_cast<std::size_t>(k)]);
            if (mag > 0.5) {
                if (nonzero >= 0)
                    throw ProtocolError("derive_correction: conditional state is not a signed level");
                nonzero = k;
            } else if (mag > kAssertTol) {
                throw ProtocolError("derive_correction: conditional state is not a signed level");
            }
        }
        if (nonzero < 0) throw ProtocolError("derive_correction: empty conditional state");
        double re = cond.amps[static_cast<std::size_t>(nonzero)].real();
        if (std::abs(std::abs(re) - 1.0) > kAssertTol)
            throw ProtocolError("derive_correction: conditional amplitude is not +-1");
        // U must send sign*|nonzero> back to |j>.
        u.m[static_cast<std::size_t>(j)][static_cast<std::size_t>(nonzero)] = re > 0 ? 1 : -1;
    }
    if (!u.is_signed_permutation())
        throw ProtocolError("derive_correction: no signed-permutation solution");
    return u;
}

CorrectionTable derive_correction_table(BasisLabel resource) {
    CorrectionTable t;
    for (auto l : all_labels())
        t.ops[static_cast<std::size_t>(l.flat())] = derive_correction(l, resource);
    return t;
}

std::vector<BasisLabel> correction_table_diff() {
    CorrectionTable derived = derive_correction_table(default_resource());
    CorrectionTable published = transcribed_correction_table();
    std::vector<BasisLabel> mismatched;
    for (auto l : all_labels())
        if (!(derived.op(l) == published.op(l))) mismatched.push_back(l);
    return mismatched;
}

CorrectionTable parse_correction_table(std::istream& in) {
    CorrectionTable t;
    std::array<bool, 16> seen{};
    std::string line;
    int current = -1;
    int row = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (auto label = BasisLabel::parse(first)) {
            if (current >= 0 && row != 4)
                throw InputError("correction table: truncated matrix block");
            current = label->flat();
            if (seen[static_cast<std::size_t>(current)])
                throw InputError("correction table: duplicate label " + label->str());
            seen[static_cast<std::size_t>(current)] = true;
            row = 0;
            continue;
        }
        if (current < 0 || row >= 4) throw InputError("correction table: row outside a block");
        std::istringstream rs(line);
        for (int c = 0; c < 4; ++c) {
            int v = 0;
            if (!(rs >> v) || (v != 0 && v != 1 && v != -1))
                throw InputError("correction table: malformed row");
            t.ops[static_cast<std::size_t>(current)].m[static_cast<std::size_t>(row)]
                 [static_cast<std::size_t>(c)] = v;
        }
        ++row;
    }
    if (current >= 0 && row != 4) throw InputError("correction table: truncated matrix block");
    for (bool s : seen)
        if (!s) throw InputError("correction table: missing label block");
    return t;
}

std::string format_correction_table(const CorrectionTable& t) {
    std::ostringstream out;
    for (auto l : all_labels()) {
        out << l.str() << "\n";
        const auto& m = t.op(l).m;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) out << (c ? " " : "") << m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            out << "\n";
        }
        if (l.flat() != 15) out << "\n";
    }
    return out.str();
}

} // namespace ququart
