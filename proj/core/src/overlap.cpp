// Copyright 2026 The Tetrafold Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Overlap penalties as literal-conjunction certificates.
//
// A penalty that vanishes on every feasible walk yet is positive whenever
// bead j lands on an earlier bead cannot be written as a low-degree function
// of d^2 alone. Instead, for each bead j we enumerate the gauge-fixed turn
// prefixes that decide its position (geometry qubits [0, 2j-5)), and for each
// prefix whose last bead collides we look for the smallest set of its bits
// that no self-avoiding, non-backtracking prefix shares. The product of those
// literals is zero on every feasible assignment and one on the collision.

#include <algorithm>
#include <bit>
#include <optional>
#include <vector>

#include "tetrafold/hamiltonian.hpp"

namespace tetrafold {

namespace {

struct Certificate {
    std::uint64_t mask = 0;
    std::uint64_t values = 0;
};

int prefix_free_bits(int bead) { return bead <= 2 ? 0 : 2 * bead - 5; }

/// Next integer with the same popcount (Gosper's hack).
std::uint64_t next_same_popcount(std::uint64_t v) {
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

bool hits_all(std::uint64_t subset, std::uint64_t target, const std::vector<std::uint64_t> &good) {
    for (std::uint64_t g : good) {
        if (((g ^ target) & subset) == 0) {
            return false;
        }
    }
    return true;
}

std::optional<Certificate> find_certificate(std::uint64_t target, int free_bits, int max_literals,
                                            const std::vector<std::uint64_t> &good) {
    const std::uint64_t universe = low_mask(free_bits);
    for (int size = 1; size <= std::min(max_literals, free_bits); ++size) {
        std::uint64_t subset = low_mask(size);
        while (subset <= universe && (subset & ~universe) == 0) {
            if (hits_all(subset, target, good)) {
                return Certificate{subset, target & subset};
            }
            subset = next_same_popcount(subset);
        }
    }
    return std::nullopt;
}

} // namespace

SpinPolynomial overlap_penalty(const QubitLayout &layout, double lambda_overlap,
                               const OverlapOptions &options, OverlapCoverage *coverage) {
    const int n = layout.n_qubits();
    OverlapCoverage stats;
    std::vector<Certificate> certs;

    for (int bead = 4; bead < layout.n_residues; ++bead) {
        const int free_bits = prefix_free_bits(bead);
        if (free_bits > options.max_free_bits) {
            ++stats.beads_skipped;
            continue;
        }
        ++stats.beads_searched;

        std::vector<std::uint64_t> good;
        std::vector<std::uint64_t> targets;
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << free_bits); ++a) {
            auto turns = decode_geometry(layout, a);
            turns.resize(static_cast<std::size_t>(bead));
            if (!no_backtracking(turns)) {
                continue;
            }
            const auto conf = turns_to_positions(turns);
            const Conformation head(conf.begin(), conf.end() - 1);
            if (!is_self_avoiding(head)) {
                continue; // an earlier bead already collides
            }
            if (is_self_avoiding(conf)) {
                good.push_back(a);
            } else {
                targets.push_back(a);
            }
        }

        stats.overlap_prefixes += static_cast<long>(targets.size());
        const std::size_t first_cert = certs.size();
        for (std::uint64_t x : targets) {
            const bool covered =
                std::any_of(certs.begin() + static_cast<std::ptrdiff_t>(first_cert), certs.end(),
                            [&](const Certificate &c) { return (x & c.mask) == c.values; });
            if (covered) {
                ++stats.covered_prefixes;
                continue;
            }
            if (auto c = find_certificate(x, free_bits, options.max_literals, good)) {
                certs.push_back(*c);
                ++stats.covered_prefixes;
            }
        }
    }
    stats.certificates = static_cast<int>(certs.size());
    if (coverage != nullptr) {
        *coverage = stats;
    }

    PolynomialAccumulator acc(n);
    for (const auto &c : certs) {
        auto term = SpinPolynomial::constant(n, lambda_overlap);
        for (std::uint64_t m = c.mask; m != 0; m &= m - 1) {
            const int q = std::countr_zero(m);
            term = term * SpinPolynomial::literal(n, q, bit_of(c.values, q));
        }
        acc.add(term);
    }
    return acc.build();
}

} // namespace tetrafold
