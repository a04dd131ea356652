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

#include "tetrafold/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace tetrafold {

PenaltyConfig PenaltyConfig::defaults_for(const InteractionMatrix &matrix) {
    const double lambda = std::max(10.0 * matrix.max_abs(), 1.0);
    return {lambda, lambda, lambda};
}

void PenaltyConfig::validate() const {
    for (double v : {lambda_back, lambda_mismatch, lambda_overlap}) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError("penalty coefficients must be positive and finite");
        }
    }
}

namespace {

SpinPolynomial half_spin(const QubitLayout &layout, const GeometryBit &b) {
    if (b.fixed()) {
        return SpinPolynomial::constant(layout.n_qubits(), b.value ? -1.0 : 1.0);
    }
    return SpinPolynomial::spin(layout.n_qubits(), b.qubit);
}

} // namespace

SpinPolynomial build_backbone(const QubitLayout &layout, const PenaltyConfig &penalties) {
    penalties.validate();
    const int n = layout.n_qubits();
    PolynomialAccumulator acc(n);
    const auto one = SpinPolynomial::constant(n, 1.0);
    for (int k = 0; k + 1 < layout.n_turns(); ++k) {
        const auto same_hi = (one + half_spin(layout, layout.hi_bit(k)) *
                                        half_spin(layout, layout.hi_bit(k + 1))) * 0.5;
        const auto same_lo = (one + half_spin(layout, layout.lo_bit(k)) *
                                        half_spin(layout, layout.lo_bit(k + 1))) * 0.5;
        acc.add(same_hi * same_lo, penalties.lambda_back);
    }
    return acc.build();
}

SpinPolynomial build_backbone(int n_residues, const PenaltyConfig &penalties) {
    return build_backbone(qubit_layout(n_residues), penalties);
}

SpinPolynomial squared_distance_polynomial(const QubitLayout &layout, int i, int j) {
    if (i < 0 || j >= layout.n_residues || i >= j) {
        throw ValidationError("bead indices out of range");
    }
    const int n = layout.n_qubits();
    // Components of sum_k s_k a[t_k]: x = z_hi, y = z_lo, z = z_hi z_lo.
    PolynomialAccumulator x(n), y(n), z(n);
    for (int k = i; k < j; ++k) {
        const double s = (k % 2 == 0) ? 1.0 : -1.0;
        const auto hi = half_spin(layout, layout.hi_bit(k));
        const auto lo = half_spin(layout, layout.lo_bit(k));
        x.add(hi, s);
        y.add(lo, s);
        z.add(hi * lo, s);
    }
    const auto px = x.build(), py = y.build(), pz = z.build();
    return px * px + py * py + pz * pz;
}

SpinPolynomial build_contact(const Peptide &peptide, const InteractionMatrix &matrix,
                             const PenaltyConfig &penalties, const OverlapOptions &options,
                             OverlapCoverage *coverage) {
    penalties.validate();
    const auto layout = qubit_layout(peptide);
    const int n = layout.n_qubits();
    PolynomialAccumulator acc(n);
    const auto three = SpinPolynomial::constant(n, static_cast<double>(kContactDistanceSq));
    for (int c = 0; c < layout.n_contact; ++c) {
        const auto &p = layout.pairs[static_cast<std::size_t>(c)];
        const double eps = matrix(peptide[p.i], peptide[p.j]);
        const auto excess = squared_distance_polynomial(layout, p.i, p.j) - three;
        const auto energy = SpinPolynomial::constant(n, eps) + excess * penalties.lambda_mismatch;
        acc.add(SpinPolynomial::literal(n, layout.contact_qubit(c), true) * energy);
    }
    acc.add(overlap_penalty(layout, penalties.lambda_overlap, options, coverage));
    return acc.build();
}

SpinPolynomial build_total(const Peptide &peptide, const InteractionMatrix &matrix,
                           const PenaltyConfig &penalties, const OverlapOptions &options,
                           OverlapCoverage *coverage) {
    return build_backbone(qubit_layout(peptide), penalties) +
           build_contact(peptide, matrix, penalties, options, coverage);
}

std::map<int, std::size_t> degree_histogram(const SpinPolynomial &p) {
    std::map<int, std::size_t> h;
    for (const auto &t : p.terms()) {
        ++h[std::popcount(t.mask)];
    }
    return h;
}

bool geometry_feasible(const QubitLayout &layout, std::uint64_t bits) {
    return is_feasible(decode_geometry(layout, bits));
}

bool assignment_feasible(const QubitLayout &layout, std::uint64_t bits) {
    const auto turns = decode_geometry(layout, bits);
    if (!no_backtracking(turns)) {
        return false;
    }
    const auto conf = turns_to_positions(turns);
    if (!is_self_avoiding(conf)) {
        return false;
    }
    const std::uint64_t contacts = (bits & layout.contact_mask()) >> layout.n_geom;
    return (contacts & ~contacts_from_geometry(conf, layout)) == 0;
}

std::uint64_t with_geometric_contacts(const QubitLayout &layout, std::uint64_t bits) {
    const std::uint64_t geom = bits & layout.geometry_mask();
    const auto conf = turns_to_positions(decode_geometry(layout, geom));
    return geom | (contacts_from_geometry(conf, layout) << layout.n_geom);
}

} // namespace tetrafold
