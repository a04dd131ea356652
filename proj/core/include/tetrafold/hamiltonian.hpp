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

#pragma once

#include <cstdint>
#include <map>

#include "tetrafold/lattice.hpp"
#include "tetrafold/spin_polynomial.hpp"

namespace tetrafold {

struct PenaltyConfig {
    double lambda_back = 10.0;     ///< per pair of equal consecutive turns
    double lambda_mismatch = 10.0; ///< per unit of (d^2 - 3) under a set contact qubit
    double lambda_overlap = 10.0;  ///< per fired overlap certificate

    /// All three set to 10 * max|eps|, floored at 1.
    static PenaltyConfig defaults_for(const InteractionMatrix &matrix);
    void validate() const;
};

/// Knobs for the overlap-certificate search.
struct OverlapOptions {
    /// Prefixes with more free geometry bits than this are not searched.
    int max_free_bits = 13;
    /// Literal count per certificate; bounds the penalty degree.
    int max_literals = 5;
};

struct OverlapCoverage {
    int beads_searched = 0;
    int beads_skipped = 0;
    long overlap_prefixes = 0; ///< non-backtracking prefixes whose last bead hits an earlier one
    long covered_prefixes = 0;
    int certificates = 0;

    bool complete() const { return beads_skipped == 0 && covered_prefixes == overlap_prefixes; }
};

/// lambda_back * (number of k with t_k == t_{k+1}); degree <= 4.
SpinPolynomial build_backbone(const QubitLayout &layout, const PenaltyConfig &penalties);
SpinPolynomial build_backbone(int n_residues, const PenaltyConfig &penalties);

/// Exact squared Euclidean distance between beads i < j as a polynomial in
/// the geometry spins (degree <= 4).
SpinPolynomial squared_distance_polynomial(const QubitLayout &layout, int i, int j);

/// Sum of literal-conjunction certificates, each at most
/// `options.max_literals` geometry literals, that fire on non-backtracking
/// prefixes whose last bead lands on an earlier bead and never on a
/// self-avoiding non-backtracking prefix.
SpinPolynomial overlap_penalty(const QubitLayout &layout, double lambda_overlap,
                               const OverlapOptions &options = {},
                               OverlapCoverage *coverage = nullptr);

/// For each eligible pair with contact qubit q:
///   b_q * (eps_ij + lambda_mismatch * (d_ij^2 - 3))
/// plus the overlap penalty. Degree <= 5.
SpinPolynomial build_contact(const Peptide &peptide, const InteractionMatrix &matrix,
                             const PenaltyConfig &penalties, const OverlapOptions &options = {},
                             OverlapCoverage *coverage = nullptr);

SpinPolynomial build_total(const Peptide &peptide, const InteractionMatrix &matrix,
                           const PenaltyConfig &penalties, const OverlapOptions &options = {},
                           OverlapCoverage *coverage = nullptr);

/// Term count per degree.
std::map<int, std::size_t> degree_histogram(const SpinPolynomial &p);

/// Geometry decodes to a non-backtracking, self-avoiding walk.
bool geometry_feasible(const QubitLayout &layout, std::uint64_t bits);
/// geometry_feasible and every set contact qubit sits on an adjacent pair.
bool assignment_feasible(const QubitLayout &layout, std::uint64_t bits);
/// Geometry bits with contact bits taken from the geometry itself.
std::uint64_t with_geometric_contacts(const QubitLayout &layout, std::uint64_t bits);

} // namespace tetrafold
