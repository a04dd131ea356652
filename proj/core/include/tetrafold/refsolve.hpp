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
#include <string>
#include <vector>

#include "tetrafold/lattice.hpp"

namespace tetrafold {

inline constexpr int kDefaultEnumerationCap = 12;

struct RefResult {
    std::string sequence;
    double e_ref = 0.0;
    TurnSequence turns;
    std::string method; ///< "exact" or "ga"
    std::uint64_t seed = 0;
    int generations = 0;
    std::uint64_t conformations = 0;   ///< walks visited (exact)
    std::vector<double> best_history; ///< best feasible energy after each generation (ga)
};

/// Global minimum of the structural energy over gauge-fixed, non-backtracking,
/// self-avoiding walks. The first minimizer in lexicographic turn order wins.
RefResult exact_enumerate(const Peptide &peptide, const InteractionMatrix &matrix,
                          int max_residues = kDefaultEnumerationCap);

struct GAConfig {
    int population = 200;
    int max_generations = 5000;
    int tournament = 3;
    double crossover_rate = 0.9;
    double mutation_rate = -1.0; ///< per locus; negative means 1 / (N - 1)
    int patience = 200;
    int elitism = 1;
    std::uint64_t seed = 0;
    /// Optional seeds for the first population slots.
    std::vector<TurnSequence> initial_population;

    void validate() const;
};

/// Structural energy plus a penalty per overlapping bead pair and per
/// backtracking step; usable on any turn sequence.
double ga_fitness(const TurnSequence &turns, const Peptide &peptide,
                  const InteractionMatrix &matrix, double penalty);

RefResult genetic_algorithm(const Peptide &peptide, const InteractionMatrix &matrix,
                            const GAConfig &config);

} // namespace tetrafold
