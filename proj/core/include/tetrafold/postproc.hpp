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
#include <string>
#include <vector>

#include "tetrafold/hamiltonian.hpp"
#include "tetrafold/samples.hpp"

namespace tetrafold {

struct ConsensusConfig {
    std::uint64_t k = 2000;
    std::size_t pool_size = 200;
    std::uint64_t seed = 0;
    std::uint64_t max_attempts = 1'000'000; ///< random walks tried when topping up the pool

    void validate() const;
};

/// Energies observed at one pipeline stage, with multiplicity.
struct StageDistribution {
    std::string name;
    std::map<double, std::uint64_t> histogram;

    void add(double energy, std::uint64_t count = 1) { histogram[energy] += count; }
    std::uint64_t total() const;
    double mean() const;
    double min() const;
};

struct PipelineResult {
    std::string pipeline;
    /// Set when no feasible candidate existed; bits/energy are then meaningless.
    bool empty = false;
    int n_qubits = 0;
    std::uint64_t bits = 0;
    double energy = 0.0;
    std::vector<StageDistribution> stages;
    std::size_t summary_stage = 0; ///< index of the stage whose mean is reported as E_avg
    double feasibility_fraction = 0.0;
    std::vector<double> polarization;

    double e_avg() const;
    double e_best() const { return energy; }
    const StageDistribution *stage(const std::string &name) const;
};

/// Optimal contact bits (as an n_contact-wide word) for a fixed geometry.
/// Contacts are optimized per connected component of their coupling graph;
/// ties resolve to 0. Throws InfeasibleConformation on an infeasible geometry.
std::uint64_t repair_contacts(const TurnSequence &geometry, const SpinPolynomial &h_f,
                              const QubitLayout &layout);
std::uint64_t repair_contacts_bits(std::uint64_t geometry_bits, const SpinPolynomial &h_f,
                                   const QubitLayout &layout);

/// First-improvement single-bit-flip descent over the full bitstring, visiting
/// qubits in a seeded random order and rejecting flips that leave the
/// feasible set. `trace`, if given, receives the energy after every accepted
/// flip, starting with the input energy.
std::uint64_t greedy_descent(std::uint64_t bits, const SpinPolynomial &h_f,
                             const QubitLayout &layout, std::uint64_t seed,
                             std::vector<double> *trace = nullptr);

PipelineResult consensus_pipeline(const SampleSet &samples, const SpinPolynomial &h_f,
                                  const QubitLayout &layout, const ConsensusConfig &config);

PipelineResult per_sample_repair(const SampleSet &samples, const SpinPolynomial &h_f,
                                 const QubitLayout &layout, std::uint64_t seed);

/// Uniform i.i.d. bitstrings.
SampleSet random_baseline(std::uint64_t n_samples, int n_qubits, std::uint64_t seed);

/// Fraction of the top_k lowest-energy shots with each contact bit set.
std::vector<double> contact_polarization(const SampleSet &samples, const SpinPolynomial &h_f,
                                         const QubitLayout &layout, std::uint64_t top_k);

/// Mean of |p - 0.5| over contact qubits.
double mean_polarization(const std::vector<double> &p);

/// Share of shots whose geometry is non-backtracking and self-avoiding.
double feasibility_fraction(const SampleSet &samples, const QubitLayout &layout);

/// A uniformly random gauge-fixed non-backtracking walk (not necessarily self-avoiding).
TurnSequence random_walk(int n_residues, Rng &rng);

} // namespace tetrafold
