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
#include <functional>
#include <vector>

#include "tetrafold/pauli.hpp"
#include "tetrafold/samples.hpp"
#include "tetrafold/spin_polynomial.hpp"

namespace tetrafold {

using BiasField = std::vector<double>;

/// Named pruning thresholds (`prune.high`, `prune.low`) on |dt * r|. Sized
/// for MJ instances at N = 14..16 with default penalties: the high preset
/// leaves roughly 1,300-1,800 entangling gates per step, the low preset only
/// drops the weakest single-body strings.
inline constexpr double kPruneHigh = 200.0;
inline constexpr double kPruneLow = 10.0;

struct RunConfig {
    int rounds = 10;
    std::uint64_t shots = 5000;
    std::uint64_t n_elite = 100;
    double k_s = 2.0;
    double total_time = 1.0;
    int n_steps = 1;
    double theta_prune = 0.0;
    std::uint64_t seed = 0;
    int qubit_cap = kDefaultQubitCap;

    void validate() const;
};

struct RoundRecord {
    int round = 0;
    BiasField bias;
    SampleSet samples;
    std::vector<double> elite_energies;
    double mean_energy = 0.0;
    double best_energy = 0.0; ///< running minimum over this and earlier rounds
    double alpha1_mid = 0.0;  ///< alpha1 at the first step's schedule point
    std::size_t surviving_terms = 0;
    std::size_t entangling_gates = 0;
};

/// The n_elite lowest-energy shots, with multiplicity, ordered by
/// (energy, bitstring).
std::vector<std::uint64_t> select_elites(const SampleSet &samples, const SpinPolynomial &h,
                                         std::uint64_t n_elite);

/// h_j = -k_s * mean over elites of (1 - 2 b_j).
BiasField update_bias(std::span<const std::uint64_t> elites, int n_qubits, double k_s);

using RoundCallback = std::function<void(const RoundRecord &)>;

std::vector<RoundRecord> run_bfdcqo(const SpinPolynomial &h_f, const RunConfig &config,
                                    const RoundCallback &on_round = {});

/// Every shot from every round.
SampleSet all_samples(const std::vector<RoundRecord> &records);

} // namespace tetrafold
