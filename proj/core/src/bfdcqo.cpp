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

#include "tetrafold/bfdcqo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tetrafold/errors.hpp"

namespace tetrafold {

void RunConfig::validate() const {
    if (rounds < 1) {
        throw ValidationError("rounds must be at least 1");
    }
    if (n_elite < 1 || n_elite > shots) {
        throw ValidationError("elite count must lie in [1, shots]");
    }
    if (!(k_s > 0.0) || !std::isfinite(k_s)) {
        throw ValidationError("bias scale K_s must be positive");
    }
    if (!(total_time > 0.0) || !std::isfinite(total_time)) {
        throw ValidationError("total time T must be positive");
    }
    if (n_steps < 1) {
        throw ValidationError("n_steps must be at least 1");
    }
    if (!(theta_prune >= 0.0)) {
        throw ValidationError("pruning threshold must be non-negative");
    }
}

std::vector<std::uint64_t> select_elites(const SampleSet &samples, const SpinPolynomial &h,
                                         std::uint64_t n_elite) {
    if (samples.total_shots() < n_elite) {
        throw ValidationError("fewer shots than requested elites");
    }
    const auto &energies = samples.energies(h);
    std::vector<std::pair<double, std::uint64_t>> order;
    order.reserve(energies.size());
    for (const auto &[b, e] : energies) {
        order.emplace_back(e, b);
    }
    // Lexicographic bitstring order is qubit 0 first, i.e. bit-reversed words.
    std::sort(order.begin(), order.end(), [&](const auto &a, const auto &b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        const int n = samples.num_qubits();
        return Bitstring{a.second, n}.to_string() < Bitstring{b.second, n}.to_string();
    });
    std::vector<std::uint64_t> elites;
    elites.reserve(n_elite);
    for (const auto &[e, b] : order) {
        const std::uint64_t take = std::min<std::uint64_t>(samples.count(b), n_elite - elites.size());
        elites.insert(elites.end(), take, b);
        if (elites.size() == n_elite) {
            break;
        }
    }
    return elites;
}

BiasField update_bias(std::span<const std::uint64_t> elites, int n_qubits, double k_s) {
    if (elites.empty()) {
        throw ValidationError("bias update needs at least one elite");
    }
    BiasField h(static_cast<std::size_t>(n_qubits), 0.0);
    for (int j = 0; j < n_qubits; ++j) {
        long ones = 0;
        for (std::uint64_t b : elites) {
            ones += bit_of(b, j);
        }
        const double n = static_cast<double>(elites.size());
        const double mean_z = (n - 2.0 * static_cast<double>(ones)) / n;
        h[static_cast<std::size_t>(j)] = -k_s * mean_z;
    }
    return h;
}

std::vector<RoundRecord> run_bfdcqo(const SpinPolynomial &h_f, const RunConfig &config,
                                    const RoundCallback &on_round) {
    config.validate();
    const int n = h_f.num_qubits();
    check_simulable(n, config.qubit_cap);
    const auto h_f_pauli = z_poly_to_pauli(h_f);
    std::vector<RoundRecord> records;
    BiasField bias(static_cast<std::size_t>(n), 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < config.rounds; ++r) {
        RoundRecord rec;
        rec.round = r;
        rec.bias = bias;
        const auto cd = cd_term(driver(bias), h_f_pauli);
        auto state = prepare_initial(bias, config.qubit_cap);
        const auto stats =
            trotter_impulse(state, cd, config.total_time, config.n_steps, config.theta_prune);
        rec.alpha1_mid = cd.alpha1(0.5 / config.n_steps);
        rec.surviving_terms = stats.surviving_terms;
        rec.entangling_gates = stats.entangling_gates;
        rec.samples = sample(state, config.shots, derive_seed(config.seed, static_cast<std::uint64_t>(r)));
        rec.mean_energy = rec.samples.mean_energy(h_f);
        best = std::min(best, rec.samples.min_energy(h_f));
        rec.best_energy = best;
        const auto elites = select_elites(rec.samples, h_f, config.n_elite);
        const auto &energies = rec.samples.energies(h_f);
        rec.elite_energies.reserve(elites.size());
        for (std::uint64_t b : elites) {
            rec.elite_energies.push_back(energies.at(b));
        }
        bias = update_bias(elites, n, config.k_s);
        if (on_round) {
            on_round(rec);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

SampleSet all_samples(const std::vector<RoundRecord> &records) {
    if (records.empty()) {
        return SampleSet(0);
    }
    SampleSet out(records.front().samples.num_qubits());
    for (const auto &r : records) {
        out.merge(r.samples);
    }
    return out;
}

} // namespace tetrafold
