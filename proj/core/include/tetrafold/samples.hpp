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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "tetrafold/spin_polynomial.hpp"
#include "tetrafold/statevector.hpp"

namespace tetrafold {

/// Measurement counts over bitstrings of a fixed width.
class SampleSet {
  public:
    SampleSet() = default;
    explicit SampleSet(int n_qubits) : n_qubits_(n_qubits) {}

    int num_qubits() const { return n_qubits_; }
    const std::map<std::uint64_t, std::uint64_t> &counts() const { return counts_; }
    std::uint64_t total_shots() const { return total_; }
    bool empty() const { return total_ == 0; }
    std::uint64_t count(std::uint64_t bits) const;

    void add(std::uint64_t bits, std::uint64_t count = 1);
    void merge(const SampleSet &other);

    /// Energies of every observed bitstring under `h`, computed once.
    const std::map<std::uint64_t, double> &energies(const SpinPolynomial &h) const;
    bool has_energies() const { return energies_.has_value(); }
    double mean_energy(const SpinPolynomial &h) const;
    double min_energy(const SpinPolynomial &h) const;

    /// Rows "bitstring,count,energy"; energy column empty when not computed.
    void write_csv(std::ostream &out) const;
    void save_csv(const std::filesystem::path &path) const;
    static SampleSet read_csv(std::istream &in);
    static SampleSet load_csv(const std::filesystem::path &path);

  private:
    int n_qubits_ = 0;
    std::uint64_t total_ = 0;
    std::map<std::uint64_t, std::uint64_t> counts_;
    mutable std::optional<std::map<std::uint64_t, double>> energies_;
};

/// n_shots independent draws from |amplitude|^2.
SampleSet sample(const StateVector &state, std::uint64_t n_shots, std::uint64_t seed);

} // namespace tetrafold
