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
#include <span>
#include <vector>

#include "tetrafold/pauli.hpp"

namespace tetrafold {

inline constexpr int kDefaultQubitCap = 26;

/// Throws CapExceeded when n_qubits is above `cap`.
void check_simulable(int n_qubits, int cap = kDefaultQubitCap);

/// Dense state over n qubits; amplitude index bit q is qubit q.
class StateVector {
  public:
    /// |0...0>. Throws CapExceeded above `cap`.
    explicit StateVector(int n_qubits, int cap = kDefaultQubitCap);

    int num_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> amplitudes() { return amps_; }
    Complex operator[](std::uint64_t b) const { return amps_[b]; }

    double norm_sq() const;
    std::vector<double> probabilities() const;
    double expectation(const PauliString &p) const;
    double expectation(const PauliSum &op) const;

  private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

/// Product of per-qubit ground states of (-X_j + h_j Z_j).
StateVector prepare_initial(std::span<const double> h, int cap = kDefaultQubitCap);

/// state <- exp(-i phi P) state.
void apply_pauli_rotation(StateVector &state, const PauliString &p, double phi);

struct ImpulseStats {
    std::size_t surviving_terms = 0; ///< per step
    std::size_t rotations = 0;       ///< over all steps
    std::size_t entangling_gates = 0;
};

/// Trotterized evolution under alpha1(lambda_l) * cd.pauli for n_steps steps of
/// dt = total_time / n_steps, lambda_l at each step's midpoint. Terms with
/// |dt * r| < theta_prune are skipped.
ImpulseStats trotter_impulse(StateVector &state, const CDTerm &cd, double total_time, int n_steps,
                             double theta_prune);

/// Terms kept at a given threshold, without touching a state.
std::size_t surviving_term_count(const CDTerm &cd, double dt, double theta_prune);

} // namespace tetrafold
