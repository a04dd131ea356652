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

#include "tetrafold/statevector.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "tetrafold/errors.hpp"

namespace tetrafold {

void check_simulable(int n_qubits, int cap) {
    if (n_qubits < 0) {
        throw ValidationError("negative qubit count");
    }
    if (n_qubits > cap) {
        throw CapExceeded("hardware-scale instance, simulation refused: " +
                          std::to_string(n_qubits) + " qubits exceeds the statevector cap of " +
                          std::to_string(cap));
    }
}

StateVector::StateVector(int n_qubits, int cap) : n_qubits_(n_qubits) {
    check_simulable(n_qubits, cap);
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t b = 0; b < amps_.size(); ++b) {
        p[b] = std::norm(amps_[b]);
    }
    return p;
}

double StateVector::expectation(const PauliString &p) const {
    // <psi|P|psi> with P|b> = i^{|xz|} (-1)^{|z&b|} |b^x>.
    static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex phase = ipow[std::popcount(p.x & p.z) & 3];
    Complex s{};
    for (std::uint64_t b = 0; b < amps_.size(); ++b) {
        const double sign = (std::popcount(p.z & b) & 1) ? -1.0 : 1.0;
        s += std::conj(amps_[b ^ p.x]) * amps_[b] * sign;
    }
    return (phase * s).real();
}

double StateVector::expectation(const PauliSum &op) const {
    double s = 0.0;
    for (const auto &[p, c] : op.terms()) {
        s += c.real() * expectation(p);
    }
    return s;
}

StateVector prepare_initial(std::span<const double> h, int cap) {
    const int n = static_cast<int>(h.size());
    StateVector state(n, cap);
    // Ground vector of [[h, -1], [-1, -h]] is (1, r) / sqrt(1 + r^2) with
    // r = h + sqrt(1 + h^2), computed as 1 / (sqrt(1 + h^2) - h) when h < 0.
    std::vector<double> a0(static_cast<std::size_t>(n)), a1(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double hj = h[static_cast<std::size_t>(j)];
        const double e = std::sqrt(1.0 + hj * hj);
        const double r = hj >= 0.0 ? hj + e : 1.0 / (e - hj);
        const double norm = std::sqrt(1.0 + r * r);
        a0[static_cast<std::size_t>(j)] = 1.0 / norm;
        a1[static_cast<std::size_t>(j)] = r / norm;
    }
    auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        double v = 1.0;
        for (int j = 0; j < n; ++j) {
            v *= bit_of(b, j) ? a1[static_cast<std::size_t>(j)] : a0[static_cast<std::size_t>(j)];
        }
        amps[b] = v;
    }
    return state;
}

void apply_pauli_rotation(StateVector &state, const PauliString &p, double phi) {
    if (phi == 0.0) {
        return;
    }
    const double c = std::cos(phi), s = std::sin(phi);
    auto amps = state.amplitudes();
    if (p.x == 0) {
        const Complex plus{c, -s}, minus{c, s};
        for (std::uint64_t b = 0; b < amps.size(); ++b) {
            amps[b] *= (std::popcount(p.z & b) & 1) ? minus : plus;
        }
        return;
    }
    // -i * i^{|xz|}: the factor multiplying sin(phi) (-1)^{|z&b'|} psi[b'].
    static const Complex mi_ipow[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
    const Complex k = mi_ipow[std::popcount(p.x & p.z) & 3] * s;
    const std::uint64_t pivot = p.x & (~p.x + 1);
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if (b & pivot) {
            continue;
        }
        const std::uint64_t b2 = b ^ p.x;
        const double sign_b = (std::popcount(p.z & b) & 1) ? -1.0 : 1.0;
        const double sign_b2 = (std::popcount(p.z & b2) & 1) ? -1.0 : 1.0;
        const Complex v = amps[b], v2 = amps[b2];
        amps[b] = c * v + k * sign_b2 * v2;
        amps[b2] = c * v2 + k * sign_b * v;
    }
}

std::size_t surviving_term_count(const CDTerm &cd, double dt, double theta_prune) {
    std::size_t n = 0;
    for (double r : cd.r_coeffs) {
        if (!(std::abs(dt * r) < theta_prune)) {
            ++n;
        }
    }
    return n;
}

ImpulseStats trotter_impulse(StateVector &state, const CDTerm &cd, double total_time, int n_steps,
                             double theta_prune) {
    if (n_steps < 1 || !(total_time > 0.0) || !(theta_prune >= 0.0)) {
        throw ValidationError("impulse needs n_steps >= 1, T > 0 and theta >= 0");
    }
    const double dt = total_time / n_steps;
    ImpulseStats stats;
    stats.surviving_terms = surviving_term_count(cd, dt, theta_prune);
    if (stats.surviving_terms == 0) {
        return stats;
    }
    for (int l = 1; l <= n_steps; ++l) {
        const double lambda = (l - 0.5) / n_steps;
        const double alpha = cd.alpha1(lambda);
        std::size_t idx = 0;
        for (const auto &[p, coeff] : cd.pauli.terms()) {
            const double r = cd.r_coeffs[idx++];
            if (std::abs(dt * r) < theta_prune) {
                continue;
            }
            apply_pauli_rotation(state, p, dt * alpha * coeff.real());
            ++stats.rotations;
            if (p.weight() >= 2) {
                stats.entangling_gates += 2;
            }
        }
    }
    return stats;
}

} // namespace tetrafold
