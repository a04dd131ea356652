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

// Dense-matrix and brute-force oracles shared by the tests.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tetrafold/bits.hpp"
#include "tetrafold/pauli.hpp"
#include "tetrafold/spin_polynomial.hpp"

namespace tetrafold::testing {

using Dense = Eigen::MatrixXcd;

inline Dense single_qubit(char letter) {
    Dense m(2, 2);
    switch (letter) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
    }
    return m;
}

/// Kronecker product with qubit 0 as the least significant index bit.
inline Dense dense(const PauliString &p, int n) {
    const auto letters = p.letters(n);
    Dense out = Dense::Identity(1, 1);
    for (int q = n - 1; q >= 0; --q) {
        const Dense s = single_qubit(letters[static_cast<std::size_t>(q)]);
        Dense next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                next.block(i * 2, j * 2, 2, 2) = out(i, j) * s;
            }
        }
        out = next;
    }
    return out;
}

inline Dense dense(const PauliSum &s, int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    Dense out = Dense::Zero(d, d);
    for (const auto &[p, c] : s.terms()) {
        out += c * dense(p, n);
    }
    return out;
}

/// Frobenius norm squared normalized by the dimension.
inline double normalized_frobenius_sq(const Dense &m) {
    return m.squaredNorm() / static_cast<double>(m.rows());
}

/// Random Pauli sum with real or complex coefficients.
inline PauliSum random_pauli_sum(int n, int n_terms, Rng &rng, bool hermitian = true) {
    PauliSum s(n);
    for (int t = 0; t < n_terms; ++t) {
        PauliString p{rng() & low_mask(n), rng() & low_mask(n)};
        const double re = 2.0 * uniform01(rng) - 1.0;
        const double im = hermitian ? 0.0 : 2.0 * uniform01(rng) - 1.0;
        s.add(p, Complex(re, im));
    }
    return s;
}

/// Random diagonal problem Hamiltonian on n qubits.
inline SpinPolynomial random_diagonal(int n, Rng &rng) {
    std::vector<SpinPolynomial::Term> terms;
    for (int t = 0; t < 6; ++t) {
        terms.push_back({(rng() & low_mask(n)) | 1U, 2.0 * uniform01(rng) - 1.0});
    }
    return SpinPolynomial::from_terms(n, terms);
}

inline std::vector<double> random_bias(int n, Rng &rng) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (auto &v : h) {
        v = 4.0 * uniform01(rng) - 2.0;
    }
    return h;
}

inline double max_abs_diff(const Dense &a, const Dense &b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace tetrafold::testing
