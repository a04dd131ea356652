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
#include <unordered_map>
#include <vector>

#include "tetrafold/bits.hpp"

namespace tetrafold {

/// Multilinear polynomial in spin variables z_q = 1 - 2 b_q (q < 64).
/// A monomial is the set of its qubits, stored as a bitmask; z_q^2 = 1 so
/// products reduce to symmetric differences.
///
/// Terms are kept sorted by mask and merged; coefficients whose magnitude
/// falls below 1e-12 of the largest one are dropped. Instances are
/// immutable once built and safe to share across threads.
class PolynomialAccumulator;

class SpinPolynomial {
  public:
    struct Term {
        std::uint64_t mask = 0;
        double coeff = 0.0;
    };

    SpinPolynomial() = default;
    explicit SpinPolynomial(int n_qubits) : n_qubits_(n_qubits) {}

    static SpinPolynomial constant(int n_qubits, double c);
    /// z_q
    static SpinPolynomial spin(int n_qubits, int qubit);
    /// b_q = (1 - z_q) / 2, or 1 - b_q when `value` is false.
    static SpinPolynomial literal(int n_qubits, int qubit, bool value);
    /// Build from unsorted, possibly repeated terms.
    static SpinPolynomial from_terms(int n_qubits, std::span<const Term> terms);

    int num_qubits() const { return n_qubits_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    int degree() const;
    double coefficient(std::uint64_t mask) const;
    double constant_term() const { return coefficient(0); }
    /// Qubits touched by any term.
    std::uint64_t support() const;

    /// Sum over terms in ascending mask order of c_S * prod_{j in S} z_j.
    double evaluate(std::uint64_t bits) const;
    double evaluate(const Bitstring &b) const;

    SpinPolynomial operator+(const SpinPolynomial &o) const;
    SpinPolynomial operator-(const SpinPolynomial &o) const;
    SpinPolynomial operator*(const SpinPolynomial &o) const;
    SpinPolynomial operator*(double s) const;
    SpinPolynomial &operator+=(const SpinPolynomial &o) { return *this = *this + o; }

    /// Exact coefficient-wise equality.
    bool operator==(const SpinPolynomial &o) const;

  private:
    friend class PolynomialAccumulator;

    int n_qubits_ = 0;
    std::vector<Term> terms_;
};

inline SpinPolynomial operator*(double s, const SpinPolynomial &p) { return p * s; }

/// Accumulates terms in a hash map; `build` merges and sorts.
class PolynomialAccumulator {
  public:
    explicit PolynomialAccumulator(int n_qubits) : n_qubits_(n_qubits) {}
    void add(std::uint64_t mask, double coeff) { acc_[mask] += coeff; }
    void add(const SpinPolynomial &p, double scale = 1.0);
    SpinPolynomial build() const;

  private:
    int n_qubits_;
    std::unordered_map<std::uint64_t, double> acc_;
};

} // namespace tetrafold
