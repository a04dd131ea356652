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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetrafold/spin_polynomial.hpp"

namespace tetrafold {

using Complex = std::complex<double>;

/// A Pauli string in symplectic form, P = i^{|x & z|} X^x Z^z, so that a
/// qubit with both bits set carries Y.
struct PauliString {
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    auto operator<=>(const PauliString &) const = default;

    int weight() const;
    bool diagonal() const { return x == 0; }
    bool commutes_with(const PauliString &o) const;

    /// One letter per qubit, qubit 0 first.
    std::string letters(int n_qubits) const;
    static PauliString parse(std::string_view letters);
    static PauliString single(int qubit, char letter);
};

/// P * Q = phase * R, with phase a power of i.
struct PauliProduct {
    Complex phase;
    PauliString result;
};
PauliProduct multiply(const PauliString &p, const PauliString &q);

/// Merged linear combination of Pauli strings.
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

    int num_qubits() const { return n_qubits_; }
    const std::map<PauliString, Complex> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    Complex coefficient(const PauliString &p) const;

    void add(const PauliString &p, Complex c);
    void add(std::string_view letters, Complex c) { add(PauliString::parse(letters), c); }
    /// Drop terms with |c| <= rel_tol * max|c|.
    void prune(double rel_tol = 1e-12);

    PauliSum operator+(const PauliSum &o) const;
    PauliSum operator-(const PauliSum &o) const;
    PauliSum operator*(const PauliSum &o) const;
    PauliSum operator*(Complex s) const;

    /// Sum of |c|^2; equals tr(M^dagger M) / 2^n.
    double frobenius_sq() const;
    bool all_real(double tol = 1e-12) const;

    /// Lines "coeff letters", real part only when the coefficient is real.
    void dump(std::ostream &out) const;

  private:
    int n_qubits_ = 0;
    std::map<PauliString, Complex> terms_;
};

PauliSum z_poly_to_pauli(const SpinPolynomial &poly);

/// sum_j (-X_j + h_j Z_j)
PauliSum driver(std::span<const double> h);
PauliSum driver(int n_qubits);

/// [A, B]; only anticommuting pairs contribute.
PauliSum commutator(const PauliSum &a, const PauliSum &b);

/// First-order counterdiabatic term. `pauli` holds i [H_i, H_f]; the squared
/// norms of C = [H_i, H_f] and of its nested commutators fix alpha1.
struct CDTerm {
    PauliSum pauli;
    std::vector<double> r_coeffs; ///< |coefficient| per term, in `pauli` order
    double c_norm = 0.0;          ///< ||[H_i, H_f]||^2
    double hi_norm = 0.0;         ///< ||[H_i, C]||^2
    double hf_norm = 0.0;         ///< ||[H_f, C]||^2

    /// Throws DegenerateInstance when the denominator vanishes.
    double alpha1(double lambda) const;
};

CDTerm cd_term(const PauliSum &h_i, const SpinPolynomial &h_f);
/// Throws ValidationError if `h_f` has an off-diagonal string.
CDTerm cd_term(const PauliSum &h_i, const PauliSum &h_f);

double alpha1(const PauliSum &h_i, const PauliSum &h_f, double lambda);

} // namespace tetrafold
