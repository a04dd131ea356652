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

#include "tetrafold/spin_polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace tetrafold {

namespace {

constexpr double kMergeTolerance = 1e-12;

void check_qubits(int a, int b) {
    if (a != b) {
        throw ValidationError("spin polynomials over different qubit counts");
    }
}

} // namespace

SpinPolynomial SpinPolynomial::constant(int n_qubits, double c) {
    const Term t{0, c};
    return from_terms(n_qubits, std::span<const Term>(&t, 1));
}

SpinPolynomial SpinPolynomial::spin(int n_qubits, int qubit) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw ValidationError("qubit index out of range");
    }
    const Term t{std::uint64_t{1} << qubit, 1.0};
    return from_terms(n_qubits, std::span<const Term>(&t, 1));
}

SpinPolynomial SpinPolynomial::literal(int n_qubits, int qubit, bool value) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw ValidationError("qubit index out of range");
    }
    const double s = value ? -0.5 : 0.5;
    const Term t[2] = {{0, 0.5}, {std::uint64_t{1} << qubit, s}};
    return from_terms(n_qubits, t);
}

SpinPolynomial SpinPolynomial::from_terms(int n_qubits, std::span<const Term> terms) {
    if (n_qubits < 0 || n_qubits > kMaxWordQubits) {
        throw ValidationError("spin polynomial supports at most 64 qubits");
    }
    PolynomialAccumulator acc(n_qubits);
    for (const auto &t : terms) {
        if (n_qubits < 64 && (t.mask >> n_qubits) != 0) {
            throw ValidationError("term references a qubit beyond num_qubits");
        }
        acc.add(t.mask, t.coeff);
    }
    return acc.build();
}

int SpinPolynomial::degree() const {
    int d = 0;
    for (const auto &t : terms_) {
        d = std::max(d, std::popcount(t.mask));
    }
    return d;
}

double SpinPolynomial::coefficient(std::uint64_t mask) const {
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                                     [](const Term &t, std::uint64_t m) { return t.mask < m; });
    return (it != terms_.end() && it->mask == mask) ? it->coeff : 0.0;
}

std::uint64_t SpinPolynomial::support() const {
    std::uint64_t s = 0;
    for (const auto &t : terms_) {
        s |= t.mask;
    }
    return s;
}

double SpinPolynomial::evaluate(std::uint64_t bits) const {
    double e = 0.0;
    for (const auto &t : terms_) {
        e += parity_sign(t.mask, bits) > 0 ? t.coeff : -t.coeff;
    }
    return e;
}

double SpinPolynomial::evaluate(const Bitstring &b) const {
    if (b.size != n_qubits_) {
        throw ValidationError("bitstring length " + std::to_string(b.size) +
                              " does not match polynomial over " + std::to_string(n_qubits_) +
                              " qubits");
    }
    return evaluate(b.word);
}

SpinPolynomial SpinPolynomial::operator+(const SpinPolynomial &o) const {
    check_qubits(n_qubits_, o.n_qubits_);
    PolynomialAccumulator acc(n_qubits_);
    acc.add(*this);
    acc.add(o);
    return acc.build();
}

SpinPolynomial SpinPolynomial::operator-(const SpinPolynomial &o) const {
    check_qubits(n_qubits_, o.n_qubits_);
    PolynomialAccumulator acc(n_qubits_);
    acc.add(*this);
    acc.add(o, -1.0);
    return acc.build();
}

SpinPolynomial SpinPolynomial::operator*(const SpinPolynomial &o) const {
    check_qubits(n_qubits_, o.n_qubits_);
    PolynomialAccumulator acc(n_qubits_);
    for (const auto &a : terms_) {
        for (const auto &b : o.terms_) {
            acc.add(a.mask ^ b.mask, a.coeff * b.coeff);
        }
    }
    return acc.build();
}

SpinPolynomial SpinPolynomial::operator*(double s) const {
    PolynomialAccumulator acc(n_qubits_);
    acc.add(*this, s);
    return acc.build();
}

bool SpinPolynomial::operator==(const SpinPolynomial &o) const {
    if (n_qubits_ != o.n_qubits_ || terms_.size() != o.terms_.size()) {
        return false;
    }
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].mask != o.terms_[k].mask || terms_[k].coeff != o.terms_[k].coeff) {
            return false;
        }
    }
    return true;
}

void PolynomialAccumulator::add(const SpinPolynomial &p, double scale) {
    for (const auto &t : p.terms()) {
        acc_[t.mask] += scale * t.coeff;
    }
}

SpinPolynomial PolynomialAccumulator::build() const {
    double largest = 0.0;
    for (const auto &[mask, c] : acc_) {
        largest = std::max(largest, std::abs(c));
    }
    const double cutoff = kMergeTolerance * largest;
    std::vector<SpinPolynomial::Term> terms;
    terms.reserve(acc_.size());
    for (const auto &[mask, c] : acc_) {
        if (c != 0.0 && std::abs(c) > cutoff) {
            terms.push_back({mask, c});
        }
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto &a, const auto &b) { return a.mask < b.mask; });
    SpinPolynomial out(n_qubits_);
    out.terms_ = std::move(terms);
    return out;
}

} // namespace tetrafold
