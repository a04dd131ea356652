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

#include "tetrafold/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "tetrafold/errors.hpp"

namespace tetrafold {

namespace {

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int pc(std::uint64_t v) { return std::popcount(v); }

} // namespace

int PauliString::weight() const { return pc(x | z); }

bool PauliString::commutes_with(const PauliString &o) const {
    return ((pc(x & o.z) + pc(z & o.x)) & 1) == 0;
}

std::string PauliString::letters(int n_qubits) const {
    std::string s(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
        const bool bx = bit_of(x, q), bz = bit_of(z, q);
        s[static_cast<std::size_t>(q)] = bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }
    return s;
}

PauliString PauliString::parse(std::string_view letters) {
    if (letters.size() > static_cast<std::size_t>(kMaxWordQubits)) {
        throw ValidationError("Pauli string longer than 64 qubits");
    }
    PauliString p;
    for (std::size_t q = 0; q < letters.size(); ++q) {
        p = multiply(p, single(static_cast<int>(q), letters[q])).result;
    }
    return p;
}

PauliString PauliString::single(int qubit, char letter) {
    const std::uint64_t m = std::uint64_t{1} << qubit;
    switch (letter) {
    case 'I': return {};
    case 'X': return {m, 0};
    case 'Y': return {m, m};
    case 'Z': return {0, m};
    default: throw ValidationError(std::string("unknown Pauli letter '") + letter + "'");
    }
}

PauliProduct multiply(const PauliString &p, const PauliString &q) {
    PauliString r{p.x ^ q.x, p.z ^ q.z};
    const int e = pc(p.x & p.z) + pc(q.x & q.z) - pc(r.x & r.z) + 2 * pc(p.z & q.x);
    return {kIPow[((e % 4) + 4) % 4], r};
}

Complex PauliSum::coefficient(const PauliString &p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Complex{} : it->second;
}

void PauliSum::add(const PauliString &p, Complex c) {
    if (c == Complex{}) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) {
            terms_.erase(it);
        }
    }
}

void PauliSum::prune(double rel_tol) {
    double scale = 0.0;
    for (const auto &[p, c] : terms_) {
        scale = std::max(scale, std::abs(c));
    }
    const double cut = rel_tol * scale;
    std::erase_if(terms_, [cut](const auto &kv) { return std::abs(kv.second) <= cut; });
}

PauliSum PauliSum::operator+(const PauliSum &o) const {
    PauliSum out = *this;
    out.n_qubits_ = std::max(n_qubits_, o.n_qubits_);
    for (const auto &[p, c] : o.terms_) {
        out.add(p, c);
    }
    return out;
}

PauliSum PauliSum::operator-(const PauliSum &o) const { return *this + o * Complex{-1.0}; }

PauliSum PauliSum::operator*(const PauliSum &o) const {
    PauliSum out(std::max(n_qubits_, o.n_qubits_));
    for (const auto &[p, a] : terms_) {
        for (const auto &[q, b] : o.terms_) {
            const auto pr = multiply(p, q);
            out.add(pr.result, pr.phase * a * b);
        }
    }
    out.prune();
    return out;
}

PauliSum PauliSum::operator*(Complex s) const {
    PauliSum out(n_qubits_);
    for (const auto &[p, c] : terms_) {
        out.add(p, c * s);
    }
    return out;
}

double PauliSum::frobenius_sq() const {
    double s = 0.0;
    for (const auto &[p, c] : terms_) {
        s += std::norm(c);
    }
    return s;
}

bool PauliSum::all_real(double tol) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [tol](const auto &kv) { return std::abs(kv.second.imag()) <= tol; });
}

void PauliSum::dump(std::ostream &out) const {
    const auto old = out.precision(17);
    for (const auto &[p, c] : terms_) {
        if (c.imag() == 0.0) {
            out << c.real();
        } else {
            out << '(' << c.real() << ',' << c.imag() << ')';
        }
        out << ' ' << p.letters(n_qubits_) << '\n';
    }
    out.precision(old);
}

PauliSum z_poly_to_pauli(const SpinPolynomial &poly) {
    PauliSum out(poly.num_qubits());
    for (const auto &t : poly.terms()) {
        out.add(PauliString{0, t.mask}, t.coeff);
    }
    return out;
}

PauliSum driver(std::span<const double> h) {
    const int n = static_cast<int>(h.size());
    PauliSum out(n);
    for (int j = 0; j < n; ++j) {
        out.add(PauliString::single(j, 'X'), -1.0);
        out.add(PauliString::single(j, 'Z'), h[static_cast<std::size_t>(j)]);
    }
    return out;
}

PauliSum driver(int n_qubits) {
    const std::vector<double> zero(static_cast<std::size_t>(n_qubits), 0.0);
    return driver(zero);
}

PauliSum commutator(const PauliSum &a, const PauliSum &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ValidationError("commutator operands act on different qubit counts");
    }
    PauliSum out(a.num_qubits());
    for (const auto &[p, ca] : a.terms()) {
        for (const auto &[q, cb] : b.terms()) {
            if (!p.commutes_with(q)) {
                const auto pr = multiply(p, q);
                out.add(pr.result, 2.0 * pr.phase * ca * cb);
            }
        }
    }
    out.prune();
    return out;
}

double CDTerm::alpha1(double lambda) const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw ValidationError("schedule parameter must lie in [0, 1]");
    }
    const double den = (1.0 - lambda) * hi_norm + lambda * hf_norm;
    if (!(den > 0.0)) {
        throw DegenerateInstance("alpha1 denominator vanishes (H_i and H_f commute)");
    }
    return -c_norm / den;
}

CDTerm cd_term(const PauliSum &h_i, const PauliSum &h_f) {
    for (const auto &[p, c] : h_f.terms()) {
        if (!p.diagonal()) {
            throw ValidationError("problem Hamiltonian must be diagonal");
        }
    }
    CDTerm cd;
    const auto c = commutator(h_i, h_f);
    cd.pauli = c * Complex{0.0, 1.0};
    cd.r_coeffs.reserve(cd.pauli.size());
    for (const auto &[p, coeff] : cd.pauli.terms()) {
        cd.r_coeffs.push_back(std::abs(coeff));
    }
    cd.c_norm = c.frobenius_sq();
    cd.hi_norm = commutator(h_i, c).frobenius_sq();
    cd.hf_norm = commutator(h_f, c).frobenius_sq();
    return cd;
}

CDTerm cd_term(const PauliSum &h_i, const SpinPolynomial &h_f) {
    return cd_term(h_i, z_poly_to_pauli(h_f));
}

double alpha1(const PauliSum &h_i, const PauliSum &h_f, double lambda) {
    const auto c = commutator(h_i, h_f);
    CDTerm cd;
    cd.c_norm = c.frobenius_sq();
    cd.hi_norm = commutator(h_i, c).frobenius_sq();
    cd.hf_norm = commutator(h_f, c).frobenius_sq();
    return cd.alpha1(lambda);
}

} // namespace tetrafold
