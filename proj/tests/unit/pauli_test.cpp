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

#include <gtest/gtest.h>

#include <bit>
#include <sstream>

#include "oracles.hpp"
#include "tetrafold/errors.hpp"
#include "tetrafold/pauli.hpp"

namespace tetrafold {
namespace {

using testing::dense;
using testing::Dense;
using testing::max_abs_diff;
using testing::random_bias;
using testing::random_diagonal;

const Complex kI{0.0, 1.0};

TEST(PauliString, LettersRoundTrip) {
    for (const char *s : {"IXYZ", "YYYY", "IIII", "ZXZX"}) {
        EXPECT_EQ(PauliString::parse(s).letters(4), s);
    }
    EXPECT_THROW(PauliString::parse("XQ"), ValidationError);
    EXPECT_EQ(PauliString::parse("IXYZ").weight(), 3);
}

TEST(PauliString, ProductMatchesDense) {
    Rng rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const PauliString p{rng() & 15U, rng() & 15U}, q{rng() & 15U, rng() & 15U};
        const auto pr = multiply(p, q);
        EXPECT_LT(max_abs_diff(dense(p, 4) * dense(q, 4), pr.phase * dense(pr.result, 4)), 1e-12);
        const bool commute = max_abs_diff(dense(p, 4) * dense(q, 4), dense(q, 4) * dense(p, 4)) < 1e-12;
        EXPECT_EQ(p.commutes_with(q), commute);
    }
}

TEST(ZPolyToPauli, Examples) {
    const auto c = z_poly_to_pauli(SpinPolynomial::constant(3, 2.5));
    ASSERT_EQ(c.size(), 1U);
    EXPECT_EQ(c.coefficient(PauliString::parse("III")), Complex(2.5));
    const std::vector<SpinPolynomial::Term> t{{0b101, -1.0}};
    const auto zz = z_poly_to_pauli(SpinPolynomial::from_terms(3, t));
    EXPECT_EQ(zz.coefficient(PauliString::parse("ZIZ")), Complex(-1.0));
}

TEST(ZPolyToPauli, DiagonalExpectationOracle) {
    Rng rng(2);
    const int n = 8;
    const auto poly = random_diagonal(n, rng) + SpinPolynomial::constant(n, 0.75);
    const Dense m = dense(z_poly_to_pauli(poly), n);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t b = rng() & low_mask(n);
        EXPECT_NEAR(poly.evaluate(b), m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real(), 1e-12);
    }
}

TEST(Driver, Examples) {
    const auto d0 = driver(3);
    EXPECT_EQ(d0.size(), 3U);
    EXPECT_EQ(d0.coefficient(PauliString::parse("IXI")), Complex(-1.0));
    const std::vector<double> h{1.0, 0.0};
    const auto d = driver(h);
    PauliSum expect(2);
    expect.add("XI", -1.0);
    expect.add("ZI", 1.0);
    expect.add("IX", -1.0);
    EXPECT_EQ(d.terms(), expect.terms());
    const std::vector<double> h3{0.5, 0.0, -2.0};
    EXPECT_EQ(driver(h3).size(), 3U + 2U);
}

TEST(Commutator, DiagonalSumsCommute) {
    Rng rng(3);
    const auto a = z_poly_to_pauli(random_diagonal(5, rng));
    const auto b = z_poly_to_pauli(random_diagonal(5, rng));
    EXPECT_TRUE(commutator(a, b).empty());
}

TEST(Commutator, SingleQubit) {
    PauliSum x(1), z(1);
    x.add("X", -1.0);
    z.add("Z", 1.0);
    const auto c = commutator(x, z);
    ASSERT_EQ(c.size(), 1U);
    EXPECT_EQ(c.coefficient(PauliString::parse("Y")), 2.0 * kI);
}

TEST(Commutator, MatchesDenseOnRandomSums) {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        const auto a = testing::random_pauli_sum(n, 8, rng, trial % 2 == 0);
        const auto b = testing::random_pauli_sum(n, 8, rng, trial % 3 == 0);
        const Dense da = dense(a, n), db = dense(b, n);
        EXPECT_LE(max_abs_diff(dense(commutator(a, b), n), da * db - db * da), 1e-10);
        // Anti-symmetry, termwise.
        const auto ab = commutator(a, b), ba = commutator(b, a);
        ASSERT_EQ(ab.size(), ba.size());
        for (const auto &[p, c] : ab.terms()) {
            EXPECT_NEAR(std::abs(c + ba.coefficient(p)), 0.0, 1e-12);
        }
    }
}

TEST(Frobenius, MatchesDenseTrace) {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        const auto s = testing::random_pauli_sum(n, 12, rng, false);
        const double dense_norm = testing::normalized_frobenius_sq(dense(s, n));
        EXPECT_NEAR(s.frobenius_sq(), dense_norm, 1e-10 * std::max(1.0, dense_norm));
    }
}

TEST(CdTerm, SingleQubitIsY) {
    const auto cd = cd_term(driver(1), SpinPolynomial::spin(1, 0));
    ASSERT_EQ(cd.pauli.size(), 1U);
    const auto [p, c] = *cd.pauli.terms().begin();
    EXPECT_EQ(p.letters(1), "Y");
    EXPECT_EQ(c, Complex(-2.0)); // i [-X, Z] = i (2i Y)
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        EXPECT_DOUBLE_EQ(cd.alpha1(lambda), -0.25);
    }
}

TEST(CdTerm, TwoBodyTermGivesSymmetricPair) {
    const std::vector<SpinPolynomial::Term> t{{0b11, 1.0}};
    const auto hf = SpinPolynomial::from_terms(2, t);
    const auto cd = cd_term(driver(2), hf);
    ASSERT_EQ(cd.pauli.size(), 2U);
    const auto yz = cd.pauli.coefficient(PauliString::parse("YZ"));
    const auto zy = cd.pauli.coefficient(PauliString::parse("ZY"));
    EXPECT_EQ(std::abs(yz), std::abs(zy));
    EXPECT_GT(std::abs(yz), 0.0);
    const Dense hi = dense(driver(2), 2), hfd = dense(z_poly_to_pauli(hf), 2);
    EXPECT_LE(max_abs_diff(dense(cd.pauli, 2), kI * (hi * hfd - hfd * hi)), 1e-12);
}

TEST(CdTerm, FieldTermScalesLinearly) {
    for (double h : {-2.0, -0.5, 0.5, 1.0, 3.0}) {
        const auto hf = SpinPolynomial::spin(3, 1) * h;
        const auto cd = cd_term(driver(3), hf);
        ASSERT_EQ(cd.pauli.size(), 1U);
        EXPECT_DOUBLE_EQ(cd.pauli.coefficient(PauliString::parse("IYI")).real(), -2.0 * h);
    }
}

TEST(CdTerm, BiasedDriverMatchesDense) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        const auto hf = random_diagonal(n, rng);
        const auto hi = driver(random_bias(n, rng));
        const auto cd = cd_term(hi, hf);
        const Dense dhi = dense(hi, n), dhf = dense(z_poly_to_pauli(hf), n);
        const Dense c = dhi * dhf - dhf * dhi;
        EXPECT_LE(max_abs_diff(dense(cd.pauli, n), kI * c), 1e-10);
        for (const auto &[p, coeff] : cd.pauli.terms()) {
            EXPECT_EQ(std::popcount(p.x & p.z), 1) << p.letters(n); // one Y
            EXPECT_EQ(p.x & ~p.z, 0U) << p.letters(n);              // no X
            EXPECT_NEAR(coeff.imag(), 0.0, 1e-12);
        }
        ASSERT_EQ(cd.r_coeffs.size(), cd.pauli.size());
        std::size_t i = 0;
        for (const auto &[p, coeff] : cd.pauli.terms()) {
            EXPECT_EQ(cd.r_coeffs[i++], std::abs(coeff));
        }
    }
}

TEST(CdTerm, NoSingleQubitTermsOffSupport) {
    const std::vector<SpinPolynomial::Term> t{{0b0110, 0.7}, {0b0010, -0.3}};
    const auto cd = cd_term(driver(4), SpinPolynomial::from_terms(4, t));
    for (const auto &[p, c] : cd.pauli.terms()) {
        EXPECT_EQ((p.x | p.z) & 0b1001U, 0U) << p.letters(4);
    }
}

TEST(CdTerm, RejectsOffDiagonalProblem) {
    PauliSum hf(2);
    hf.add("XZ", 1.0);
    EXPECT_THROW(cd_term(driver(2), hf), ValidationError);
}

TEST(Alpha1, MatchesDenseNorms) {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        const auto hf = z_poly_to_pauli(random_diagonal(n, rng));
        const auto hi = driver(random_bias(n, rng));
        const Dense dhi = dense(hi, n), dhf = dense(hf, n);
        const Dense c = dhi * dhf - dhf * dhi;
        const double nc = testing::normalized_frobenius_sq(c);
        const double ni = testing::normalized_frobenius_sq(dhi * c - c * dhi);
        const double nf = testing::normalized_frobenius_sq(dhf * c - c * dhf);
        for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
            const double expect = -nc / ((1.0 - lambda) * ni + lambda * nf);
            const double got = alpha1(hi, hf, lambda);
            EXPECT_LE(std::abs(got - expect), 1e-9 * std::abs(expect));
            EXPECT_LE(got, 0.0);
        }
    }
}

TEST(Alpha1, DegenerateInstanceThrows) {
    const auto hf = z_poly_to_pauli(SpinPolynomial::constant(2, 1.0));
    EXPECT_THROW(alpha1(driver(2), hf, 0.5), DegenerateInstance);
    EXPECT_THROW(alpha1(driver(2), z_poly_to_pauli(SpinPolynomial::spin(2, 0)), 1.5), ValidationError);
}

TEST(PauliSum, DumpFormat) {
    PauliSum s(2);
    s.add("XY", 0.5);
    s.add("ZI", Complex(0.0, 1.0));
    std::ostringstream out;
    s.dump(out);
    EXPECT_NE(out.str().find("0.5 XY\n"), std::string::npos);
    EXPECT_NE(out.str().find("(0,1) ZI\n"), std::string::npos);
}

} // namespace
} // namespace tetrafold
