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
#include <cmath>

#include "tetrafold/errors.hpp"
#include "tetrafold/spin_polynomial.hpp"

namespace tetrafold {
namespace {

SpinPolynomial random_poly(int n, int max_degree, int n_terms, Rng &rng) {
    std::vector<SpinPolynomial::Term> terms;
    for (int t = 0; t < n_terms; ++t) {
        std::uint64_t mask = 0;
        const int deg = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_degree + 1)));
        while (std::popcount(mask) < deg) {
            mask |= std::uint64_t{1} << uniform_below(rng, static_cast<std::uint64_t>(n));
        }
        terms.push_back({mask, 2.0 * uniform01(rng) - 1.0});
    }
    return SpinPolynomial::from_terms(n, terms);
}

/// Dense oracle: value table built by summing each term over all inputs.
std::vector<double> dense_table(const SpinPolynomial &p) {
    const int n = p.num_qubits();
    std::vector<double> table(std::size_t{1} << n, 0.0);
    for (const auto &t : p.terms()) {
        for (std::uint64_t b = 0; b < table.size(); ++b) {
            double v = t.coeff;
            for (int q = 0; q < n; ++q) {
                if (bit_of(t.mask, q)) {
                    v *= bit_of(b, q) ? -1.0 : 1.0;
                }
            }
            table[b] += v;
        }
    }
    return table;
}

TEST(SpinPolynomial, EmptyEvaluatesToZero) {
    const SpinPolynomial p(4);
    EXPECT_EQ(p.evaluate(0b1010), 0.0);
    EXPECT_TRUE(p.empty());
}

TEST(SpinPolynomial, ConstantEverywhere) {
    const auto p = SpinPolynomial::constant(3, 2.5);
    for (std::uint64_t b = 0; b < 8; ++b) {
        EXPECT_EQ(p.evaluate(b), 2.5);
    }
}

TEST(SpinPolynomial, SpinConvention) {
    const auto z = SpinPolynomial::spin(2, 1);
    EXPECT_EQ(z.evaluate(0b00), 1.0);
    EXPECT_EQ(z.evaluate(0b10), -1.0);
    const auto b = SpinPolynomial::literal(2, 1, true);
    EXPECT_EQ(b.evaluate(0b00), 0.0);
    EXPECT_EQ(b.evaluate(0b10), 1.0);
    const auto nb = SpinPolynomial::literal(2, 1, false);
    EXPECT_EQ(nb.evaluate(0b00), 1.0);
    EXPECT_EQ(nb.evaluate(0b10), 0.0);
}

TEST(SpinPolynomial, MatchesDenseOracle) {
    Rng rng(5);
    const auto p = random_poly(10, 3, 60, rng);
    const auto table = dense_table(p);
    for (std::uint64_t b = 0; b < table.size(); ++b) {
        EXPECT_NEAR(p.evaluate(b), table[b], 1e-12);
    }
}

TEST(SpinPolynomial, BitstringLengthChecked) {
    const auto p = SpinPolynomial::spin(3, 0);
    EXPECT_EQ(p.evaluate(Bitstring::parse("100")), -1.0);
    EXPECT_THROW(p.evaluate(Bitstring::parse("10")), ValidationError);
}

TEST(SpinPolynomial, ProductIsPointwise) {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_poly(6, 3, 8, rng);
        const auto b = random_poly(6, 2, 8, rng);
        const auto prod = a * b;
        const auto sum = a + b;
        const auto diff = a - b;
        for (std::uint64_t x = 0; x < 64; ++x) {
            EXPECT_NEAR(prod.evaluate(x), a.evaluate(x) * b.evaluate(x), 1e-12);
            EXPECT_NEAR(sum.evaluate(x), a.evaluate(x) + b.evaluate(x), 1e-12);
            EXPECT_NEAR(diff.evaluate(x), a.evaluate(x) - b.evaluate(x), 1e-12);
        }
    }
}

TEST(SpinPolynomial, CancellationLeavesNoZeroTerms) {
    const auto z = SpinPolynomial::spin(3, 2);
    const auto zero = z - z;
    EXPECT_TRUE(zero.empty());
    EXPECT_EQ((z * z).terms().size(), 1U); // z^2 = 1
    EXPECT_EQ((z * z).constant_term(), 1.0);
}

TEST(SpinPolynomial, MergeIsCommutative) {
    Rng rng(21);
    const auto a = random_poly(8, 4, 30, rng);
    const auto b = random_poly(8, 4, 30, rng);
    EXPECT_TRUE(a + b == b + a);
}

TEST(SpinPolynomial, FromTermsMergesDuplicates) {
    const std::vector<SpinPolynomial::Term> terms{{0b11, 1.0}, {0b11, 2.0}, {0b01, -1.0}, {0b01, 1.0}};
    const auto p = SpinPolynomial::from_terms(2, terms);
    ASSERT_EQ(p.size(), 1U);
    EXPECT_EQ(p.coefficient(0b11), 3.0);
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(p.support(), 0b11U);
}

TEST(Bitstring, TextRoundTrip) {
    const auto b = Bitstring::parse("1101");
    EXPECT_EQ(b.word, 0b1011U);
    EXPECT_EQ(b.to_string(), "1101");
    EXPECT_THROW(Bitstring::parse("10a"), ValidationError);
}

} // namespace
} // namespace tetrafold
