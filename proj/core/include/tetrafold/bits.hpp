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

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "tetrafold/errors.hpp"

namespace tetrafold {

/// Up to 64 qubits; qubit q is bit q of the word. Bit value 1 means
/// sigma_z = -1 (spin s = 1 - 2b).
inline constexpr int kMaxWordQubits = 64;

inline constexpr std::uint64_t low_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

inline constexpr bool bit_of(std::uint64_t word, int q) { return (word >> q) & 1U; }

/// (-1)^{|S ∩ b|}: the value of prod_{j in S} (1 - 2 b_j).
inline constexpr int parity_sign(std::uint64_t subset, std::uint64_t bits) {
    return (std::popcount(subset & bits) & 1) ? -1 : 1;
}

/// Fixed-width bitstring. Text form lists qubit 0 first.
struct Bitstring {
    std::uint64_t word = 0;
    int size = 0;

    bool operator[](int q) const { return bit_of(word, q); }
    auto operator<=>(const Bitstring &) const = default;

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(size), '0');
        for (int q = 0; q < size; ++q) {
            if (bit_of(word, q)) {
                s[static_cast<std::size_t>(q)] = '1';
            }
        }
        return s;
    }

    static Bitstring parse(std::string_view text) {
        if (text.size() > static_cast<std::size_t>(kMaxWordQubits)) {
            throw ValidationError("bitstring longer than 64 qubits");
        }
        Bitstring b;
        b.size = static_cast<int>(text.size());
        for (int q = 0; q < b.size; ++q) {
            const char c = text[static_cast<std::size_t>(q)];
            if (c == '1') {
                b.word |= std::uint64_t{1} << q;
            } else if (c != '0') {
                throw ValidationError("bitstring contains a character other than 0/1");
            }
        }
        return b;
    }
};

/// splitmix64 finalizer; used to derive independent stream seeds.
inline constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix_seed(master ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
inline double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n) by rejection; portable across standard libraries.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r = rng();
    while (r >= limit) {
        r = rng();
    }
    return r % n;
}

} // namespace tetrafold
