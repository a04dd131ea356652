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

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tetrafold/errors.hpp"
#include "tetrafold/lattice.hpp"

namespace tetrafold {
namespace {

struct LayoutRow {
    const char *sequence;
    int n_q, n_geom, n_contact;
};

// Published instance sizes.
const LayoutRow kLayouts[] = {
    {"IDWKKLLDAAKQIL", 46, 21, 25}, {"DAYAQWLKDGGPSSG", 53, 23, 30},
    {"LEPFSGKALCSWSIC", 53, 23, 30}, {"RPDFCLEPPYTGPCK", 53, 23, 30},
    {"AFTVTVPKDLYVVEYG", 61, 25, 36}, {"DEDTLHKHGTVEYIKE", 61, 25, 36},
};

TEST(Peptide, RejectsUnknownResidueNamingPosition) {
    try {
        Peptide p("ACDXE");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
        EXPECT_NE(std::string(e.what()).find('X'), std::string::npos);
    }
}

TEST(Peptide, RejectsShortChains) { EXPECT_THROW(Peptide("ACD"), ValidationError); }

TEST(Peptide, LowercaseIsNotAResidue) { EXPECT_THROW(Peptide("acde"), ValidationError); }

TEST(ContactPairs, KnownCounts) {
    EXPECT_EQ(contact_pairs(14).size(), 25U);
    EXPECT_EQ(contact_pairs(16).size(), 36U);
    EXPECT_TRUE(contact_pairs(5).empty());
    EXPECT_TRUE(contact_pairs(2).empty());
}

TEST(ContactPairs, ClosedFormAndOrdering) {
    for (int n = 2; n <= 30; ++n) {
        std::size_t expected = 0;
        for (int d = 5; d <= n - 1; d += 2) {
            expected += static_cast<std::size_t>(n - d);
        }
        const auto pairs = contact_pairs(n);
        EXPECT_EQ(pairs.size(), expected) << "N=" << n;
        EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
        for (const auto &p : pairs) {
            EXPECT_GE(p.j - p.i, 5);
            EXPECT_EQ((p.j - p.i) % 2, 1);
        }
    }
}

TEST(QubitLayout, MatchesKnownCounts) {
    for (const auto &row : kLayouts) {
        const auto layout = qubit_layout(Peptide(row.sequence));
        EXPECT_EQ(layout.n_qubits(), row.n_q) << row.sequence;
        EXPECT_EQ(layout.n_geom, row.n_geom) << row.sequence;
        EXPECT_EQ(layout.n_contact, row.n_contact) << row.sequence;
    }
}

TEST(QubitLayout, GeometryCountFormula) {
    for (int n = 4; n <= 16; ++n) {
        EXPECT_EQ(qubit_layout(n).n_geom, 2 * (n - 1) - 5);
    }
}

TEST(QubitLayout, DescribesQubits) {
    const auto layout = qubit_layout(7);
    EXPECT_EQ(layout.describe(0), "turn 2 hi");
    EXPECT_EQ(layout.describe(1), "turn 3 hi");
    EXPECT_EQ(layout.describe(2), "turn 3 lo");
    EXPECT_EQ(layout.describe(7), "contact 0-5");
    EXPECT_EQ(layout.describe(8), "contact 1-6");
    EXPECT_EQ(layout.pair_index(1, 6), 1);
    EXPECT_FALSE(layout.pair_index(0, 4).has_value());
}

TEST(DecodeGeometry, FourResiduesSingleBit) {
    // N = 4 leaves one free geometry bit: the high half of turn 2.
    const auto layout = qubit_layout(4);
    ASSERT_EQ(layout.n_geom, 1);
    EXPECT_EQ(decode_geometry(layout, Bitstring::parse("0")), (TurnSequence{0, 1, 0}));
    EXPECT_EQ(decode_geometry(layout, Bitstring::parse("1")), (TurnSequence{0, 1, 2}));
}

TEST(DecodeGeometry, LengthMismatchThrows) {
    const auto layout = qubit_layout(4);
    EXPECT_THROW(decode_geometry(layout, Bitstring::parse("00")), ValidationError);
}

TEST(DecodeGeometry, AllZerosIsTotal) {
    const auto layout = qubit_layout(14);
    const auto turns = decode_geometry(layout, Bitstring{0, 21});
    EXPECT_EQ(turns.size(), 13U);
    EXPECT_EQ(turns[0], kGaugeTurn0);
    EXPECT_EQ(turns[1], kGaugeTurn1);
}

TEST(DecodeGeometry, RoundTripRandom) {
    Rng rng(7);
    for (int n : {5, 9, 14, 16}) {
        const auto layout = qubit_layout(n);
        for (int trial = 0; trial < 1000; ++trial) {
            const std::uint64_t x = rng() & layout.geometry_mask();
            EXPECT_EQ(encode_geometry(layout, decode_geometry(layout, x)), x);
        }
    }
}

TEST(DecodeGeometry, BijectionOnFreeTurns) {
    const auto layout = qubit_layout(8);
    std::vector<TurnSequence> seen;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << layout.n_geom); ++x) {
        seen.push_back(decode_geometry(layout, x));
    }
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
}

TEST(EncodeGeometry, RejectsGaugeMismatch) {
    const auto layout = qubit_layout(5);
    EXPECT_THROW(encode_geometry(layout, {1, 1, 0, 2}), ValidationError);
    EXPECT_THROW(encode_geometry(layout, {0, 1, 1, 2}), ValidationError);
    EXPECT_THROW(encode_geometry(layout, {0, 1, 0}), ValidationError);
}

TEST(Positions, WorkedExamples) {
    EXPECT_EQ(turns_to_positions(TurnSequence{0, 1}),
              (Conformation{{0, 0, 0}, {1, 1, 1}, {0, 2, 2}}));
    EXPECT_EQ(turns_to_positions(TurnSequence{0, 0}),
              (Conformation{{0, 0, 0}, {1, 1, 1}, {0, 0, 0}}));
}

TEST(Positions, BacktrackReturnsToPriorBead) {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        TurnSequence t(8);
        for (auto &x : t) {
            x = static_cast<Turn>(uniform_below(rng, 4));
        }
        const auto conf = turns_to_positions(t);
        for (std::size_t k = 0; k + 1 < t.size(); ++k) {
            EXPECT_EQ(t[k] == t[k + 1], conf[k] == conf[k + 2]);
        }
    }
}

TEST(Positions, ShortNonBacktrackingWalksAvoidThemselves) {
    for (int len = 1; len <= 3; ++len) {
        std::vector<Turn> t(static_cast<std::size_t>(len), 0);
        const int total = 1 << (2 * len);
        for (int code = 0; code < total; ++code) {
            for (int k = 0; k < len; ++k) {
                t[static_cast<std::size_t>(k)] = static_cast<Turn>((code >> (2 * k)) & 3);
            }
            if (no_backtracking(t)) {
                EXPECT_TRUE(is_self_avoiding(turns_to_positions(t)));
            }
        }
    }
}

TEST(Positions, BondsAreNearestNeighbours) {
    const auto conf = turns_to_positions(TurnSequence{0, 1, 2, 3, 0, 2, 1});
    for (std::size_t k = 0; k + 1 < conf.size(); ++k) {
        EXPECT_EQ(squared_distance(conf[k], conf[k + 1]), kContactDistanceSq);
    }
}

TEST(Feasibility, Examples) {
    EXPECT_FALSE(no_backtracking(TurnSequence{0, 0}));
    // Hand oracle: (0,0,0) (1,1,1) (0,2,2) (-1,3,1) (0,4,0).
    const auto conf = turns_to_positions(TurnSequence{0, 1, 2, 3});
    EXPECT_EQ(conf.back(), (Vec3{0, 4, 0}));
    EXPECT_TRUE(is_self_avoiding(conf));
    for (int n = 2; n <= 40; ++n) {
        TurnSequence zigzag(static_cast<std::size_t>(n - 1));
        for (std::size_t k = 0; k < zigzag.size(); ++k) {
            zigzag[k] = static_cast<Turn>(k % 2);
        }
        EXPECT_TRUE(is_feasible(zigzag)) << n;
    }
}

TEST(Feasibility, HexagonClosesAtBeadSix) {
    // A six-ring: bead 6 lands on bead 0.
    const auto conf = turns_to_positions(TurnSequence{0, 1, 2, 0, 1, 2});
    EXPECT_EQ(conf[6], conf[0]);
    EXPECT_FALSE(is_self_avoiding(conf));
    EXPECT_TRUE(no_backtracking(TurnSequence{0, 1, 2, 0, 1, 2}));
}

// Folded N = 6 chain with beads 0 and 5 adjacent: the first five bonds of the ring.
const TurnSequence kFolded6{0, 1, 2, 0, 1};

TEST(StructuralEnergy, SingleContact) {
    const auto hp = InteractionMatrix::hp();
    const auto conf = turns_to_positions(kFolded6);
    ASSERT_EQ(squared_distance(conf[0], conf[5]), kContactDistanceSq);
    EXPECT_EQ(structural_energy(conf, Peptide("HPPPPH"), hp), -1.0);
    EXPECT_EQ(structural_energy(conf, Peptide("HPPPPP"), hp), 0.0);
    const auto layout = qubit_layout(6);
    EXPECT_EQ(contacts_from_geometry(conf, layout), 1U);
}

TEST(StructuralEnergy, ExtendedChainHasNoContacts) {
    const auto layout = qubit_layout(12);
    TurnSequence zigzag(11);
    for (std::size_t k = 0; k < zigzag.size(); ++k) {
        zigzag[k] = static_cast<Turn>(k % 2);
    }
    const auto conf = turns_to_positions(zigzag);
    EXPECT_EQ(contacts_from_geometry(conf, layout), 0U);
    EXPECT_EQ(structural_energy(conf, Peptide("HHHHHHHHHHHH"), InteractionMatrix::hp()), 0.0);
}

TEST(StructuralEnergy, OverlapThrows) {
    const auto conf = turns_to_positions(TurnSequence{0, 0, 1});
    EXPECT_THROW(structural_energy(conf, Peptide("HHHH"), InteractionMatrix::hp()),
                 InfeasibleConformation);
    EXPECT_THROW(contacts_from_geometry(conf, qubit_layout(4)), InfeasibleConformation);
}

TEST(StructuralEnergy, InvariantUnderLabelPermutations) {
    const auto mj = InteractionMatrix::load(TETRAFOLD_TEST_DATA_DIR "/mj_matrix.txt");
    const Peptide peptide("IDWKKLLDAA");
    const auto layout = qubit_layout(peptide);
    Rng rng(11);
    LabelPermutation perm{0, 1, 2, 3};
    int checked = 0;
    while (checked < 30) {
        const auto turns = decode_geometry(layout, rng() & layout.geometry_mask());
        if (!is_feasible(turns)) {
            continue;
        }
        ++checked;
        const double e = structural_energy(turns_to_positions(turns), peptide, mj);
        do {
            const auto moved = relabel(turns, perm);
            EXPECT_EQ(structural_energy(turns_to_positions(moved), peptide, mj), e);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST(StructuralEnergy, EqualsSumOverSetContactBits) {
    const auto mj = InteractionMatrix::load(TETRAFOLD_TEST_DATA_DIR "/mj_matrix.txt");
    const Peptide peptide("LEPFSGKALCS");
    const auto layout = qubit_layout(peptide);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << layout.n_geom); x += 97) {
        const auto turns = decode_geometry(layout, x);
        if (!is_feasible(turns)) {
            continue;
        }
        const auto conf = turns_to_positions(turns);
        const auto bits = contacts_from_geometry(conf, layout);
        double sum = 0.0;
        for (int c = 0; c < layout.n_contact; ++c) {
            if (bit_of(bits, c)) {
                const auto &p = layout.pairs[static_cast<std::size_t>(c)];
                sum += mj(peptide[p.i], peptide[p.j]);
            }
        }
        EXPECT_DOUBLE_EQ(structural_energy(conf, peptide, mj), sum);
    }
}

TEST(InteractionMatrix, HpMatrix) {
    const auto hp = InteractionMatrix::hp();
    EXPECT_EQ(hp('H', 'H'), -1.0);
    EXPECT_EQ(hp('H', 'P'), 0.0);
    EXPECT_EQ(hp('A', 'W'), 0.0);
    EXPECT_EQ(hp.max_abs(), 1.0);
}

TEST(InteractionMatrix, BundledMjIsSymmetric) {
    const auto mj = InteractionMatrix::load(TETRAFOLD_TEST_DATA_DIR "/mj_matrix.txt");
    const std::string letters(kResidueAlphabet);
    for (char a : letters) {
        for (char b : letters) {
            EXPECT_EQ(mj(a, b), mj(b, a));
        }
    }
    EXPECT_DOUBLE_EQ(mj('L', 'L'), -7.37);
    EXPECT_DOUBLE_EQ(mj('C', 'C'), -5.44);
}

TEST(InteractionMatrix, ParseRoundTrip) {
    const auto mj = InteractionMatrix::load(TETRAFOLD_TEST_DATA_DIR "/mj_matrix.txt");
    std::stringstream s;
    mj.write(s);
    const auto again = InteractionMatrix::parse(s);
    for (char a : std::string(kResidueAlphabet)) {
        for (char b : std::string(kResidueAlphabet)) {
            EXPECT_EQ(mj(a, b), again(a, b));
        }
    }
}

TEST(InteractionMatrix, RejectsAsymmetricOrShortInput) {
    std::stringstream header;
    for (char a : std::string(kResidueAlphabet)) {
        header << a << ' ';
    }
    header << '\n';
    std::stringstream s(header.str());
    for (int r = 0; r < 20; ++r) {
        for (int c = 0; c < 20; ++c) {
            s << ((r == 0 && c == 1) ? 1.0 : 0.0) << ' ';
        }
        s << '\n';
    }
    EXPECT_THROW(InteractionMatrix::parse(s), ValidationError);
    std::stringstream short_input(header.str() + "0 0 0\n");
    EXPECT_THROW(InteractionMatrix::parse(short_input), ValidationError);
}

} // namespace
} // namespace tetrafold
