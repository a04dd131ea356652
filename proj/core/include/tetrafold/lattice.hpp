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

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tetrafold/bits.hpp"

/// Peptides on the tetrahedral (diamond) lattice: turn encoding, bead
/// geometry, contact-pair bookkeeping and structural energies.
///
/// Conventions used throughout the library:
///  - residues, beads and turns are 0-based; turn k joins bead k to bead k+1;
///  - bond k adds s_k * a[t_k], s_k = +1 for even k and -1 for odd k, with
///    a[0]=(1,1,1), a[1]=(1,-1,-1), a[2]=(-1,1,-1), a[3]=(-1,-1,1);
///  - a turn label is 2*hi + lo over its two geometry qubits;
///  - gauge: turn 0 = 0, turn 1 = 1, and the lo bit of turn 2 is 0, so
///    turn 2 is 0 or 2 and only its hi bit is a qubit.
namespace tetrafold {

inline constexpr std::string_view kResidueAlphabet = "ACDEFGHIKLMNPQRSTVWY";

class Peptide {
  public:
    /// Throws ValidationError naming the first offending position (1-based in
    /// the message) or a chain shorter than 4 residues.
    explicit Peptide(std::string residues);

    const std::string &residues() const { return residues_; }
    int size() const { return static_cast<int>(residues_.size()); }
    char operator[](int i) const { return residues_[static_cast<std::size_t>(i)]; }

    Peptide reversed() const;

  private:
    std::string residues_;
};

/// Symmetric 20x20 contact-energy table indexed by residue letter.
class InteractionMatrix {
  public:
    InteractionMatrix();

    /// eps(H,H) = -1, everything else 0.
    static InteractionMatrix hp();

    /// Text format: optional '#' comment lines, a header of the 20 residue
    /// letters (any order), then 20 rows of 20 reals in header order.
    static InteractionMatrix parse(std::istream &in);
    static InteractionMatrix load(const std::filesystem::path &path);
    void write(std::ostream &out) const;

    double operator()(char a, char b) const;
    void set(char a, char b, double value);
    double max_abs() const;

  private:
    std::array<double, 400> eps_{};
};

using Turn = std::uint8_t;
using TurnSequence = std::vector<Turn>;
using Vec3 = std::array<int, 3>;
using Conformation = std::vector<Vec3>;

inline constexpr std::array<Vec3, 4> kBondVectors = {
    Vec3{1, 1, 1}, Vec3{1, -1, -1}, Vec3{-1, 1, -1}, Vec3{-1, -1, 1}};

inline constexpr int squared_distance(const Vec3 &a, const Vec3 &b) {
    const int dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

/// Nearest-neighbour separation on the lattice (squared).
inline constexpr int kContactDistanceSq = 3;

struct ContactPair {
    int i = 0;
    int j = 0;
    auto operator<=>(const ContactPair &) const = default;
};

/// All (i, j), i < j < n_residues, with j - i >= 5 and j - i odd, in
/// lexicographic order.
std::vector<ContactPair> contact_pairs(int n_residues);

/// Where the hi or lo half of a turn lives: a qubit, or a gauge constant.
struct GeometryBit {
    int qubit = -1; ///< -1 when gauge fixed
    bool value = false;

    bool fixed() const { return qubit < 0; }
};

struct QubitLayout {
    int n_residues = 0;
    int n_geom = 0;
    int n_contact = 0;
    std::vector<ContactPair> pairs;

    int n_qubits() const { return n_geom + n_contact; }
    int n_turns() const { return n_residues - 1; }
    int contact_qubit(int c) const { return n_geom + c; }
    std::uint64_t geometry_mask() const { return low_mask(n_geom); }
    std::uint64_t contact_mask() const { return low_mask(n_qubits()) & ~geometry_mask(); }

    GeometryBit hi_bit(int turn) const;
    GeometryBit lo_bit(int turn) const;

    /// Index of the contact pair (i, j), if eligible.
    std::optional<int> pair_index(int i, int j) const;
    /// Human readable role of a qubit, e.g. "turn 4 hi" or "contact 0-5".
    std::string describe(int qubit) const;
};

QubitLayout qubit_layout(int n_residues);
QubitLayout qubit_layout(const Peptide &peptide);

/// Gauge prefix + one turn per free bit pair. `geom_bits` holds the n_geom
/// geometry qubits in their low bits (any higher bits are ignored).
TurnSequence decode_geometry(const QubitLayout &layout, std::uint64_t geom_bits);
/// As above; throws ValidationError unless `geom_bits` has exactly n_geom bits.
TurnSequence decode_geometry(const QubitLayout &layout, const Bitstring &geom_bits);
/// Inverse of decode_geometry. Throws ValidationError if the gauge prefix
/// does not match or the length is wrong.
std::uint64_t encode_geometry(const QubitLayout &layout, const TurnSequence &turns);

/// The gauge-fixed turn prefix (turns 0, 1 and the fixed half of turn 2).
inline constexpr Turn kGaugeTurn0 = 0;
inline constexpr Turn kGaugeTurn1 = 1;

Conformation turns_to_positions(std::span<const Turn> turns);
bool is_self_avoiding(const Conformation &conf);
bool no_backtracking(std::span<const Turn> turns);
/// Non-backtracking and self-avoiding.
bool is_feasible(std::span<const Turn> turns);

/// Sum of eps over eligible pairs at nearest-neighbour distance. Throws
/// InfeasibleConformation when beads overlap.
double structural_energy(const Conformation &conf, const Peptide &peptide,
                         const InteractionMatrix &matrix);

/// Contact bits (bit c = pair c adjacent) as an n_contact-wide word.
/// Throws InfeasibleConformation when beads overlap.
std::uint64_t contacts_from_geometry(const Conformation &conf, const QubitLayout &layout);

/// Permutation of direction labels induced by a point-group element.
using LabelPermutation = std::array<Turn, 4>;
TurnSequence relabel(std::span<const Turn> turns, const LabelPermutation &perm);

} // namespace tetrafold
