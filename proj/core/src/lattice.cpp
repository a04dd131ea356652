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

#include "tetrafold/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace tetrafold {

namespace {

int residue_index(char c) {
    const auto pos = kResidueAlphabet.find(c);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

} // namespace

Peptide::Peptide(std::string residues) : residues_(std::move(residues)) {
    for (std::size_t k = 0; k < residues_.size(); ++k) {
        if (residue_index(residues_[k]) < 0) {
            std::ostringstream msg;
            msg << "invalid residue '" << residues_[k] << "' at position " << (k + 1)
                << " (expected one of " << kResidueAlphabet << ")";
            throw ValidationError(msg.str());
        }
    }
    if (residues_.size() < 4) {
        throw ValidationError("peptide needs at least 4 residues, got " +
                              std::to_string(residues_.size()));
    }
}

Peptide Peptide::reversed() const {
    return Peptide(std::string(residues_.rbegin(), residues_.rend()));
}

InteractionMatrix::InteractionMatrix() { eps_.fill(0.0); }

InteractionMatrix InteractionMatrix::hp() {
    InteractionMatrix m;
    m.set('H', 'H', -1.0);
    return m;
}

double InteractionMatrix::operator()(char a, char b) const {
    const int ia = residue_index(a), ib = residue_index(b);
    if (ia < 0 || ib < 0) {
        throw ValidationError(std::string("unknown residue in matrix lookup: ") + a + b);
    }
    return eps_[static_cast<std::size_t>(ia * 20 + ib)];
}

void InteractionMatrix::set(char a, char b, double value) {
    const int ia = residue_index(a), ib = residue_index(b);
    if (ia < 0 || ib < 0) {
        throw ValidationError(std::string("unknown residue in matrix: ") + a + b);
    }
    if (!std::isfinite(value)) {
        throw ValidationError("non-finite contact energy");
    }
    eps_[static_cast<std::size_t>(ia * 20 + ib)] = value;
    eps_[static_cast<std::size_t>(ib * 20 + ia)] = value;
}

double InteractionMatrix::max_abs() const {
    double m = 0.0;
    for (double e : eps_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

InteractionMatrix InteractionMatrix::parse(std::istream &in) {
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        rows.push_back(line);
    }
    if (rows.size() != 21) {
        throw ValidationError("matrix file needs a header and 20 rows, found " +
                              std::to_string(rows.size()) + " non-comment lines");
    }
    std::vector<char> header;
    {
        std::istringstream hs(rows[0]);
        std::string tok;
        while (hs >> tok) {
            if (tok.size() != 1 || residue_index(tok[0]) < 0) {
                throw ValidationError("bad residue letter in matrix header: " + tok);
            }
            header.push_back(tok[0]);
        }
    }
    if (header.size() != 20 || std::set<char>(header.begin(), header.end()).size() != 20) {
        throw ValidationError("matrix header must list the 20 residue letters once each");
    }
    std::array<double, 400> raw{};
    for (int r = 0; r < 20; ++r) {
        std::istringstream rs(rows[static_cast<std::size_t>(r + 1)]);
        for (int c = 0; c < 20; ++c) {
            double v = 0.0;
            if (!(rs >> v) || !std::isfinite(v)) {
                throw ValidationError("matrix row " + std::to_string(r + 1) +
                                      " needs 20 finite numbers");
            }
            raw[static_cast<std::size_t>(r * 20 + c)] = v;
        }
        std::string extra;
        if (rs >> extra) {
            throw ValidationError("matrix row " + std::to_string(r + 1) + " has extra entries");
        }
    }
    InteractionMatrix m;
    for (int r = 0; r < 20; ++r) {
        for (int c = r; c < 20; ++c) {
            const double a = raw[static_cast<std::size_t>(r * 20 + c)];
            const double b = raw[static_cast<std::size_t>(c * 20 + r)];
            if (a != b) {
                std::ostringstream msg;
                msg << "matrix is not symmetric at (" << header[static_cast<std::size_t>(r)]
                    << "," << header[static_cast<std::size_t>(c)] << "): " << a << " vs " << b;
                throw ValidationError(msg.str());
            }
            m.set(header[static_cast<std::size_t>(r)], header[static_cast<std::size_t>(c)], a);
        }
    }
    return m;
}

InteractionMatrix InteractionMatrix::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open matrix file " + path.string());
    }
    return parse(in);
}

void InteractionMatrix::write(std::ostream &out) const {
    for (std::size_t k = 0; k < kResidueAlphabet.size(); ++k) {
        out << (k ? " " : "") << kResidueAlphabet[k];
    }
    out << '\n' << std::setprecision(17);
    for (int r = 0; r < 20; ++r) {
        for (int c = 0; c < 20; ++c) {
            out << (c ? " " : "") << eps_[static_cast<std::size_t>(r * 20 + c)];
        }
        out << '\n';
    }
}

std::vector<ContactPair> contact_pairs(int n_residues) {
    std::vector<ContactPair> pairs;
    for (int i = 0; i < n_residues; ++i) {
        for (int j = i + 5; j < n_residues; j += 2) {
            pairs.push_back({i, j});
        }
    }
    return pairs;
}

QubitLayout qubit_layout(int n_residues) {
    if (n_residues < 4) {
        throw ValidationError("layout needs at least 4 residues");
    }
    QubitLayout layout;
    layout.n_residues = n_residues;
    layout.n_geom = 2 * (n_residues - 1) - 5;
    layout.pairs = contact_pairs(n_residues);
    layout.n_contact = static_cast<int>(layout.pairs.size());
    if (layout.n_qubits() > kMaxWordQubits) {
        throw ValidationError("instance needs " + std::to_string(layout.n_qubits()) +
                              " qubits; at most 64 are supported");
    }
    return layout;
}

QubitLayout qubit_layout(const Peptide &peptide) { return qubit_layout(peptide.size()); }

GeometryBit QubitLayout::hi_bit(int turn) const {
    switch (turn) {
    case 0:
        return {-1, (kGaugeTurn0 >> 1) != 0};
    case 1:
        return {-1, (kGaugeTurn1 >> 1) != 0};
    case 2:
        return {0, false};
    default:
        return {1 + 2 * (turn - 3), false};
    }
}

GeometryBit QubitLayout::lo_bit(int turn) const {
    switch (turn) {
    case 0:
        return {-1, (kGaugeTurn0 & 1) != 0};
    case 1:
        return {-1, (kGaugeTurn1 & 1) != 0};
    case 2:
        return {-1, false};
    default:
        return {2 + 2 * (turn - 3), false};
    }
}

std::optional<int> QubitLayout::pair_index(int i, int j) const {
    const auto it = std::lower_bound(pairs.begin(), pairs.end(), ContactPair{i, j});
    if (it == pairs.end() || *it != ContactPair{i, j}) {
        return std::nullopt;
    }
    return static_cast<int>(it - pairs.begin());
}

std::string QubitLayout::describe(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits()) {
        return "out of range";
    }
    if (qubit >= n_geom) {
        const auto &p = pairs[static_cast<std::size_t>(qubit - n_geom)];
        return "contact " + std::to_string(p.i) + "-" + std::to_string(p.j);
    }
    if (qubit == 0) {
        return "turn 2 hi";
    }
    const int turn = 3 + (qubit - 1) / 2;
    return "turn " + std::to_string(turn) + ((qubit - 1) % 2 == 0 ? " hi" : " lo");
}

namespace {

bool read_bit(const GeometryBit &b, std::uint64_t bits) {
    return b.fixed() ? b.value : bit_of(bits, b.qubit);
}

} // namespace

TurnSequence decode_geometry(const QubitLayout &layout, std::uint64_t geom_bits) {
    TurnSequence turns(static_cast<std::size_t>(layout.n_turns()));
    for (int k = 0; k < layout.n_turns(); ++k) {
        const int hi = read_bit(layout.hi_bit(k), geom_bits);
        const int lo = read_bit(layout.lo_bit(k), geom_bits);
        turns[static_cast<std::size_t>(k)] = static_cast<Turn>(2 * hi + lo);
    }
    return turns;
}

TurnSequence decode_geometry(const QubitLayout &layout, const Bitstring &geom_bits) {
    if (geom_bits.size != layout.n_geom) {
        throw ValidationError("geometry bitstring has " + std::to_string(geom_bits.size) +
                              " bits; layout expects " + std::to_string(layout.n_geom));
    }
    return decode_geometry(layout, geom_bits.word);
}

std::uint64_t encode_geometry(const QubitLayout &layout, const TurnSequence &turns) {
    if (static_cast<int>(turns.size()) != layout.n_turns()) {
        throw ValidationError("turn sequence has " + std::to_string(turns.size()) +
                              " turns; layout expects " + std::to_string(layout.n_turns()));
    }
    std::uint64_t bits = 0;
    for (int k = 0; k < layout.n_turns(); ++k) {
        const Turn t = turns[static_cast<std::size_t>(k)];
        if (t > 3) {
            throw ValidationError("turn label out of range");
        }
        const std::array<std::pair<GeometryBit, bool>, 2> halves = {
            std::pair{layout.hi_bit(k), (t >> 1) != 0}, std::pair{layout.lo_bit(k), (t & 1) != 0}};
        for (const auto &[where, value] : halves) {
            if (where.fixed()) {
                if (where.value != value) {
                    throw ValidationError("turn " + std::to_string(k) +
                                          " violates the gauge prefix");
                }
            } else if (value) {
                bits |= std::uint64_t{1} << where.qubit;
            }
        }
    }
    return bits;
}

Conformation turns_to_positions(std::span<const Turn> turns) {
    Conformation pos;
    pos.reserve(turns.size() + 1);
    Vec3 cur{0, 0, 0};
    pos.push_back(cur);
    for (std::size_t k = 0; k < turns.size(); ++k) {
        const int s = (k % 2 == 0) ? 1 : -1;
        const Vec3 &a = kBondVectors[turns[k]];
        for (int c = 0; c < 3; ++c) {
            cur[static_cast<std::size_t>(c)] += s * a[static_cast<std::size_t>(c)];
        }
        pos.push_back(cur);
    }
    return pos;
}

bool is_self_avoiding(const Conformation &conf) {
    std::vector<Vec3> sorted(conf);
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

bool no_backtracking(std::span<const Turn> turns) {
    return std::adjacent_find(turns.begin(), turns.end()) == turns.end();
}

bool is_feasible(std::span<const Turn> turns) {
    return no_backtracking(turns) && is_self_avoiding(turns_to_positions(turns));
}

std::uint64_t contacts_from_geometry(const Conformation &conf, const QubitLayout &layout) {
    if (!is_self_avoiding(conf)) {
        throw InfeasibleConformation("conformation has overlapping beads");
    }
    std::uint64_t bits = 0;
    for (std::size_t c = 0; c < layout.pairs.size(); ++c) {
        const auto &p = layout.pairs[c];
        if (squared_distance(conf[static_cast<std::size_t>(p.i)],
                             conf[static_cast<std::size_t>(p.j)]) == kContactDistanceSq) {
            bits |= std::uint64_t{1} << c;
        }
    }
    return bits;
}

double structural_energy(const Conformation &conf, const Peptide &peptide,
                         const InteractionMatrix &matrix) {
    if (static_cast<int>(conf.size()) != peptide.size()) {
        throw ValidationError("conformation and peptide lengths differ");
    }
    if (!is_self_avoiding(conf)) {
        throw InfeasibleConformation("conformation has overlapping beads");
    }
    double energy = 0.0;
    for (const auto &p : contact_pairs(peptide.size())) {
        if (squared_distance(conf[static_cast<std::size_t>(p.i)],
                             conf[static_cast<std::size_t>(p.j)]) == kContactDistanceSq) {
            energy += matrix(peptide[p.i], peptide[p.j]);
        }
    }
    return energy;
}

TurnSequence relabel(std::span<const Turn> turns, const LabelPermutation &perm) {
    TurnSequence out(turns.size());
    std::transform(turns.begin(), turns.end(), out.begin(), [&](Turn t) { return perm[t]; });
    return out;
}

} // namespace tetrafold
