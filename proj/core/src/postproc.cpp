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

#include "tetrafold/postproc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "tetrafold/bfdcqo.hpp"
#include "tetrafold/errors.hpp"

namespace tetrafold {

namespace {

constexpr int kMaxComponentBits = 24;

/// Energy changes of single-bit flips via per-qubit term lists.
class FlipEvaluator {
  public:
    explicit FlipEvaluator(const SpinPolynomial &h) : h_(h), by_qubit_(static_cast<std::size_t>(h.num_qubits())) {
        const auto &terms = h.terms();
        for (std::size_t t = 0; t < terms.size(); ++t) {
            for (std::uint64_t m = terms[t].mask; m != 0; m &= m - 1) {
                by_qubit_[static_cast<std::size_t>(std::countr_zero(m))].push_back(t);
            }
        }
    }

    /// E(bits ^ (1 << q)) - E(bits)
    double delta(std::uint64_t bits, int q) const {
        double d = 0.0;
        const auto &terms = h_.terms();
        for (std::size_t t : by_qubit_[static_cast<std::size_t>(q)]) {
            d += terms[t].coeff * parity_sign(terms[t].mask, bits);
        }
        return -2.0 * d;
    }

  private:
    const SpinPolynomial &h_;
    std::vector<std::vector<std::size_t>> by_qubit_;
};

bool geometry_ok(const QubitLayout &layout, std::uint64_t bits) {
    return geometry_feasible(layout, bits & layout.geometry_mask());
}

std::uint64_t top_k_cut(const SampleSet &samples, std::uint64_t k) {
    return std::min<std::uint64_t>(k, samples.total_shots());
}

} // namespace

void ConsensusConfig::validate() const {
    if (k < 1 || pool_size < 1) {
        throw ValidationError("consensus needs k >= 1 and pool_size >= 1");
    }
}

std::uint64_t StageDistribution::total() const {
    std::uint64_t n = 0;
    for (const auto &[e, c] : histogram) {
        n += c;
    }
    return n;
}

double StageDistribution::mean() const {
    double s = 0.0;
    std::uint64_t n = 0;
    for (const auto &[e, c] : histogram) {
        s += e * static_cast<double>(c);
        n += c;
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(n);
}

double StageDistribution::min() const {
    return histogram.empty() ? std::numeric_limits<double>::quiet_NaN() : histogram.begin()->first;
}

double PipelineResult::e_avg() const {
    if (summary_stage >= stages.size()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return stages[summary_stage].mean();
}

const StageDistribution *PipelineResult::stage(const std::string &name) const {
    for (const auto &s : stages) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

std::uint64_t repair_contacts_bits(std::uint64_t geometry_bits, const SpinPolynomial &h_f,
                                   const QubitLayout &layout) {
    const std::uint64_t gmask = layout.geometry_mask();
    geometry_bits &= gmask;
    if (!geometry_feasible(layout, geometry_bits)) {
        throw InfeasibleConformation("contact repair needs a feasible geometry");
    }
    // Restrict to the contact qubits: each term becomes c * sign(geometry part) * Z_{contact part}.
    std::map<std::uint64_t, double> reduced;
    for (const auto &t : h_f.terms()) {
        const std::uint64_t cpart = t.mask & ~gmask;
        if (cpart != 0) {
            reduced[cpart >> layout.n_geom] += t.coeff * parity_sign(t.mask & gmask, geometry_bits);
        }
    }
    // Union-find over contacts joined by a shared term.
    std::vector<int> parent(static_cast<std::size_t>(layout.n_contact));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
        }
        return a;
    };
    for (const auto &[m, c] : reduced) {
        const int first = std::countr_zero(m);
        for (std::uint64_t r = m & (m - 1); r != 0; r &= r - 1) {
            parent[static_cast<std::size_t>(find(std::countr_zero(r)))] = find(first);
        }
    }
    std::map<int, std::uint64_t> components;
    for (int c = 0; c < layout.n_contact; ++c) {
        components[find(c)] |= std::uint64_t{1} << c;
    }

    std::uint64_t best_bits = 0;
    for (const auto &[root, comp] : components) {
        std::vector<std::pair<std::uint64_t, double>> local;
        for (const auto &[m, c] : reduced) {
            if ((m & comp) != 0) {
                local.emplace_back(m, c);
            }
        }
        const int width = std::popcount(comp);
        if (width > kMaxComponentBits) {
            throw ValidationError("contact coupling component too large for exhaustive repair");
        }
        std::vector<int> qubits;
        for (std::uint64_t r = comp; r != 0; r &= r - 1) {
            qubits.push_back(std::countr_zero(r));
        }
        double best_e = std::numeric_limits<double>::infinity();
        std::uint64_t best_assign = 0;
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << width); ++a) {
            std::uint64_t assign = 0;
            for (int i = 0; i < width; ++i) {
                if (bit_of(a, i)) {
                    assign |= std::uint64_t{1} << qubits[static_cast<std::size_t>(i)];
                }
            }
            double e = 0.0;
            for (const auto &[m, c] : local) {
                e += c * parity_sign(m, assign);
            }
            if (e < best_e) {
                best_e = e;
                best_assign = assign;
            }
        }
        best_bits |= best_assign;
    }
    return best_bits;
}

std::uint64_t repair_contacts(const TurnSequence &geometry, const SpinPolynomial &h_f,
                              const QubitLayout &layout) {
    if (!is_feasible(geometry)) {
        throw InfeasibleConformation("contact repair needs a feasible geometry");
    }
    return repair_contacts_bits(encode_geometry(layout, geometry), h_f, layout);
}

std::uint64_t greedy_descent(std::uint64_t bits, const SpinPolynomial &h_f,
                             const QubitLayout &layout, std::uint64_t seed,
                             std::vector<double> *trace) {
    const FlipEvaluator flips(h_f);
    const int n = layout.n_qubits();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    if (trace != nullptr) {
        trace->assign(1, h_f.evaluate(bits));
    }
    bool improved = true;
    while (improved) {
        improved = false;
        for (int q : order) {
            const double d = flips.delta(bits, q);
            if (d >= 0.0) {
                continue;
            }
            const std::uint64_t next = bits ^ (std::uint64_t{1} << q);
            if (!assignment_feasible(layout, next)) {
                continue;
            }
            bits = next;
            if (trace != nullptr) {
                trace->push_back(h_f.evaluate(bits));
            }
            improved = true;
        }
    }
    return bits;
}

double feasibility_fraction(const SampleSet &samples, const QubitLayout &layout) {
    if (samples.empty()) {
        return 0.0;
    }
    std::uint64_t ok = 0;
    for (const auto &[b, c] : samples.counts()) {
        if (geometry_ok(layout, b)) {
            ok += c;
        }
    }
    return static_cast<double>(ok) / static_cast<double>(samples.total_shots());
}

std::vector<double> contact_polarization(const SampleSet &samples, const SpinPolynomial &h_f,
                                         const QubitLayout &layout, std::uint64_t top_k) {
    std::vector<double> p(static_cast<std::size_t>(layout.n_contact), 0.0);
    const std::uint64_t k = top_k_cut(samples, top_k);
    if (k == 0) {
        return p;
    }
    const auto top = select_elites(samples, h_f, k);
    for (std::uint64_t b : top) {
        for (int c = 0; c < layout.n_contact; ++c) {
            p[static_cast<std::size_t>(c)] += bit_of(b, layout.contact_qubit(c));
        }
    }
    for (auto &v : p) {
        v /= static_cast<double>(top.size());
    }
    return p;
}

double mean_polarization(const std::vector<double> &p) {
    if (p.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (double v : p) {
        s += std::abs(v - 0.5);
    }
    return s / static_cast<double>(p.size());
}

TurnSequence random_walk(int n_residues, Rng &rng) {
    TurnSequence t(static_cast<std::size_t>(n_residues - 1));
    t[0] = kGaugeTurn0;
    if (t.size() > 1) {
        t[1] = kGaugeTurn1;
    }
    if (t.size() > 2) {
        t[2] = static_cast<Turn>(2 * uniform_below(rng, 2)); // low half fixed by the gauge
    }
    for (std::size_t k = 3; k < t.size(); ++k) {
        const auto r = static_cast<Turn>(uniform_below(rng, 3));
        t[k] = r >= t[k - 1] ? static_cast<Turn>(r + 1) : r;
    }
    return t;
}

PipelineResult consensus_pipeline(const SampleSet &samples, const SpinPolynomial &h_f,
                                  const QubitLayout &layout, const ConsensusConfig &config) {
    config.validate();
    if (samples.empty()) {
        throw ValidationError("consensus pipeline needs at least one sample");
    }
    PipelineResult res;
    res.pipeline = "consensus";
    res.n_qubits = layout.n_qubits();
    res.feasibility_fraction = feasibility_fraction(samples, layout);

    // (1) top-k shots by raw energy.
    const auto top = select_elites(samples, h_f, top_k_cut(samples, config.k));
    const auto &energies = samples.energies(h_f);
    StageDistribution raw{"top_k", {}};
    for (std::uint64_t b : top) {
        raw.add(energies.at(b));
    }

    // (2) majority vote per contact qubit; <sigma_z> = 0 rounds to 0.
    std::uint64_t consensus = 0;
    res.polarization.assign(static_cast<std::size_t>(layout.n_contact), 0.0);
    for (int c = 0; c < layout.n_contact; ++c) {
        long ones = 0;
        for (std::uint64_t b : top) {
            ones += bit_of(b, layout.contact_qubit(c));
        }
        const double n = static_cast<double>(top.size());
        res.polarization[static_cast<std::size_t>(c)] = static_cast<double>(ones) / n;
        const double mean_z = (n - 2.0 * static_cast<double>(ones)) / n;
        if (mean_z < 0.0) {
            consensus |= std::uint64_t{1} << c;
        }
    }

    // (3) geometry pool: sampled feasible geometries by best sampled energy, then random walks.
    std::map<std::uint64_t, double> sampled;
    for (const auto &[b, e] : energies) {
        const std::uint64_t g = b & layout.geometry_mask();
        if (!geometry_ok(layout, g)) {
            continue;
        }
        auto [it, inserted] = sampled.try_emplace(g, e);
        if (!inserted) {
            it->second = std::min(it->second, e);
        }
    }
    std::vector<std::pair<double, std::uint64_t>> ranked;
    for (const auto &[g, e] : sampled) {
        ranked.emplace_back(e, g);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::uint64_t> pool;
    std::set<std::uint64_t> seen;
    for (const auto &[e, g] : ranked) {
        if (pool.size() == config.pool_size) {
            break;
        }
        pool.push_back(g);
        seen.insert(g);
    }
    Rng rng(derive_seed(config.seed, 0x706f6f6c));
    for (std::uint64_t attempt = 0; pool.size() < config.pool_size && attempt < config.max_attempts;
         ++attempt) {
        const auto walk = random_walk(layout.n_residues, rng);
        if (!is_self_avoiding(turns_to_positions(walk))) {
            continue;
        }
        const std::uint64_t g = encode_geometry(layout, walk);
        if (seen.insert(g).second) {
            pool.push_back(g);
        }
    }
    if (pool.empty()) {
        throw PoolExhausted("no feasible geometry found after " +
                            std::to_string(config.max_attempts) + " random walks");
    }

    // (4) score pool x consensus with the full Hamiltonian.
    StageDistribution scored{"scored", {}};
    StageDistribution aligned{"aligned", {}};
    const std::uint64_t contact_bits = consensus << layout.n_geom;
    double best_e = std::numeric_limits<double>::infinity();
    std::uint64_t best_g = pool.front();
    for (std::uint64_t g : pool) {
        const double e = h_f.evaluate(g | contact_bits);
        scored.add(e);
        if (e < best_e) {
            best_e = e;
            best_g = g;
        }
        const std::uint64_t consistent =
            contact_bits & with_geometric_contacts(layout, g) & layout.contact_mask();
        aligned.add(h_f.evaluate(g | consistent));
    }

    // (5) conditional optimum of the contacts on the winning geometry.
    res.bits = best_g | (repair_contacts_bits(best_g, h_f, layout) << layout.n_geom);
    res.energy = h_f.evaluate(res.bits);
    StageDistribution final_stage{"final", {}};
    final_stage.add(res.energy);

    res.stages = {raw, scored, aligned, final_stage};
    res.summary_stage = 2;
    return res;
}

PipelineResult per_sample_repair(const SampleSet &samples, const SpinPolynomial &h_f,
                                 const QubitLayout &layout, std::uint64_t seed) {
    if (samples.empty()) {
        throw ValidationError("per-sample repair needs at least one sample");
    }
    PipelineResult res;
    res.pipeline = "repair";
    res.n_qubits = layout.n_qubits();
    res.feasibility_fraction = feasibility_fraction(samples, layout);

    const auto &energies = samples.energies(h_f);
    StageDistribution raw{"raw", {}};
    StageDistribution repaired{"contact_repaired", {}};
    StageDistribution descended{"descent", {}};
    double best_e = std::numeric_limits<double>::infinity();
    std::uint64_t best_bits = 0;
    std::map<std::uint64_t, std::uint64_t> by_geometry;
    for (const auto &[b, c] : samples.counts()) {
        raw.add(energies.at(b), c);
        const std::uint64_t g = b & layout.geometry_mask();
        if (geometry_ok(layout, g)) {
            by_geometry[g] += c;
        }
    }
    // Contacts are overwritten, so samples sharing a geometry repair identically.
    for (const auto &[g, c] : by_geometry) {
        const std::uint64_t fixed = g | (repair_contacts_bits(g, h_f, layout) << layout.n_geom);
        repaired.add(h_f.evaluate(fixed), c);
        const std::uint64_t out = greedy_descent(fixed, h_f, layout, derive_seed(seed, g));
        const double e = h_f.evaluate(out);
        descended.add(e, c);
        if (e < best_e) {
            best_e = e;
            best_bits = out;
        }
    }
    res.stages = {raw, repaired, descended};
    res.summary_stage = 2;
    if (by_geometry.empty()) {
        res.empty = true;
        res.energy = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.bits = best_bits;
    res.energy = best_e;
    const auto p = contact_polarization(samples, h_f, layout, samples.total_shots());
    res.polarization = p;
    return res;
}

SampleSet random_baseline(std::uint64_t n_samples, int n_qubits, std::uint64_t seed) {
    if (n_qubits < 0 || n_qubits > kMaxWordQubits) {
        throw ValidationError("register width must lie in [0, 64]");
    }
    Rng rng(seed);
    SampleSet out(n_qubits);
    const std::uint64_t mask = low_mask(n_qubits);
    for (std::uint64_t s = 0; s < n_samples; ++s) {
        out.add(rng() & mask);
    }
    return out;
}

} // namespace tetrafold
