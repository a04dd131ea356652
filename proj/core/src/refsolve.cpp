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

#include "tetrafold/refsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "tetrafold/errors.hpp"
#include "tetrafold/postproc.hpp"

namespace tetrafold {

namespace {

bool eligible(int i, int j) {
    const int sep = j - i;
    return sep >= 5 && sep % 2 == 1;
}

Vec3 step(const Vec3 &p, int bond, Turn t) {
    const int s = bond % 2 == 0 ? 1 : -1;
    const auto &a = kBondVectors[t];
    return {p[0] + s * a[0], p[1] + s * a[1], p[2] + s * a[2]};
}

struct Enumerator {
    const Peptide &peptide;
    const InteractionMatrix &matrix;
    int n_turns;
    TurnSequence turns;
    Conformation beads;
    double best = std::numeric_limits<double>::infinity();
    TurnSequence best_turns;
    std::uint64_t visited = 0;

    void extend(int k, double energy) {
        if (k == n_turns) {
            ++visited;
            if (energy < best) {
                best = energy;
                best_turns = turns;
            }
            return;
        }
        for (Turn t = 0; t < 4; ++t) {
            if (k == 0 && t != kGaugeTurn0) {
                continue;
            }
            if (k == 1 && t != kGaugeTurn1) {
                continue;
            }
            if (k == 2 && (t & 1) != 0) {
                continue; // gauge: low half of the third turn is fixed
            }
            if (k > 0 && t == turns[static_cast<std::size_t>(k - 1)]) {
                continue;
            }
            const Vec3 next = step(beads.back(), k, t);
            if (std::find(beads.begin(), beads.end(), next) != beads.end()) {
                continue;
            }
            const int j = k + 1;
            double e = energy;
            for (int i = 0; i + 5 <= j; ++i) {
                if (eligible(i, j) &&
                    squared_distance(beads[static_cast<std::size_t>(i)], next) == kContactDistanceSq) {
                    e += matrix(peptide[i], peptide[j]);
                }
            }
            turns.push_back(t);
            beads.push_back(next);
            extend(k + 1, e);
            turns.pop_back();
            beads.pop_back();
        }
    }
};

} // namespace

RefResult exact_enumerate(const Peptide &peptide, const InteractionMatrix &matrix, int max_residues) {
    if (peptide.size() > max_residues) {
        throw ValidationError("exact enumeration is capped at " + std::to_string(max_residues) +
                              " residues; got " + std::to_string(peptide.size()));
    }
    Enumerator en{peptide, matrix, peptide.size() - 1, {}, {{0, 0, 0}}, {}, {}, 0};
    en.extend(0, 0.0);
    RefResult r;
    r.sequence = peptide.residues();
    r.e_ref = en.best;
    r.turns = en.best_turns;
    r.method = "exact";
    r.conformations = en.visited;
    return r;
}

void GAConfig::validate() const {
    if (population < 2 || tournament < 1 || max_generations < 0 || patience < 1 || elitism < 0 ||
        elitism > population) {
        throw ValidationError("invalid genetic algorithm configuration");
    }
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0) || mutation_rate > 1.0) {
        throw ValidationError("genetic algorithm rates must lie in [0, 1]");
    }
}

double ga_fitness(const TurnSequence &turns, const Peptide &peptide,
                  const InteractionMatrix &matrix, double penalty) {
    const auto conf = turns_to_positions(turns);
    const int n = static_cast<int>(conf.size());
    double e = 0.0;
    int overlaps = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int d = squared_distance(conf[static_cast<std::size_t>(i)], conf[static_cast<std::size_t>(j)]);
            if (d == 0) {
                ++overlaps;
            } else if (d == kContactDistanceSq && eligible(i, j)) {
                e += matrix(peptide[i], peptide[j]);
            }
        }
    }
    int backtracks = 0;
    for (std::size_t k = 1; k < turns.size(); ++k) {
        backtracks += turns[k] == turns[k - 1];
    }
    return e + penalty * (overlaps + backtracks);
}

RefResult genetic_algorithm(const Peptide &peptide, const InteractionMatrix &matrix,
                            const GAConfig &config) {
    config.validate();
    const int n_turns = peptide.size() - 1;
    const double mutation = config.mutation_rate < 0.0 ? 1.0 / n_turns : config.mutation_rate;
    const double penalty = std::max(10.0 * matrix.max_abs(), 1.0);
    Rng rng(config.seed);

    struct Individual {
        TurnSequence turns;
        double fitness;
        bool feasible;
    };
    auto make = [&](TurnSequence t) {
        const bool ok = is_feasible(t);
        const double f = ga_fitness(t, peptide, matrix, penalty);
        return Individual{std::move(t), f, ok};
    };

    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(config.population));
    for (const auto &t : config.initial_population) {
        if (static_cast<int>(pop.size()) == config.population) {
            break;
        }
        if (static_cast<int>(t.size()) != n_turns) {
            throw ValidationError("initial individual has the wrong number of turns");
        }
        pop.push_back(make(t));
    }
    while (static_cast<int>(pop.size()) < config.population) {
        pop.push_back(make(random_walk(peptide.size(), rng)));
    }

    // The zigzag chain 0,1,0,1,... is always feasible; it anchors the result.
    TurnSequence zigzag(static_cast<std::size_t>(n_turns));
    for (int k = 0; k < n_turns; ++k) {
        zigzag[static_cast<std::size_t>(k)] = static_cast<Turn>(k % 2);
    }
    Individual best = make(zigzag);
    auto consider = [&](const Individual &ind) {
        if (ind.feasible && ind.fitness < best.fitness) {
            best = ind;
            return true;
        }
        return false;
    };
    for (const auto &ind : pop) {
        consider(ind);
    }

    auto by_fitness = [](const Individual &a, const Individual &b) {
        return a.fitness < b.fitness || (a.fitness == b.fitness && a.turns < b.turns);
    };
    auto tournament = [&]() -> const Individual & {
        const Individual *w = nullptr;
        for (int t = 0; t < config.tournament; ++t) {
            const auto &c = pop[uniform_below(rng, pop.size())];
            if (w == nullptr || by_fitness(c, *w)) {
                w = &c;
            }
        }
        return *w;
    };
    auto mutate_locus = [&](TurnSequence &t, int k) {
        const auto ku = static_cast<std::size_t>(k);
        // Half the time swap turns k and k+2: a crankshaft move that only
        // relocates beads k+1 and k+2.
        if (k + 2 < n_turns && (k > 2 || (t[ku + 2] & 1) == 0) && (rng() & 1U)) {
            std::swap(t[ku], t[ku + 2]);
            return;
        }
        if (k == 2) {
            t[2] ^= 2; // only the high half is free
        } else {
            const auto r = static_cast<Turn>(uniform_below(rng, 3));
            t[static_cast<std::size_t>(k)] = r >= t[static_cast<std::size_t>(k)] ? static_cast<Turn>(r + 1) : r;
        }
    };

    RefResult r;
    int stale = 0;
    int gen = 0;
    for (; gen < config.max_generations && stale < config.patience; ++gen) {
        std::sort(pop.begin(), pop.end(), by_fitness);
        std::vector<Individual> next(pop.begin(), pop.begin() + config.elitism);
        std::set<TurnSequence> present;
        for (const auto &ind : next) {
            present.insert(ind.turns);
        }
        while (static_cast<int>(next.size()) < config.population) {
            TurnSequence a = tournament().turns;
            const TurnSequence &b = tournament().turns;
            // Loci 0 and 1 are gauge-fixed; crossover and mutation act on 2..
            if (n_turns > 3 && uniform01(rng) < config.crossover_rate) {
                const auto cut = 3 + uniform_below(rng, static_cast<std::uint64_t>(n_turns - 3));
                std::copy(b.begin() + static_cast<std::ptrdiff_t>(cut), b.end(),
                          a.begin() + static_cast<std::ptrdiff_t>(cut));
            }
            for (int k = 2; k < n_turns; ++k) {
                if (uniform01(rng) < mutation) {
                    mutate_locus(a, k);
                }
            }
            // Duplicates are swapped for fresh walks so the population cannot collapse.
            if (!present.insert(a).second) {
                a = random_walk(peptide.size(), rng);
                present.insert(a);
            }
            next.push_back(make(std::move(a)));
        }
        pop = std::move(next);
        bool improved = false;
        for (const auto &ind : pop) {
            improved = consider(ind) || improved;
        }
        stale = improved ? 0 : stale + 1;
        r.best_history.push_back(best.fitness);
    }

    r.sequence = peptide.residues();
    r.e_ref = structural_energy(turns_to_positions(best.turns), peptide, matrix);
    r.turns = best.turns;
    r.method = "ga";
    r.seed = config.seed;
    r.generations = gen;
    return r;
}

} // namespace tetrafold
