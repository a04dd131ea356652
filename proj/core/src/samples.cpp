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

#include "tetrafold/samples.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "tetrafold/errors.hpp"

namespace tetrafold {

std::uint64_t SampleSet::count(std::uint64_t bits) const {
    auto it = counts_.find(bits);
    return it == counts_.end() ? 0 : it->second;
}

void SampleSet::add(std::uint64_t bits, std::uint64_t count) {
    if ((bits & ~low_mask(n_qubits_)) != 0) {
        throw ValidationError("sample has bits beyond the register width");
    }
    if (count == 0) {
        return;
    }
    counts_[bits] += count;
    total_ += count;
    energies_.reset();
}

void SampleSet::merge(const SampleSet &other) {
    if (other.n_qubits_ != n_qubits_) {
        throw ValidationError("cannot merge sample sets of different widths");
    }
    for (const auto &[b, c] : other.counts_) {
        add(b, c);
    }
}

const std::map<std::uint64_t, double> &SampleSet::energies(const SpinPolynomial &h) const {
    if (!energies_) {
        std::map<std::uint64_t, double> e;
        for (const auto &[b, c] : counts_) {
            e.emplace_hint(e.end(), b, h.evaluate(b));
        }
        energies_ = std::move(e);
    }
    return *energies_;
}

double SampleSet::mean_energy(const SpinPolynomial &h) const {
    if (total_ == 0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto &e = energies(h);
    double s = 0.0;
    for (const auto &[b, c] : counts_) {
        s += static_cast<double>(c) * e.at(b);
    }
    return s / static_cast<double>(total_);
}

double SampleSet::min_energy(const SpinPolynomial &h) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto &[b, e] : energies(h)) {
        best = std::min(best, e);
    }
    return best;
}

void SampleSet::write_csv(std::ostream &out) const {
    out << "bitstring,count,energy\n";
    out << std::setprecision(17);
    for (const auto &[b, c] : counts_) {
        out << Bitstring{b, n_qubits_}.to_string() << ',' << c << ',';
        if (energies_) {
            out << energies_->at(b);
        }
        out << '\n';
    }
}

void SampleSet::save_csv(const std::filesystem::path &path) const {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    write_csv(out);
}

SampleSet SampleSet::read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("bitstring,count", 0) != 0) {
        throw ValidationError("sample CSV must start with a 'bitstring,count,energy' header");
    }
    std::optional<SampleSet> set;
    std::map<std::uint64_t, double> energies;
    bool all_energies = true;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string bits, count, energy;
        std::getline(row, bits, ',');
        std::getline(row, count, ',');
        std::getline(row, energy);
        const auto b = Bitstring::parse(bits);
        if (!set) {
            set.emplace(b.size);
        } else if (b.size != set->n_qubits_) {
            throw ValidationError("sample CSV line " + std::to_string(line_no) +
                                  ": inconsistent bitstring width");
        }
        std::uint64_t n = 0;
        try {
            n = std::stoull(count);
        } catch (const std::exception &) {
            throw ValidationError("sample CSV line " + std::to_string(line_no) + ": bad count");
        }
        set->add(b.word, n);
        if (energy.empty()) {
            all_energies = false;
        } else {
            energies[b.word] = std::stod(energy);
        }
    }
    SampleSet out = set ? *set : SampleSet(0);
    if (set && all_energies) {
        out.energies_ = std::move(energies);
    }
    return out;
}

SampleSet SampleSet::load_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    return read_csv(in);
}

SampleSet sample(const StateVector &state, std::uint64_t n_shots, std::uint64_t seed) {
    const auto amps = state.amplitudes();
    std::vector<double> cumulative(amps.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < amps.size(); ++b) {
        acc += std::norm(amps[b]);
        cumulative[b] = acc;
    }
    Rng rng(seed);
    SampleSet out(state.num_qubits());
    for (std::uint64_t s = 0; s < n_shots; ++s) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) {
            --it;
        }
        out.add(static_cast<std::uint64_t>(it - cumulative.begin()));
    }
    return out;
}

} // namespace tetrafold
