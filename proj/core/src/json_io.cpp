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

#include "tetrafold/json_io.hpp"

#include <bit>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "tetrafold/errors.hpp"

namespace tetrafold {

using nlohmann::json;

namespace {

json parse_or_throw(std::istream &in, const char *what) {
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

template <typename F>
auto guarded(const char *what, F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw ValidationError(std::string("invalid ") + what + " JSON: " + e.what());
    }
}

json stages_json(const std::vector<StageDistribution> &stages) {
    json out = json::array();
    for (const auto &s : stages) {
        json h = json::array();
        for (const auto &[e, c] : s.histogram) {
            h.push_back({e, c});
        }
        out.push_back({{"name", s.name}, {"histogram", h}});
    }
    return out;
}

} // namespace

void write_hamiltonian_json(std::ostream &out, const SpinPolynomial &poly,
                            const std::optional<std::string> &peptide) {
    json terms = json::array();
    for (const auto &t : poly.terms()) {
        json qubits = json::array();
        for (std::uint64_t m = t.mask; m != 0; m &= m - 1) {
            qubits.push_back(std::countr_zero(m));
        }
        terms.push_back({{"qubits", qubits}, {"coeff", t.coeff}});
    }
    json doc = {{"n_q", poly.num_qubits()}, {"terms", terms}};
    if (peptide) {
        doc["peptide"] = *peptide;
    }
    out << doc.dump() << '\n';
}

HamiltonianFile read_hamiltonian_json(std::istream &in) {
    const json doc = parse_or_throw(in, "Hamiltonian");
    return guarded("Hamiltonian", [&] {
        const int n = doc.at("n_q").get<int>();
        if (n < 0 || n > kMaxWordQubits) {
            throw ValidationError("Hamiltonian n_q must lie in [0, 64]");
        }
        std::vector<SpinPolynomial::Term> terms;
        for (const auto &t : doc.at("terms")) {
            std::uint64_t mask = 0;
            for (const auto &q : t.at("qubits")) {
                const int j = q.get<int>();
                if (j < 0 || j >= n) {
                    throw ValidationError("Hamiltonian term names qubit " + std::to_string(j) +
                                          " outside [0, n_q)");
                }
                mask ^= std::uint64_t{1} << j;
            }
            terms.push_back({mask, t.at("coeff").get<double>()});
        }
        HamiltonianFile f{SpinPolynomial::from_terms(n, terms), std::nullopt};
        if (doc.contains("peptide")) {
            f.peptide = doc.at("peptide").get<std::string>();
        }
        return f;
    });
}

HamiltonianFile load_hamiltonian_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    return read_hamiltonian_json(in);
}

void write_ref_result_json(std::ostream &out, const RefResult &r) {
    json doc = {{"sequence", r.sequence},
                {"E_ref", r.e_ref},
                {"turns", std::vector<int>(r.turns.begin(), r.turns.end())},
                {"method", r.method},
                {"seed", r.seed},
                {"generations", r.generations}};
    out << doc.dump(2) << '\n';
}

RefResult read_ref_result_json(std::istream &in) {
    const json doc = parse_or_throw(in, "reference result");
    return guarded("reference result", [&] {
        RefResult r;
        r.sequence = doc.at("sequence").get<std::string>();
        r.e_ref = doc.at("E_ref").get<double>();
        for (int t : doc.at("turns").get<std::vector<int>>()) {
            r.turns.push_back(static_cast<Turn>(t));
        }
        r.method = doc.at("method").get<std::string>();
        r.seed = doc.value("seed", std::uint64_t{0});
        r.generations = doc.value("generations", 0);
        return r;
    });
}

void write_pipeline_json(std::ostream &out, const PipelineResult &r) {
    json doc = {{"pipeline", r.pipeline},
                {"empty", r.empty},
                {"n_q", r.n_qubits},
                {"stages", stages_json(r.stages)},
                {"summary_stage", r.summary_stage},
                {"feasibility_fraction", r.feasibility_fraction},
                {"polarization", r.polarization}};
    if (!r.empty) {
        doc["bitstring"] = Bitstring{r.bits, r.n_qubits}.to_string();
        doc["energy"] = r.energy;
    }
    out << doc.dump(2) << '\n';
}

PipelineResult read_pipeline_json(std::istream &in) {
    const json doc = parse_or_throw(in, "pipeline result");
    return guarded("pipeline result", [&] {
        PipelineResult r;
        r.pipeline = doc.at("pipeline").get<std::string>();
        r.empty = doc.at("empty").get<bool>();
        r.n_qubits = doc.at("n_q").get<int>();
        for (const auto &s : doc.at("stages")) {
            StageDistribution d{s.at("name").get<std::string>(), {}};
            for (const auto &row : s.at("histogram")) {
                d.add(row.at(0).get<double>(), row.at(1).get<std::uint64_t>());
            }
            r.stages.push_back(std::move(d));
        }
        r.summary_stage = doc.at("summary_stage").get<std::size_t>();
        r.feasibility_fraction = doc.at("feasibility_fraction").get<double>();
        r.polarization = doc.at("polarization").get<std::vector<double>>();
        if (!r.empty) {
            r.bits = Bitstring::parse(doc.at("bitstring").get<std::string>()).word;
            r.energy = doc.at("energy").get<double>();
        } else {
            r.energy = std::numeric_limits<double>::quiet_NaN();
        }
        return r;
    });
}

void write_stage_csv(std::ostream &out, const std::vector<StageDistribution> &stages) {
    out << "stage,energy,count\n";
    const auto old = out.precision(17);
    for (const auto &s : stages) {
        for (const auto &[e, c] : s.histogram) {
            out << s.name << ',' << e << ',' << c << '\n';
        }
    }
    out.precision(old);
}

} // namespace tetrafold
