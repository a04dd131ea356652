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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "tetrafold/postproc.hpp"
#include "tetrafold/refsolve.hpp"
#include "tetrafold/spin_polynomial.hpp"

namespace tetrafold {

/// {"n_q": n, "terms": [{"qubits": [...], "coeff": c}, ...], "peptide": "..."}
struct HamiltonianFile {
    SpinPolynomial poly;
    std::optional<std::string> peptide;
};

void write_hamiltonian_json(std::ostream &out, const SpinPolynomial &poly,
                            const std::optional<std::string> &peptide = std::nullopt);
HamiltonianFile read_hamiltonian_json(std::istream &in);
HamiltonianFile load_hamiltonian_json(const std::filesystem::path &path);

void write_ref_result_json(std::ostream &out, const RefResult &r);
RefResult read_ref_result_json(std::istream &in);

void write_pipeline_json(std::ostream &out, const PipelineResult &r);
PipelineResult read_pipeline_json(std::istream &in);

/// Rows "stage,energy,count".
void write_stage_csv(std::ostream &out, const std::vector<StageDistribution> &stages);

} // namespace tetrafold
