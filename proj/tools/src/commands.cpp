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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tetrafold/bfdcqo.hpp"
#include "tetrafold/errors.hpp"
#include "tetrafold/hamiltonian.hpp"
#include "tetrafold/json_io.hpp"
#include "tetrafold/postproc.hpp"
#include "tetrafold/refsolve.hpp"

namespace tetrafold::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------- files

void write_atomic(const fs::path &path, const std::string &content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + path.string());
        }
        f << content;
        if (!f.flush()) {
            throw std::runtime_error("failed writing " + path.string());
        }
    }
    fs::rename(tmp, path);
}

template <typename F> std::string to_string_with(F &&f) {
    std::ostringstream s;
    f(s);
    return s.str();
}

json read_json_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---------------------------------------------------------------- matrices

fs::path data_dir() {
    if (const char *env = std::getenv("TETRAFOLD_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    const fs::path source = TETRAFOLD_DATA_PATH;
    if (fs::exists(source / "mj_matrix.txt")) {
        return source;
    }
    return TETRAFOLD_INSTALLED_DATA_PATH;
}

std::string default_matrix() {
    const char *env = std::getenv("TETRAFOLD_MATRIX");
    return env != nullptr && *env != '\0' ? env : "mj";
}

InteractionMatrix resolve_matrix(const std::string &name) {
    if (name == "hp") {
        return InteractionMatrix::hp();
    }
    if (name == "mj") {
        return InteractionMatrix::load(data_dir() / "mj_matrix.txt");
    }
    if (!fs::exists(name)) {
        throw ValidationError("matrix file not found: " + name);
    }
    return InteractionMatrix::load(name);
}

double resolve_prune(const std::string &v) {
    if (v == "high" || v == "prune.high") {
        return kPruneHigh;
    }
    if (v == "low" || v == "prune.low") {
        return kPruneLow;
    }
    if (v == "none") {
        return 0.0;
    }
    if (v == "inf" || v == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) {
            return d;
        }
    } catch (const std::exception &) {
    }
    throw ValidationError("prune must be a number, 'high', 'low', 'none' or 'inf'; got '" + v + "'");
}

// ---------------------------------------------------------------- experiment config

struct ExperimentConfig {
    std::string sequence;
    std::string matrix = default_matrix();
    std::optional<double> lambda_back, lambda_mismatch, lambda_overlap;
    RunConfig run;
    std::string prune = "none";
    ConsensusConfig consensus;
    bool baseline = true;
    std::string out = "tetrafold_run";

    PenaltyConfig penalties(const InteractionMatrix &m) const {
        auto p = PenaltyConfig::defaults_for(m);
        if (lambda_back) {
            p.lambda_back = *lambda_back;
        }
        if (lambda_mismatch) {
            p.lambda_mismatch = *lambda_mismatch;
        }
        if (lambda_overlap) {
            p.lambda_overlap = *lambda_overlap;
        }
        p.validate();
        return p;
    }
};

/// Applies keys of a JSON config file; flags given on the command line win
/// because they are applied afterwards.
void apply_config_file(ExperimentConfig &c, const fs::path &path) {
    const json j = read_json_file(path);
    try {
        c.sequence = j.value("sequence", c.sequence);
        c.matrix = j.value("matrix", c.matrix);
        c.baseline = j.value("baseline", c.baseline);
        c.out = j.value("out", c.out);
        if (j.contains("penalties")) {
            const auto &p = j.at("penalties");
            if (p.contains("back")) c.lambda_back = p.at("back").get<double>();
            if (p.contains("mismatch")) c.lambda_mismatch = p.at("mismatch").get<double>();
            if (p.contains("overlap")) c.lambda_overlap = p.at("overlap").get<double>();
        }
        if (j.contains("run")) {
            const auto &r = j.at("run");
            c.run.rounds = r.value("rounds", c.run.rounds);
            c.run.shots = r.value("shots", c.run.shots);
            c.run.n_elite = r.value("elites", c.run.n_elite);
            c.run.k_s = r.value("k_s", c.run.k_s);
            c.run.total_time = r.value("T", c.run.total_time);
            c.run.n_steps = r.value("n_steps", c.run.n_steps);
            c.run.seed = r.value("seed", c.run.seed);
            c.run.qubit_cap = r.value("cap", c.run.qubit_cap);
            if (r.contains("prune")) {
                const auto &v = r.at("prune");
                c.prune = v.is_string() ? v.get<std::string>() : std::to_string(v.get<double>());
            }
        }
        if (j.contains("prune.high") || j.contains("prune.low")) {
            throw ValidationError("prune presets are fixed; select one with run.prune = \"high\" or \"low\"");
        }
        if (j.contains("consensus")) {
            const auto &k = j.at("consensus");
            c.consensus.k = k.value("k", c.consensus.k);
            c.consensus.pool_size = k.value("pool", c.consensus.pool_size);
            c.consensus.max_attempts = k.value("max_attempts", c.consensus.max_attempts);
        }
    } catch (const json::exception &e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

struct Instance {
    Peptide peptide;
    QubitLayout layout;
    SpinPolynomial h;
};

Instance load_instance(const fs::path &hamiltonian_path, const std::string &sequence_override) {
    auto f = load_hamiltonian_json(hamiltonian_path);
    std::string seq = !sequence_override.empty() ? sequence_override : f.peptide.value_or("");
    if (seq.empty()) {
        throw ValidationError("Hamiltonian file carries no peptide; pass --sequence");
    }
    Peptide p(seq);
    auto layout = qubit_layout(p);
    if (layout.n_qubits() != f.poly.num_qubits()) {
        throw ValidationError("Hamiltonian width " + std::to_string(f.poly.num_qubits()) +
                              " does not match the peptide layout (" +
                              std::to_string(layout.n_qubits()) + " qubits)");
    }
    return {std::move(p), std::move(layout), std::move(f.poly)};
}

json run_config_json(const ExperimentConfig &c, const PenaltyConfig &pen) {
    return {{"sequence", c.sequence},
            {"matrix", c.matrix},
            {"penalties",
             {{"back", pen.lambda_back}, {"mismatch", pen.lambda_mismatch}, {"overlap", pen.lambda_overlap}}},
            {"run",
             {{"rounds", c.run.rounds},
              {"shots", c.run.shots},
              {"elites", c.run.n_elite},
              {"k_s", c.run.k_s},
              {"T", c.run.total_time},
              {"n_steps", c.run.n_steps},
              {"prune", c.prune},
              {"theta_prune", num_or_null(c.run.theta_prune)},
              {"seed", c.run.seed},
              {"cap", c.run.qubit_cap}}},
            {"baseline", c.baseline}};
}

// ---------------------------------------------------------------- report

json stage_json(const StageDistribution &s) {
    json h = json::array();
    for (const auto &[e, c] : s.histogram) {
        h.push_back({e, c});
    }
    return {{"name", s.name}, {"histogram", h}};
}

StageDistribution stage_from_json(const json &j) {
    StageDistribution s{j.at("name").get<std::string>(), {}};
    for (const auto &row : j.at("histogram")) {
        s.add(row.at(0).get<double>(), row.at(1).get<std::uint64_t>());
    }
    return s;
}

json pipeline_to_json(const PipelineResult &r) {
    return json::parse(to_string_with([&](std::ostream &o) { write_pipeline_json(o, r); }));
}

PipelineResult pipeline_from_json(const json &j) {
    std::istringstream in(j.dump());
    return read_pipeline_json(in);
}

void check_result(const PipelineResult &r, const QubitLayout &layout) {
    if (r.empty) {
        return;
    }
    if (!assignment_feasible(layout, r.bits)) {
        throw std::runtime_error(r.pipeline + " pipeline returned an infeasible bitstring");
    }
    if (r.e_best() > r.e_avg() + 1e-9 * std::max(1.0, std::abs(r.e_avg()))) {
        throw std::runtime_error(r.pipeline + " pipeline reports E_best above E_avg");
    }
}

// ---------------------------------------------------------------- analysis

struct ArmSummary {
    std::optional<double> raw_mean, feasibility, polarization;
    std::map<std::string, PipelineResult> pipelines;
    std::optional<StageDistribution> raw;
};

ArmSummary read_arm(const json &report, const std::string &arm) {
    ArmSummary s;
    if (!report.contains("arms") || !report.at("arms").contains(arm)) {
        return s;
    }
    const auto &a = report.at("arms").at(arm);
    if (a.contains("raw_mean") && a.at("raw_mean").is_number()) s.raw_mean = a.at("raw_mean").get<double>();
    if (a.contains("feasibility_fraction")) s.feasibility = a.at("feasibility_fraction").get<double>();
    if (a.contains("polarization")) s.polarization = mean_polarization(a.at("polarization").get<std::vector<double>>());
    if (a.contains("raw")) s.raw = stage_from_json(a.at("raw"));
    if (a.contains("pipelines")) {
        for (const auto &[name, p] : a.at("pipelines").items()) {
            s.pipelines.emplace(name, pipeline_from_json(p));
        }
    }
    return s;
}

json opt(const std::optional<double> &v) { return v ? num_or_null(*v) : json(nullptr); }

std::string arm_csv(const ArmSummary &s) {
    std::vector<StageDistribution> stages;
    if (s.raw) {
        stages.push_back(*s.raw);
    }
    for (const auto &[name, p] : s.pipelines) {
        for (auto st : p.stages) {
            st.name = name + "." + st.name;
            stages.push_back(std::move(st));
        }
    }
    return to_string_with([&](std::ostream &o) { write_stage_csv(o, stages); });
}

json summarize(const json &report) {
    const auto q = read_arm(report, "quantum");
    const auto r = read_arm(report, "random");
    std::optional<double> e_ref;
    if (report.contains("E_ref") && report.at("E_ref").is_number()) {
        e_ref = report.at("E_ref").get<double>();
    }
    json table = json::object();
    for (const char *pipeline : {"consensus", "repair"}) {
        json row = json::object();
        for (const auto &[tag, arm] : {std::pair{"Q", &q}, std::pair{"R", &r}}) {
            auto it = arm->pipelines.find(pipeline);
            const bool have = it != arm->pipelines.end() && !it->second.empty;
            row[std::string("E_avg_") + tag] = have ? num_or_null(it->second.e_avg()) : json(nullptr);
            row[std::string("E_best_") + tag] = have ? num_or_null(it->second.e_best()) : json(nullptr);
            if (e_ref) {
                row[std::string("reached_E_ref_") + tag] =
                    have && std::abs(it->second.e_best() - *e_ref) <= 1e-9 * std::max(1.0, std::abs(*e_ref));
            }
        }
        table[pipeline] = row;
    }
    json ratio = nullptr;
    if (q.raw_mean && r.raw_mean && *q.raw_mean != 0.0) {
        ratio = num_or_null(*r.raw_mean / *q.raw_mean);
    }
    return {{"sequence", report.value("sequence", std::string())},
            {"E_ref", opt(e_ref)},
            {"table", table},
            {"raw_mean", {{"quantum", opt(q.raw_mean)}, {"random", opt(r.raw_mean)}}},
            {"raw_mean_ratio", ratio},
            {"feasibility_fraction", {{"quantum", opt(q.feasibility)}, {"random", opt(r.feasibility)}}},
            {"polarization", {{"quantum", opt(q.polarization)}, {"random", opt(r.polarization)}}}};
}

// ---------------------------------------------------------------- subcommands

struct Context {
    std::ostream &out;
    std::ostream &err;
};

void add_penalty_flags(CLI::App *cmd, ExperimentConfig &c) {
    cmd->add_option("--lambda-back", c.lambda_back, "backbone penalty (default 10 max|eps|, floor 1)");
    cmd->add_option("--lambda-mismatch", c.lambda_mismatch, "contact mismatch penalty");
    cmd->add_option("--lambda-overlap", c.lambda_overlap, "overlap certificate penalty");
}

int cmd_build(Context &ctx, const ExperimentConfig &c, const std::string &out_path) {
    Peptide peptide(c.sequence);
    const auto matrix = resolve_matrix(c.matrix);
    const auto layout = qubit_layout(peptide);
    OverlapCoverage cov;
    const auto h = build_total(peptide, matrix, c.penalties(matrix), {}, &cov);
    ctx.out << "sequence " << peptide.residues() << "\n"
            << "n_q " << layout.n_qubits() << "\n"
            << "n_geom " << layout.n_geom << "\n"
            << "n_contact " << layout.n_contact << "\n"
            << "terms " << h.size() << "\n";
    for (const auto &[deg, count] : degree_histogram(h)) {
        ctx.out << "degree " << deg << " " << count << "\n";
    }
    ctx.out << "overlap_certificates " << cov.certificates << "\n"
            << "overlap_prefixes_covered " << cov.covered_prefixes << "/" << cov.overlap_prefixes << "\n"
            << "overlap_beads_skipped " << cov.beads_skipped << "\n";
    if (!cov.complete()) {
        ctx.err << "warning: overlap penalty is incomplete for this length; some overlapping "
                   "geometries are not penalized\n";
    }
    if (!out_path.empty()) {
        write_atomic(out_path, to_string_with([&](std::ostream &o) {
                         write_hamiltonian_json(o, h, peptide.residues());
                     }));
    }
    return kExitOk;
}

int cmd_run(Context &ctx, ExperimentConfig c) {
    Peptide peptide(c.sequence);
    const auto layout = qubit_layout(peptide);
    c.run.theta_prune = resolve_prune(c.prune);
    c.run.validate();
    check_simulable(layout.n_qubits(), c.run.qubit_cap);
    const auto matrix = resolve_matrix(c.matrix);
    const auto pen = c.penalties(matrix);
    const auto h = build_total(peptide, matrix, pen);

    const fs::path dir = c.out;
    fs::create_directories(dir / "samples");
    write_atomic(dir / "hamiltonian.json", to_string_with([&](std::ostream &o) {
                     write_hamiltonian_json(o, h, peptide.residues());
                 }));

    json rounds = json::array();
    const auto records = run_bfdcqo(h, c.run, [&](const RoundRecord &r) {
        std::ostringstream name;
        name << "samples/round_" << std::setw(2) << std::setfill('0') << r.round << ".csv";
        write_atomic(dir / name.str(), to_string_with([&](std::ostream &o) { r.samples.write_csv(o); }));
        rounds.push_back({{"round", r.round},
                          {"bias", r.bias},
                          {"mean_energy", r.mean_energy},
                          {"best_energy", r.best_energy},
                          {"alpha1", r.alpha1_mid},
                          {"surviving_terms", r.surviving_terms},
                          {"entangling_gates", r.entangling_gates},
                          {"histogram", name.str()}});
        ctx.out << "round " << r.round << " mean " << r.mean_energy << " best " << r.best_energy
                << " terms " << r.surviving_terms << "\n";
    });
    const auto quantum = all_samples(records);
    quantum.energies(h);
    write_atomic(dir / "samples" / "quantum.csv", to_string_with([&](std::ostream &o) { quantum.write_csv(o); }));

    json manifest = {{"config", run_config_json(c, pen)},
                     {"n_q", layout.n_qubits()},
                     {"n_geom", layout.n_geom},
                     {"n_contact", layout.n_contact},
                     {"hamiltonian", "hamiltonian.json"},
                     {"rounds", rounds},
                     {"samples", {{"quantum", "samples/quantum.csv"}}}};
    if (c.baseline) {
        const auto random = random_baseline(quantum.total_shots(), layout.n_qubits(),
                                            derive_seed(c.run.seed, 0x72616e64));
        random.energies(h);
        write_atomic(dir / "samples" / "random.csv", to_string_with([&](std::ostream &o) { random.write_csv(o); }));
        manifest["samples"]["random"] = "samples/random.csv";
    }
    write_atomic(dir / "manifest.json", dump(manifest));
    ctx.out << "wrote " << (dir / "manifest.json").string() << "\n";
    return kExitOk;
}

int cmd_baseline(Context &ctx, const fs::path &ham, const std::string &seq, std::uint64_t shots,
                 std::uint64_t seed, const std::string &out_path) {
    const auto inst = load_instance(ham, seq);
    const auto samples = random_baseline(shots, inst.layout.n_qubits(), seed);
    samples.energies(inst.h);
    const auto text = to_string_with([&](std::ostream &o) { samples.write_csv(o); });
    if (out_path.empty()) {
        ctx.out << text;
    } else {
        write_atomic(out_path, text);
    }
    return kExitOk;
}

struct PostprocessArgs {
    fs::path samples, hamiltonian, report = "report.json", ref;
    std::string sequence, arm = "quantum", pipeline = "both";
    ConsensusConfig consensus;
};

int cmd_postprocess(Context &ctx, PostprocessArgs a) {
    const auto inst = load_instance(a.hamiltonian, a.sequence);
    if (!fs::exists(a.samples)) {
        throw std::runtime_error("samples file not found: " + a.samples.string());
    }
    const auto samples = SampleSet::load_csv(a.samples);
    if (samples.num_qubits() != inst.layout.n_qubits()) {
        throw ValidationError("sample width does not match the Hamiltonian");
    }
    if (samples.empty()) {
        throw ValidationError("samples file holds no shots");
    }
    json report = fs::exists(a.report) ? read_json_file(a.report) : json::object();
    report["sequence"] = inst.peptide.residues();
    report["n_q"] = inst.layout.n_qubits();
    if (!a.ref.empty()) {
        std::ifstream in(a.ref);
        if (!in) {
            throw std::runtime_error("cannot read " + a.ref.string());
        }
        report["E_ref"] = read_ref_result_json(in).e_ref;
    }

    json &arm = report["arms"][a.arm];
    StageDistribution raw{"raw", {}};
    for (const auto &[b, e] : samples.energies(inst.h)) {
        raw.add(e, samples.count(b));
    }
    arm["raw"] = stage_json(raw);
    arm["raw_mean"] = samples.mean_energy(inst.h);
    arm["shots"] = samples.total_shots();
    arm["feasibility_fraction"] = feasibility_fraction(samples, inst.layout);
    arm["polarization"] = contact_polarization(samples, inst.h, inst.layout, a.consensus.k);

    if (a.pipeline == "consensus" || a.pipeline == "both") {
        const auto r = consensus_pipeline(samples, inst.h, inst.layout, a.consensus);
        check_result(r, inst.layout);
        arm["pipelines"]["consensus"] = pipeline_to_json(r);
        ctx.out << a.arm << " consensus E_avg " << r.e_avg() << " E_best " << r.e_best() << "\n";
    }
    if (a.pipeline == "repair" || a.pipeline == "both") {
        const auto r = per_sample_repair(samples, inst.h, inst.layout, a.consensus.seed);
        if (r.empty) {
            ctx.err << "warning: no geometrically feasible " << a.arm
                    << " samples; per-sample repair produced no result\n";
        } else {
            check_result(r, inst.layout);
            ctx.out << a.arm << " repair E_avg " << r.e_avg() << " E_best " << r.e_best() << "\n";
        }
        arm["pipelines"]["repair"] = pipeline_to_json(r);
    }
    write_atomic(a.report, dump(report));
    return kExitOk;
}

int cmd_analyze(Context &ctx, const fs::path &report_path, const fs::path &out_dir) {
    const json report = read_json_file(report_path);
    const auto q = read_arm(report, "quantum");
    const auto r = read_arm(report, "random");
    write_atomic(out_dir / "quantum_stages.csv", arm_csv(q));
    write_atomic(out_dir / "random_stages.csv", arm_csv(r));
    const json summary = summarize(report);
    write_atomic(out_dir / "summary.json", dump(summary));
    ctx.out << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_refsolve(Context &ctx, const ExperimentConfig &c, const std::string &method, int max_residues,
                 GAConfig ga, const std::string &out_path) {
    Peptide peptide(c.sequence);
    const auto matrix = resolve_matrix(c.matrix);
    RefResult r;
    if (method == "exact") {
        r = exact_enumerate(peptide, matrix, max_residues);
    } else if (method == "ga") {
        r = genetic_algorithm(peptide, matrix, ga);
    } else {
        throw ValidationError("method must be 'exact' or 'ga'");
    }
    const auto text = to_string_with([&](std::ostream &o) { write_ref_result_json(o, r); });
    if (!out_path.empty()) {
        write_atomic(out_path, text);
    }
    ctx.out << text;
    return kExitOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Context ctx{out, err};
    CLI::App app{"Lattice protein folding with bias-field counterdiabatic sampling", "tetrafold"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path, out_path, method = "exact";
    fs::path ham_path, report_path = "report.json", analyze_out = ".";
    std::uint64_t shots = 50000, seed = 0;
    int max_residues = kDefaultEnumerationCap;
    GAConfig ga;
    PostprocessArgs pp;

    auto *build = app.add_subcommand("build", "build the problem Hamiltonian and report its layout");
    build->add_option("-s,--sequence", cfg.sequence, "peptide, one-letter residue codes")->required();
    build->add_option("-m,--matrix", cfg.matrix, "hp, mj, or a matrix file (default $TETRAFOLD_MATRIX or mj)");
    add_penalty_flags(build, cfg);
    build->add_option("-o,--out", out_path, "write the Hamiltonian JSON here");

    auto *runc = app.add_subcommand("run", "run BF-DCQO rounds and the random baseline");
    runc->add_option("--config", config_path, "JSON experiment config; flags override it");
    runc->add_option("-s,--sequence", cfg.sequence, "peptide");
    runc->add_option("-m,--matrix", cfg.matrix, "hp, mj, or a matrix file");
    add_penalty_flags(runc, cfg);
    runc->add_option("--rounds", cfg.run.rounds, "R");
    runc->add_option("--shots", cfg.run.shots, "shots per round");
    runc->add_option("--elites", cfg.run.n_elite, "n_l");
    runc->add_option("--ks", cfg.run.k_s, "bias scale K_s");
    runc->add_option("--time", cfg.run.total_time, "total evolution time T");
    runc->add_option("--steps", cfg.run.n_steps, "Trotter steps");
    runc->add_option("--prune", cfg.prune, "theta: number, high, low, none or inf");
    runc->add_option("--seed", cfg.run.seed, "master seed");
    runc->add_option("--cap", cfg.run.qubit_cap, "statevector qubit cap");
    runc->add_flag("!--no-baseline", cfg.baseline, "skip the uniform random arm");
    runc->add_option("-o,--out", cfg.out, "output directory");

    auto *base = app.add_subcommand("baseline", "sample uniform random bitstrings");
    base->add_option("-H,--hamiltonian", ham_path, "Hamiltonian JSON")->required();
    base->add_option("-s,--sequence", cfg.sequence, "peptide, if the file has none");
    base->add_option("--shots", shots, "number of samples");
    base->add_option("--seed", seed, "seed");
    base->add_option("-o,--out", out_path, "CSV path (stdout if absent)");

    auto *post = app.add_subcommand("postprocess", "apply repair pipelines to stored samples");
    post->add_option("--samples", pp.samples, "sample CSV")->required();
    post->add_option("-H,--hamiltonian", pp.hamiltonian, "Hamiltonian JSON")->required();
    post->add_option("-s,--sequence", pp.sequence, "peptide, if the file has none");
    post->add_option("--arm", pp.arm, "report arm")->check(CLI::IsMember({"quantum", "random"}));
    post->add_option("--pipeline", pp.pipeline, "consensus, repair or both")
        ->check(CLI::IsMember({"consensus", "repair", "both"}));
    post->add_option("--k", pp.consensus.k, "top-k cut");
    post->add_option("--pool", pp.consensus.pool_size, "geometry pool size");
    post->add_option("--attempts", pp.consensus.max_attempts, "random walks tried for the pool");
    post->add_option("--seed", pp.consensus.seed, "seed");
    post->add_option("--ref", pp.ref, "RefResult JSON supplying E_ref");
    post->add_option("-r,--report", pp.report, "report JSON (created or updated)");

    auto *analyze = app.add_subcommand("analyze", "emit stage CSVs and a summary from a report");
    analyze->add_option("-r,--report", report_path, "report JSON")->required();
    analyze->add_option("-o,--out", analyze_out, "output directory");

    auto *ref = app.add_subcommand("refsolve", "classical reference energy");
    ref->add_option("-s,--sequence", cfg.sequence, "peptide")->required();
    ref->add_option("-m,--matrix", cfg.matrix, "hp, mj, or a matrix file");
    ref->add_option("--method", method, "exact or ga")->check(CLI::IsMember({"exact", "ga"}));
    ref->add_option("--max-residues", max_residues, "enumeration cap");
    ref->add_option("--seed", ga.seed, "GA seed");
    ref->add_option("--population", ga.population, "GA population");
    ref->add_option("--generations", ga.max_generations, "GA generation cap");
    ref->add_option("--patience", ga.patience, "GA convergence patience");
    ref->add_option("-o,--out", out_path, "write JSON here as well");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (build->parsed()) {
            return cmd_build(ctx, cfg, out_path);
        }
        if (runc->parsed()) {
            if (!config_path.empty()) {
                // Re-parse so command-line flags override file values.
                ExperimentConfig from_file;
                apply_config_file(from_file, config_path);
                cfg = from_file;
                app.clear();
                app.parse(argc, argv);
            }
            if (cfg.sequence.empty()) {
                throw ValidationError("no peptide sequence given (--sequence or config 'sequence')");
            }
            return cmd_run(ctx, cfg);
        }
        if (base->parsed()) {
            return cmd_baseline(ctx, ham_path, cfg.sequence, shots, seed, out_path);
        }
        if (post->parsed()) {
            return cmd_postprocess(ctx, pp);
        }
        if (analyze->parsed()) {
            return cmd_analyze(ctx, report_path, analyze_out);
        }
        if (ref->parsed()) {
            return cmd_refsolve(ctx, cfg, method, max_residues, ga, out_path);
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace tetrafold::cli
