// Copyright 2026 The mpsim Authors
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

// Command-line front end: generate, run, sweep, min-t, fit-schmidt, oracle-check.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpsim/adiabatic.h"
#include "mpsim/analysis.h"
#include "mpsim/exact_cover.h"
#include "mpsim/oracle_check.h"
#include "mpsim/run_io.h"
#include "mpsim/sweep.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitNotSolved = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

constexpr int kMTargetAttempts = 4096;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvolutionFlags {
    double total_time = 100.0;
    double delta = 0.125;
    std::optional<double> inner_delta;
    int chi = 8;
    int stride = 1;
    bool renormalize = false;
    std::string sign = "-";
    uint64_t seed = 1;

    void add_to(CLI::App *app, bool with_chi = true, bool with_t = true) {
        if (with_t) {
            app->add_option("--T", total_time, "Total evolution time")->check(CLI::PositiveNumber);
        }
        app->add_option("--delta", delta, "Time step between Hamiltonian updates")->check(CLI::PositiveNumber);
        app->add_option("--inner-delta", inner_delta, "Trotter substep (default: delta)")->check(CLI::PositiveNumber);
        if (with_chi) {
            app->add_option("--chi", chi, "Bond dimension cap")->check(CLI::PositiveNumber);
        }
        app->add_option("--stride", stride, "Sample observables every k steps")->check(CLI::PositiveNumber);
        app->add_flag("--renormalize", renormalize, "Rescale Schmidt values after each truncation");
        app->add_option("--sign", sign, "Exponent sign of exp(sign i t H)")->check(CLI::IsMember({"-", "+"}));
    }

    mpsim::RunConfig config() const {
        mpsim::RunConfig c;
        c.chi_cap = chi;
        c.observable_stride = stride;
        c.renormalize_after_truncation = renormalize;
        c.sign = sign == "+" ? mpsim::EvolutionSign::plus : mpsim::EvolutionSign::minus;
        c.seed = seed;
        return c;
    }
};

// Instances come from files or from the generator (seed, seed + 1, ...).
struct InstanceFlags {
    std::vector<std::string> files;
    int n = 0;
    uint64_t seed = 1;
    int count = 1;
    std::optional<int> m_target;

    void add_to(CLI::App *app, bool many) {
        if (many) {
            app->add_option("--instances", files, "Instance files");
            app->add_option("--count", count, "Number of generated instances")->check(CLI::PositiveNumber);
        } else {
            app->add_option("--instance", files, "Instance file")->expected(0, 1);
        }
        app->add_option("--n", n, "Qubits of a generated instance");
        app->add_option("--seed", seed, "Generator seed");
        app->add_option("--m-target", m_target, "Only accept generated instances with this many clauses");
    }

    struct Loaded {
        mpsim::ExactCoverInstance instance;
        std::string label;
        uint64_t seed;
    };

    std::vector<Loaded> load() const {
        std::vector<Loaded> out;
        if (!files.empty()) {
            for (const auto &f : files) {
                out.push_back({mpsim::load_instance(f), fs::path(f).stem().string(), 0});
            }
            return out;
        }
        if (n == 0) {
            throw UsageError("give instance files or --n for generated instances");
        }
        uint64_t s = seed;
        for (int k = 0; k < count; ++k) {
            auto [inst, used] = generate(n, s, m_target);
            out.push_back({std::move(inst), "n" + std::to_string(n) + "_s" + std::to_string(used), used});
            s = used + 1;
        }
        return out;
    }

    static std::pair<mpsim::ExactCoverInstance, uint64_t> generate(int n, uint64_t seed, std::optional<int> m_target) {
        for (int attempt = 0; attempt < kMTargetAttempts; ++attempt) {
            mpsim::ExactCoverInstance inst = mpsim::generate_hard_instance(n, seed);
            if (!m_target || inst.num_clauses() == *m_target) {
                return {std::move(inst), seed};
            }
            ++seed;
        }
        throw std::runtime_error("no instance with m = " + std::to_string(*m_target) + " among " +
                                 std::to_string(kMTargetAttempts) + " seeds");
    }
};

std::ostream &open_out(const std::optional<std::string> &path, std::unique_ptr<std::ofstream> &holder) {
    if (!path || *path == "-") {
        return std::cout;
    }
    const fs::path p(*path);
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    holder = std::make_unique<std::ofstream>(p);
    if (!*holder) {
        throw std::runtime_error("cannot write " + p.string());
    }
    return *holder;
}

int cmd_generate(int n, int count, uint64_t seed, std::optional<int> m_target, const std::string &out_dir) {
    json manifest = json::array();
    uint64_t s = seed;
    for (int k = 0; k < count; ++k) {
        auto [inst, used] = InstanceFlags::generate(n, s, m_target);
        if (mpsim::count_solutions(inst) != 1) {
            throw std::runtime_error("generated instance failed re-verification (seed " + std::to_string(used) + ")");
        }
        const std::string name = "instance_n" + std::to_string(n) + "_s" + std::to_string(used) + ".txt";
        mpsim::write_text_file(fs::path(out_dir) / name, mpsim::serialize_instance(inst));
        manifest.push_back({{"file", name},
                            {"seed", used},
                            {"n", n},
                            {"m", inst.num_clauses()},
                            {"solution", *inst.known_solution()}});
        s = used + 1;
    }
    mpsim::write_text_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    return kExitSolved;
}

int cmd_run(const InstanceFlags &source,
            const EvolutionFlags &ev,
            const std::optional<std::string> &out,
            const std::optional<std::string> &spectra_path,
            std::vector<int> cuts,
            const std::optional<std::string> &manifest_path) {
    const auto loaded = source.load();
    const auto &inst = loaded.front().instance;
    const mpsim::Schedule schedule(ev.total_time, ev.delta, ev.inner_delta);
    const mpsim::RunConfig config = ev.config();

    std::unique_ptr<std::ofstream> out_file;
    std::ostream &csv = open_out(out, out_file);
    mpsim::CsvSink csv_sink(csv);
    std::vector<mpsim::RecordSink *> sinks{&csv_sink};
    std::unique_ptr<std::ofstream> spectra_file;
    std::unique_ptr<mpsim::SpectraSink> spectra_sink;
    if (spectra_path) {
        if (cuts.empty()) {
            cuts.push_back(std::max(1, inst.num_qubits() / 2));
        }
        spectra_sink = std::make_unique<mpsim::SpectraSink>(open_out(spectra_path, spectra_file), cuts);
        sinks.push_back(spectra_sink.get());
    }
    mpsim::TeeSink tee(sinks);

    json manifest{{"instance", {{"label", loaded.front().label}, {"n", inst.num_qubits()}, {"m", inst.num_clauses()}}},
                  {"config", mpsim::config_to_json(config, schedule)},
                  {"version", "mpsim 1.0.0"}};
    int code = kExitSolved;
    try {
        const mpsim::RunRecord rec = mpsim::run(inst, schedule, config, &tee);
        manifest["result"] = mpsim::record_to_json(rec);
        code = rec.solved ? kExitSolved : kExitNotSolved;
        std::cerr << (rec.solved ? "solved" : "not solved") << ": argmax " << rec.argmax_bits << " p "
                  << rec.argmax_probability << " norm2 " << rec.final_norm_squared << "\n";
    } catch (const mpsim::NumericalError &e) {
        manifest["result"] = {{"aborted", true}, {"reason", e.what()}};
        code = kExitNumerical;
        std::cerr << "numerical abort: " << e.what() << "\n";
    }
    csv.flush();
    std::optional<std::string> mpath = manifest_path;
    if (!mpath && out && *out != "-") {
        mpath = *out + ".json";
    }
    if (mpath) {
        mpsim::write_text_file(*mpath, manifest.dump(2) + "\n");
    }
    return code;
}

std::vector<std::string> labels_of(const std::vector<InstanceFlags::Loaded> &loaded) {
    std::vector<std::string> out;
    for (const auto &l : loaded) {
        out.push_back(l.label);
    }
    return out;
}

std::vector<mpsim::ExactCoverInstance> instances_of(const std::vector<InstanceFlags::Loaded> &loaded) {
    std::vector<mpsim::ExactCoverInstance> out;
    for (const auto &l : loaded) {
        out.push_back(l.instance);
    }
    return out;
}

int cmd_sweep(const InstanceFlags &source,
              const EvolutionFlags &ev,
              const std::vector<int> &chis,
              const std::vector<double> &times,
              int workers,
              const std::string &out_dir) {
    const auto loaded = source.load();
    mpsim::SweepPlan plan;
    plan.instances = instances_of(loaded);
    plan.labels = labels_of(loaded);
    plan.chis = chis;
    plan.total_times = times;
    plan.delta = ev.delta;
    plan.inner_delta = ev.inner_delta;
    plan.base = ev.config();
    plan.out_dir = fs::path(out_dir) / "runs";
    plan.workers = workers;
    const auto rows = mpsim::run_sweep(plan);
    std::ostringstream csv;
    csv << mpsim::kSweepCsvHeader << '\n';
    for (const auto &r : rows) {
        csv << mpsim::format_sweep_row(r) << '\n';
    }
    mpsim::write_text_file(fs::path(out_dir) / "sweep.csv", csv.str());
    json manifest{{"chis", chis}, {"T", times}, {"workers", workers}, {"instances", plan.labels},
                  {"config", mpsim::config_to_json(plan.base, mpsim::Schedule(times.front(), ev.delta, ev.inner_delta))}};
    mpsim::write_text_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
    return kExitSolved;
}

int cmd_min_t(const InstanceFlags &source,
              const EvolutionFlags &ev,
              const mpsim::TLadder &ladder,
              int workers,
              const std::string &out_dir) {
    const auto loaded = source.load();
    const auto rows = mpsim::run_min_t(instances_of(loaded), labels_of(loaded), ladder, ev.config(), ev.delta,
                                       ev.inner_delta, workers);
    std::ostringstream per;
    per << mpsim::kMinTCsvHeader << '\n';
    bool all_solved = true;
    for (const auto &r : rows) {
        per << mpsim::format_min_t_row(r) << '\n';
        all_solved = all_solved && r.outcome.t_min.has_value();
        if (!r.outcome.t_min) {
            std::cerr << "exhausted ladder: " << r.label << "\n";
        }
    }
    std::ostringstream summary;
    summary << mpsim::kMinTSummaryHeader << '\n';
    for (const auto &s : mpsim::summarize_min_t(rows)) {
        summary << mpsim::format_min_t_summary(s) << '\n';
    }
    mpsim::write_text_file(fs::path(out_dir) / "min_t.csv", per.str());
    mpsim::write_text_file(fs::path(out_dir) / "min_t_summary.csv", summary.str());
    std::cout << summary.str();
    return all_solved ? kExitSolved : kExitNotSolved;
}

int cmd_fit_schmidt(const std::string &spectra, int cut, double s_point) {
    const auto lambdas = mpsim::select_spectrum(mpsim::read_text_file(spectra), cut, s_point);
    const mpsim::FitResult f = mpsim::fit_schmidt_decay(lambdas);
    std::cout.precision(12);
    std::cout << "b,c,d,residual,points\n" << f.b << ',' << f.c << ',' << f.d << ',' << f.residual << ','
              << lambdas.size() << '\n';
    return kExitSolved;
}

int cmd_oracle_check(const mpsim::OracleCheckOptions &opt, bool degrade) {
    const mpsim::OracleCheckReport report = mpsim::run_oracle_check(opt);
    double worst = 0.0;
    for (const auto &c : report.cases) {
        worst = std::max(worst, c.deviation);
        if (!c.passed) {
            std::cerr << "FAIL " << c.name << " seed " << c.seed << " deviation " << c.deviation << " tolerance "
                      << c.tolerance << "\n  trace: " << c.trace << "\n";
        }
    }
    std::cout << (report.passed() ? "PASS" : "FAIL") << " oracle-check: " << report.cases.size()
              << " cases, max deviation " << worst << "\n";
    if (degrade) {
        const std::vector<int> chis{8, 4, 2};
        const auto dev = mpsim::degradation_study(opt.n_max, opt.seed, chis);
        std::cout << "chi,max_amplitude_deviation\n";
        for (size_t k = 0; k < chis.size(); ++k) {
            std::cout << chis[k] << ',' << dev[k] << '\n';
        }
    }
    return report.passed() ? kExitSolved : kExitNotSolved;
}

bool given_on_command_line(const std::vector<std::string> &args, const std::string &key) {
    const std::string flag = "--" + key;
    for (const auto &a : args) {
        if (a == flag || a.rfind(flag + "=", 0) == 0) {
            return true;
        }
    }
    return false;
}

// Splices key=value lines from --config files in after the subcommand name; keys
// also present on the command line are skipped so flags override the file.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    for (size_t k = 0; k < args.size(); ++k) {
        std::string path;
        size_t consumed = 0;
        if (args[k] == "--config" && k + 1 < args.size()) {
            path = args[k + 1];
            consumed = 2;
        } else if (args[k].rfind("--config=", 0) == 0) {
            path = args[k].substr(9);
            consumed = 1;
        } else {
            continue;
        }
        std::map<std::string, std::string> entries;
        try {
            entries = mpsim::parse_config_text(mpsim::read_text_file(path));
        } catch (const std::exception &e) {
            throw UsageError(std::string("config: ") + e.what());
        }
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(k),
                   args.begin() + static_cast<std::ptrdiff_t>(k + consumed));
        std::vector<std::string> inserted;
        for (const auto &[key, value] : entries) {
            if (given_on_command_line(args, key)) {
                continue;
            }
            inserted.push_back("--" + key);
            std::istringstream words(value);
            std::string w;
            while (words >> w) {
                inserted.push_back(w);
            }
        }
        const size_t at = std::min<size_t>(1, args.size());
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), inserted.begin(), inserted.end());
        return args;
    }
    return args;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"MPS simulator for adiabatic Exact Cover", "mpsim"};
    app.require_subcommand(1);

    int gen_n = 0;
    int gen_count = 1;
    uint64_t gen_seed = 1;
    std::optional<int> gen_m;
    std::string gen_out = ".";
    auto *generate = app.add_subcommand("generate", "Write hard instances and a manifest");
    generate->add_option("--n", gen_n, "Qubits")->required();
    generate->add_option("--count", gen_count, "Number of instances")->check(CLI::PositiveNumber);
    generate->add_option("--seed", gen_seed, "First seed");
    generate->add_option("--m-target", gen_m, "Only accept instances with this many clauses");
    generate->add_option("--out", gen_out, "Output directory");

    InstanceFlags run_src;
    EvolutionFlags run_ev;
    std::optional<std::string> run_out, run_spectra, run_manifest;
    std::vector<int> run_cuts;
    auto *run_cmd = app.add_subcommand("run", "Run one adiabatic evolution and write its CSV");
    run_src.add_to(run_cmd, false);
    run_ev.add_to(run_cmd);
    run_cmd->add_option("--out", run_out, "Run CSV path (default stdout)");
    run_cmd->add_option("--spectra", run_spectra, "Schmidt spectra CSV path");
    run_cmd->add_option("--cuts", run_cuts, "Cuts for the spectra dump (default: central)")->delimiter(',');
    run_cmd->add_option("--manifest", run_manifest, "JSON manifest path (default: <out>.json)");

    InstanceFlags sweep_src;
    EvolutionFlags sweep_ev;
    std::vector<int> sweep_chis{8};
    std::vector<double> sweep_times{100.0};
    int sweep_workers = 1;
    std::string sweep_out = "sweep_out";
    auto *sweep = app.add_subcommand("sweep", "Run every (instance, chi, T) combination");
    sweep_src.add_to(sweep, true);
    sweep_ev.add_to(sweep, false, false);
    sweep->add_option("--chi", sweep_chis, "Bond dimension list")->delimiter(',');
    sweep->add_option("--T", sweep_times, "Total time list (increasing)")->delimiter(',');
    sweep->add_option("--workers", sweep_workers, "Parallel runs")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "Output directory");

    InstanceFlags mt_src;
    EvolutionFlags mt_ev;
    mpsim::TLadder ladder;
    int mt_workers = 1;
    std::string mt_out = "min_t_out";
    auto *min_t = app.add_subcommand("min-t", "Smallest ladder T that solves each instance");
    mt_src.add_to(min_t, true);
    mt_ev.add_to(min_t, true, false);
    min_t->add_option("--T-start", ladder.start, "First ladder T")->check(CLI::PositiveNumber);
    min_t->add_option("--T-mult", ladder.multiplier, "Ladder multiplier");
    min_t->add_option("--T-max", ladder.max, "Largest ladder T");
    min_t->add_option("--workers", mt_workers, "Parallel instances")->check(CLI::PositiveNumber);
    min_t->add_option("--out", mt_out, "Output directory");

    std::string fit_spectra;
    int fit_cut = 0;
    double fit_s = 0.69;
    auto *fit = app.add_subcommand("fit-schmidt", "Fit log2 lambda_a = b + c/sqrt(a) + d sqrt(a)");
    fit->add_option("--spectra", fit_spectra, "Spectra CSV written by run --spectra")->required();
    fit->add_option("--cut", fit_cut, "Cut")->required();
    fit->add_option("--s", fit_s, "Interpolation point");

    mpsim::OracleCheckOptions oc;
    bool oc_degrade = false;
    std::optional<int> oc_chi;
    auto *oracle = app.add_subcommand("oracle-check", "Cross-check the MPS engine against the dense oracle");
    oracle->add_option("--n-max", oc.n_max, "Largest register")->check(CLI::Range(4, 12));
    oracle->add_option("--seed", oc.seed, "Corpus seed");
    oracle->add_option("--programs", oc.programs, "Random gate programs")->check(CLI::PositiveNumber);
    oracle->add_option("--chi", oc_chi, "Override chi (reduced chi shows truncation error)");
    oracle->add_flag("--tamper", oc.tamper, "Corrupt one gate; the unitarity pre-check must catch it");
    oracle->add_flag("--degrade", oc_degrade, "Also report deviations for chi in {8,4,2}");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(args);
    } catch (const UsageError &e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*generate) {
            return cmd_generate(gen_n, gen_count, gen_seed, gen_m, gen_out);
        }
        if (*run_cmd) {
            return cmd_run(run_src, run_ev, run_out, run_spectra, run_cuts, run_manifest);
        }
        if (*sweep) {
            sweep_ev.seed = sweep_src.seed;
            return cmd_sweep(sweep_src, sweep_ev, sweep_chis, sweep_times, sweep_workers, sweep_out);
        }
        if (*min_t) {
            return cmd_min_t(mt_src, mt_ev, ladder, mt_workers, mt_out);
        }
        if (*fit) {
            return cmd_fit_schmidt(fit_spectra, fit_cut, fit_s);
        }
        if (*oracle) {
            oc.chi = oc_chi;
            return cmd_oracle_check(oc, oc_degrade);
        }
    } catch (const mpsim::NumericalError &e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
