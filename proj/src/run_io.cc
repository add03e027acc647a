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

#include "mpsim/run_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mpsim {

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    while (true) {
        const size_t next = line.find(sep, pos);
        out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) {
            return out;
        }
        pos = next + 1;
    }
}

double to_double(std::string_view s) {
    // from_chars for double is available in gcc 11.
    double v = 0.0;
    s = trim(s);
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

std::string format_sample_row(const Sample &r) {
    std::string out;
    for (double v : {r.s, r.energy_normalized, r.energy_raw, r.norm_squared, r.entropy_half_cut,
                     r.success_normalized, r.success_raw, r.discarded_cumulative}) {
        if (!out.empty()) {
            out += ',';
        }
        out += fmt_double(v);
    }
    return out;
}

CsvSink::CsvSink(std::ostream &out) : out_(out) {
    out_ << kRunCsvHeader << '\n';
}

void CsvSink::on_sample(const Sample &sample) {
    out_ << format_sample_row(sample) << '\n';
}

SpectraSink::SpectraSink(std::ostream &out, std::vector<int> cuts) : out_(out), cuts_(std::move(cuts)) {
    out_ << kSpectraCsvHeader << '\n';
}

void SpectraSink::on_state(const Sample &sample, const MpsState &state) {
    for (int cut : cuts_) {
        const SchmidtSpectrum sp = schmidt_spectrum(state, cut);
        for (size_t a = 0; a < sp.values.size(); ++a) {
            out_ << sample.step << ',' << fmt_double(sample.s) << ',' << cut << ',' << a + 1 << ','
                 << fmt_double(sp.values[a]) << '\n';
        }
    }
}

void TeeSink::on_sample(const Sample &sample) {
    for (auto *s : sinks_) {
        s->on_sample(sample);
    }
}

void TeeSink::on_state(const Sample &sample, const MpsState &state) {
    for (auto *s : sinks_) {
        s->on_state(sample, state);
    }
}

std::vector<double> select_spectrum(std::string_view spectra_csv, int cut, double s_point) {
    std::map<int, std::pair<double, std::vector<double>>> by_step;
    bool header = true;
    int line_no = 0;
    for (std::string_view line : split(spectra_csv, '\n')) {
        ++line_no;
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (header) {
            if (line != kSpectraCsvHeader) {
                throw std::invalid_argument("spectra CSV: unexpected header");
            }
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 5) {
            throw std::invalid_argument("spectra CSV: malformed line " + std::to_string(line_no));
        }
        if (static_cast<int>(to_double(f[2])) != cut) {
            continue;
        }
        auto &entry = by_step[static_cast<int>(to_double(f[0]))];
        entry.first = to_double(f[1]);
        entry.second.push_back(to_double(f[4]));
    }
    const std::vector<double> *best = nullptr;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto &[step, entry] : by_step) {
        const double dist = std::abs(entry.first - s_point);
        if (dist < best_dist) {
            best_dist = dist;
            best = &entry.second;
        }
    }
    if (best == nullptr) {
        throw std::invalid_argument("spectra CSV: no rows for cut " + std::to_string(cut));
    }
    return *best;
}

nlohmann::json config_to_json(const RunConfig &c, const Schedule &schedule) {
    return nlohmann::json{
        {"T", schedule.total_time()},
        {"delta", schedule.delta()},
        {"inner_delta", schedule.inner_delta()},
        {"steps", schedule.steps()},
        {"chi", c.chi_cap},
        {"renormalize", c.renormalize_after_truncation},
        {"stride", c.observable_stride},
        {"sign", c.sign == EvolutionSign::minus ? "-" : "+"},
        {"seed", c.seed},
        {"lambda_floor", c.lambda_floor},
        {"return_mode", c.return_mode == ReturnMode::deferred ? "deferred" : "eager"},
        {"solver", c.solver == SchmidtSolver::svd ? "svd" : "density_matrix"},
    };
}

nlohmann::json record_to_json(const RunRecord &r) {
    return nlohmann::json{
        {"solved", r.solved},
        {"argmax_bits", r.argmax_bits},
        {"argmax_probability", r.argmax_probability},
        {"argmax_exact", r.argmax_exact},
        {"final_norm2", r.final_norm_squared},
        {"discarded_total", r.discarded_total},
        {"samples", r.samples.size()},
        {"one_qubit_gates", r.counters.one_qubit},
        {"two_qubit_gates", r.counters.two_qubit},
        {"swaps", r.counters.swaps},
        {"fused_swaps", r.counters.fused_swaps},
        {"naive_swaps", r.naive_swaps},
        {"swap_saving", r.swap_saving()},
        {"wall_seconds", r.wall_seconds},
    };
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        }
        std::string_view key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') {
            key.remove_prefix(1);
        }
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        }
        out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

ExactCoverInstance load_instance(const std::filesystem::path &path) {
    return parse_instance(read_text_file(path));
}

}  // namespace mpsim
