// Copyright 2026 The pqtele Authors
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

// pqtele: sweeps, census and point evaluations for noisy probabilistic teleportation.
//
// Exit codes: 0 success, 1 bad arguments or I/O failure, 2 every optimization was infeasible.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pqt/csv.h"
#include "pqt/scenario.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct NoiseArgs {
    int scenario = 0;
    std::string noise = "NONE,NONE,NONE";
    double p_input = 0;
    double p_alice = 0;
    double p_bob = 0;
    double p = 0;
};

struct SearchArgs {
    std::vector<std::string> targets;
    std::string theta_range;
    std::string phi_range;
    std::string range_reading = "literal";
    double q_min = 1e-8;
    size_t grid = 64;
    size_t refine_iters = 60;
    bool no_prefer_success = false;
    unsigned jobs = 0;
};

struct OutputArgs {
    std::string out = "-";
    std::string outcomes_out;
};

void add_noise_options(CLI::App *cmd, NoiseArgs &a) {
    cmd->add_option("--scenario", a.scenario, "1, 2, 3, or 0 for free (p_I, p_A, p_B)")
        ->check(CLI::Range(0, 3))
        ->capture_default_str();
    cmd->add_option("--noise", a.noise, "Noise triple (input,Alice,Bob), e.g. AD,NONE,PF")->capture_default_str();
    cmd->add_option("--p-input", a.p_input, "p_I")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p-alice", a.p_alice, "p_A (scenario 0)")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p-bob", a.p_bob, "p_B")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p", a.p, "Bound probability: p_A = p_B (scenario 2) or p_I = p_A (scenario 3)")
        ->check(CLI::Range(0.0, 1.0));
}

void add_search_options(CLI::App *cmd, SearchArgs &a, bool with_targets) {
    if (with_targets) {
        cmd->add_option("--target", a.targets, "det, j1..j4 or set:1,2,4 (repeatable)");
    }
    cmd->add_option("--theta-range", a.theta_range, "lo:hi; disables automatic ranges");
    cmd->add_option("--phi-range", a.phi_range, "lo:hi; disables automatic ranges");
    cmd->add_option("--range-reading", a.range_reading,
                    "Upper bound of the automatic restricted range: literal (2.984) or fraction (0.95 pi/2)")
        ->check(CLI::IsMember({"literal", "fraction"}))
        ->capture_default_str();
    cmd->add_option("--qmin", a.q_min, "Minimal acceptable success rate")->capture_default_str();
    cmd->add_option("--grid", a.grid, "Coarse grid points per axis")->check(CLI::Range(2, 4096))->capture_default_str();
    cmd->add_option("--refine-iters", a.refine_iters, "Line-search refinement rounds")->capture_default_str();
    cmd->add_flag("--no-prefer-success", a.no_prefer_success,
                  "Report whichever optimal point refinement lands on instead of the highest-success one");
    cmd->add_option("--jobs", a.jobs, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_output_options(CLI::App *cmd, OutputArgs &a, bool with_outcomes) {
    cmd->add_option("--out", a.out, "Output CSV ('-' for stdout)")->capture_default_str();
    if (with_outcomes) {
        cmd->add_option("--outcomes-out", a.outcomes_out, "Companion per-outcome CSV (Q-bar, F-bar per j)");
    }
}

pqt::Range parse_range(const std::string &text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("range must look like lo:hi, got '" + text + "'");
    }
    try {
        return pqt::Range{std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::logic_error &) {
        throw std::invalid_argument("range bounds must be numbers, got '" + text + "'");
    }
}

std::vector<pqt::Target> parse_targets(const std::vector<std::string> &texts) {
    std::vector<pqt::Target> out;
    for (const auto &t : texts) {
        out.push_back(pqt::Target::parse(t));
    }
    if (out.empty()) {
        out.push_back(pqt::Target::deterministic());
    }
    return out;
}

pqt::RunSettings make_settings(const SearchArgs &a) {
    pqt::RunSettings s;
    s.search.q_min = a.q_min;
    s.search.coarse_grid = a.grid;
    s.search.refine_iters = a.refine_iters;
    s.search.prefer_success = !a.no_prefer_success;
    s.range_reading = pqt::parse_range_reading(a.range_reading);
    s.jobs = a.jobs;
    if (!a.theta_range.empty() || !a.phi_range.empty()) {
        s.auto_ranges = false;
        if (!a.theta_range.empty()) {
            s.search.theta_range = parse_range(a.theta_range);
        }
        if (!a.phi_range.empty()) {
            s.search.phi_range = parse_range(a.phi_range);
        }
    }
    pqt::validate(s.search);
    return s;
}

pqt::ScenarioSpec make_spec(const NoiseArgs &a) {
    pqt::ScenarioSpec spec;
    spec.scenario = a.scenario;
    spec.kinds = pqt::parse_arrangement_code(a.noise);
    spec.p_input = a.p_input;
    spec.p_alice = a.p_alice;
    spec.p_bob = a.p_bob;
    spec.p = a.p;
    return spec;
}

std::string fmt(double x) {
    return pqt::format_number(x);
}

std::vector<std::string> echo_search(const SearchArgs &a, const pqt::RunSettings &s) {
    std::vector<std::string> out;
    if (s.auto_ranges) {
        pqt::Range r = pqt::restricted_range(s.range_reading);
        out.push_back("ranges: auto (full [0, pi/2]; [" + fmt(r.lo) + ", " + fmt(r.hi) +
                      "] when amplitude damping acts on the pair; reading " +
                      std::string(pqt::range_reading_name(s.range_reading)) + ")");
    } else {
        out.push_back("theta_range: " + fmt(s.search.theta_range.lo) + ":" + fmt(s.search.theta_range.hi));
        out.push_back("phi_range: " + fmt(s.search.phi_range.lo) + ":" + fmt(s.search.phi_range.hi));
    }
    out.push_back("q_min: " + fmt(a.q_min));
    out.push_back("grid: " + std::to_string(a.grid) + " refine_iters: " + std::to_string(a.refine_iters));
    out.push_back(std::string("prefer_success: ") + (s.search.prefer_success ? "yes" : "no"));
    out.push_back("quadrature: gauss-legendre " + std::to_string(s.search.quadrature.u_nodes.size()) + " x " +
                  std::to_string(s.search.quadrature.gamma_count) + " phases");
    return out;
}

std::vector<std::string> echo_noise(const NoiseArgs &a) {
    return {"scenario: " + std::to_string(a.scenario), "noise: " + a.noise,
            "p_I: " + fmt(a.p_input) + " p_A: " + fmt(a.p_alice) + " p_B: " + fmt(a.p_bob) + " p: " + fmt(a.p)};
}

// Writes to stdout for "-", otherwise atomically to the named file.
void emit(const std::string &path, const std::string &contents) {
    if (path == "-" || path.empty()) {
        std::cout << contents;
        std::cout.flush();
        if (!std::cout) {
            throw std::runtime_error("write to stdout failed");
        }
        return;
    }
    pqt::write_file_atomic(path, contents);
}

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit_or_throw(const std::string &path, const std::string &contents) {
    try {
        emit(path, contents);
    } catch (const std::exception &e) {
        throw IoError(e.what());
    }
}

int run_sweep_cmd(const NoiseArgs &n, const SearchArgs &a, const OutputArgs &o, const std::string &sweep_text,
                  const std::string &command) {
    pqt::ScenarioSpec spec = make_spec(n);
    spec.targets = parse_targets(a.targets);
    if (sweep_text.empty()) {
        // A single point: a degenerate sweep over an axis that is free in this scenario.
        pqt::Axis axis = n.scenario == 2 ? pqt::Axis::PInput : pqt::Axis::PBob;
        double value = n.scenario == 2 ? n.p_input : n.p_bob;
        spec.sweep = pqt::SweepAxis{axis, value, value, 1};
    } else {
        spec.sweep = pqt::parse_sweep(sweep_text);
    }
    pqt::RunSettings settings = make_settings(a);
    pqt::SweepResult result = pqt::run_sweep(spec, settings);

    std::vector<std::string> comments = {"pqtele " + command};
    for (auto &c : echo_noise(n)) {
        comments.push_back(std::move(c));
    }
    if (!sweep_text.empty()) {
        comments.push_back("sweep: " + sweep_text);
    }
    std::string targets = "targets:";
    for (const auto &t : spec.targets) {
        targets += " " + t.label();
    }
    comments.push_back(targets);
    for (auto &c : echo_search(a, settings)) {
        comments.push_back(std::move(c));
    }

    std::ostringstream rows;
    pqt::write_sweep_csv(rows, comments, result.rows);
    emit_or_throw(o.out, rows.str());
    if (!o.outcomes_out.empty()) {
        std::ostringstream outcomes;
        pqt::write_outcome_csv(outcomes, comments, result.outcomes);
        emit_or_throw(o.outcomes_out, outcomes.str());
    }
    return result.infeasible_everywhere() ? kExitInfeasible : 0;
}

int run_census_cmd(const SearchArgs &a, const OutputArgs &o, const std::vector<double> &levels) {
    pqt::RunSettings settings = make_settings(a);
    pqt::CensusTable table = pqt::run_census(settings, levels);
    std::vector<std::string> comments = {"pqtele census"};
    std::string lv = "levels:";
    for (double l : levels) {
        lv += " " + fmt(l);
    }
    comments.push_back(lv);
    comments.push_back("tie_tolerance: " + fmt(pqt::kTieTolerance));
    for (auto &c : echo_search(a, settings)) {
        comments.push_back(std::move(c));
    }
    std::ostringstream out;
    pqt::write_census_csv(out, comments, table);
    emit_or_throw(o.out, out.str());
    for (const auto &c : table.cases) {
        for (const auto &l : c.levels) {
            if (l.status != "infeasible") {
                return 0;
            }
        }
    }
    return kExitInfeasible;
}

int run_eval_cmd(const NoiseArgs &n, const OutputArgs &o, double theta, double phi, const std::string &set_text,
                 size_t mc_samples, uint64_t seed) {
    pqt::Arrangement arr = pqt::bind(make_spec(n));
    std::vector<int> outcomes = pqt::Target::parse("set:" + set_text).outcomes();
    pqt::ChannelParams params{theta, phi};
    pqt::FixedEval eval = pqt::run_fixed_eval(arr, params, outcomes);
    std::optional<pqt::MonteCarloReport> mc;
    if (mc_samples > 0) {
        mc = pqt::monte_carlo_average(params, arr, mc_samples, seed);
    }

    std::ostringstream out;
    out << "# pqtele eval\n";
    for (const auto &c : echo_noise(n)) {
        out << "# " << c << "\n";
    }
    out << "# arrangement: " << pqt::arrangement_code(arr) << "\n";
    out << "# theta: " << fmt(theta) << " phi: " << fmt(phi) << " concurrence: "
        << fmt(pqt::channel_concurrence(theta)) << "\n";
    if (mc) {
        out << "# monte_carlo: samples " << mc_samples << " seed " << seed << "\n";
    }
    out << "outcome,success,fidelity";
    if (mc) {
        out << ",success_mc,success_se,fidelity_mc,fidelity_se";
    }
    out << "\n";
    auto opt = [](const std::optional<double> &v) {
        return v ? fmt(*v) : std::string("nan");
    };
    for (size_t j = 0; j < 4; ++j) {
        out << "j" << j + 1 << "," << fmt(eval.report.qbar[j]) << "," << opt(eval.report.fbar[j]);
        if (mc) {
            out << "," << fmt(mc->report.qbar[j]) << "," << fmt(mc->qbar_se[j]) << "," << opt(mc->report.fbar[j])
                << "," << fmt(mc->fbar_se[j]);
        }
        out << "\n";
    }
    out << "det,1," << fmt(eval.report.f_det);
    if (mc) {
        out << ",1,0," << fmt(mc->report.f_det) << "," << fmt(mc->f_det_se);
    }
    out << "\n";
    out << "\"" << pqt::Target::set(outcomes).label() << "\"," << fmt(eval.postselected.success) << ","
        << fmt(eval.postselected.efficiency);
    if (mc) {
        out << ",,,,";
    }
    out << "\n";
    emit_or_throw(o.out, out.str());
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noisy probabilistic quantum teleportation: optimal efficiencies and success rates"};
    app.require_subcommand(1);

    NoiseArgs noise;
    SearchArgs search;
    OutputArgs output;

    std::string sweep_text;
    CLI::App *sweep = app.add_subcommand("sweep", "Optimize targets along one noise axis");
    add_noise_options(sweep, noise);
    add_search_options(sweep, search, true);
    add_output_options(sweep, output, true);
    sweep->add_option("--sweep", sweep_text, "<axis>:<start>:<stop>:<step>, axis one of p_I, p_A, p_B, p")
        ->required();

    CLI::App *optimize = app.add_subcommand("optimize", "Optimize targets at one noise point");
    add_noise_options(optimize, noise);
    add_search_options(optimize, search, true);
    add_output_options(optimize, output, true);

    std::vector<double> levels(pqt::kCensusLevels.begin(), pqt::kCensusLevels.end());
    CLI::App *census = app.add_subcommand("census", "Classify all 48 scenario arrangements");
    add_search_options(census, search, false);
    add_output_options(census, output, false);
    census->add_option("--levels", levels, "Noise levels per free axis")->delimiter(',')->capture_default_str();

    double theta = pqt::kPi / 4;
    double phi = pqt::kPi / 4;
    std::string set_text = "1,2,3,4";
    size_t mc_samples = 0;
    uint64_t seed = 1;
    CLI::App *eval = app.add_subcommand("eval", "Evaluate every outcome at a fixed (theta, phi)");
    add_noise_options(eval, noise);
    add_output_options(eval, output, false);
    eval->add_option("--theta", theta, "Channel angle")->capture_default_str();
    eval->add_option("--phi", phi, "Measurement angle")->capture_default_str();
    eval->add_option("--postselect", set_text, "Accepted outcomes, e.g. 1,2,4")->capture_default_str();
    eval->add_option("--mc-samples", mc_samples, "Also estimate by Monte Carlo with this many inputs");
    eval->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            return run_sweep_cmd(noise, search, output, sweep_text, "sweep");
        }
        if (optimize->parsed()) {
            return run_sweep_cmd(noise, search, output, "", "optimize");
        }
        if (census->parsed()) {
            return run_census_cmd(search, output, levels);
        }
        if (eval->parsed()) {
            return run_eval_cmd(noise, output, theta, phi, set_text, mc_samples, seed);
        }
    } catch (const IoError &e) {
        std::cerr << "pqtele: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception &e) {
        std::cerr << "pqtele: " << e.what() << "\n";
        return kExitError;
    }
    return 0;
}
