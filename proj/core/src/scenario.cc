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

#include "pqt/scenario.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pqt {

std::string_view axis_name(Axis axis) {
    switch (axis) {
        case Axis::PInput:
            return "p_I";
        case Axis::PAlice:
            return "p_A";
        case Axis::PBob:
            return "p_B";
        case Axis::PBound:
            return "p";
    }
    return "?";
}

Axis parse_axis(std::string_view text) {
    if (text == "p_I" || text == "p-input") {
        return Axis::PInput;
    }
    if (text == "p_A" || text == "p-alice") {
        return Axis::PAlice;
    }
    if (text == "p_B" || text == "p-bob") {
        return Axis::PBob;
    }
    if (text == "p") {
        return Axis::PBound;
    }
    throw std::invalid_argument("unknown sweep axis '" + std::string(text) + "' (expected p_I, p_A, p_B or p)");
}

double round12(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::vector<double> SweepAxis::points() const {
    if (!(step > 0) || !(stop >= start)) {
        throw std::invalid_argument("sweep needs step > 0 and stop >= start");
    }
    size_t n = static_cast<size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(n);
    for (size_t k = 0; k < n; ++k) {
        out[k] = round12(start + step * static_cast<double>(k));
    }
    return out;
}

SweepAxis parse_sweep(std::string_view text) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t colon = text.find(':', start);
        parts.emplace_back(text.substr(start, colon == text.npos ? text.npos : colon - start));
        if (colon == text.npos) {
            break;
        }
        start = colon + 1;
    }
    if (parts.size() != 4) {
        throw std::invalid_argument("sweep must look like <axis>:<start>:<stop>:<step>");
    }
    SweepAxis s;
    s.axis = parse_axis(parts[0]);
    try {
        s.start = std::stod(parts[1]);
        s.stop = std::stod(parts[2]);
        s.step = std::stod(parts[3]);
    } catch (const std::exception &) {
        throw std::invalid_argument("sweep bounds must be numbers: '" + std::string(text) + "'");
    }
    return s;
}

ScenarioSpec make_scenario(int scenario, NoiseKind input, NoiseKind other) {
    ScenarioSpec spec;
    spec.scenario = scenario;
    switch (scenario) {
        case 1:
            spec.kinds = {input, NoiseKind::None, other};
            spec.sweep.axis = Axis::PBob;
            break;
        case 2:
            spec.kinds = {input, other, other};
            spec.sweep.axis = Axis::PInput;
            break;
        case 3:
            spec.kinds = {input, input, other};
            spec.sweep.axis = Axis::PBob;
            break;
        default:
            throw std::invalid_argument("scenario must be 1, 2 or 3");
    }
    return spec;
}

namespace {

bool axis_is_free(int scenario, Axis axis) {
    switch (scenario) {
        case 0:
            return axis != Axis::PBound;
        case 1:
            return axis == Axis::PInput || axis == Axis::PBob;
        case 2:
            return axis == Axis::PInput || axis == Axis::PBound;
        case 3:
            return axis == Axis::PBound || axis == Axis::PBob;
    }
    return false;
}

}  // namespace

void validate(const ScenarioSpec &spec) {
    const auto &k = spec.kinds;
    switch (spec.scenario) {
        case 0:
            break;
        case 1:
            if (k[1] != NoiseKind::None) {
                throw std::invalid_argument("scenario 1 keeps Alice's half of the pair noiseless");
            }
            break;
        case 2:
            if (k[1] != k[2]) {
                throw std::invalid_argument("scenario 2 needs the same noise on both halves of the pair");
            }
            break;
        case 3:
            if (k[0] != k[1]) {
                throw std::invalid_argument("scenario 3 needs the same noise on both of Alice's qubits");
            }
            break;
        default:
            throw std::invalid_argument("scenario must be 0, 1, 2 or 3");
    }
    if (!axis_is_free(spec.scenario, spec.sweep.axis)) {
        throw std::invalid_argument("axis " + std::string(axis_name(spec.sweep.axis)) + " is not free in scenario " +
                                    std::to_string(spec.scenario));
    }
    if (spec.targets.empty()) {
        throw std::invalid_argument("at least one target is required");
    }
}

Arrangement bind(const ScenarioSpec &spec, double value) {
    ScenarioSpec s = spec;
    switch (spec.sweep.axis) {
        case Axis::PInput:
            s.p_input = value;
            break;
        case Axis::PAlice:
            s.p_alice = value;
            break;
        case Axis::PBob:
            s.p_bob = value;
            break;
        case Axis::PBound:
            s.p = value;
            break;
    }
    return bind(s);
}

Arrangement bind(const ScenarioSpec &spec) {
    const auto &k = spec.kinds;
    Arrangement arr;
    switch (spec.scenario) {
        case 1:
            arr = {{k[0], spec.p_input}, {NoiseKind::None, 0}, {k[2], spec.p_bob}};
            break;
        case 2:
            arr = {{k[0], spec.p_input}, {k[1], spec.p}, {k[2], spec.p}};
            break;
        case 3:
            arr = {{k[0], spec.p}, {k[1], spec.p}, {k[2], spec.p_bob}};
            break;
        default:
            arr = {{k[0], spec.p_input}, {k[1], spec.p_alice}, {k[2], spec.p_bob}};
            break;
    }
    validate(arr.input);
    validate(arr.alice);
    validate(arr.bob);
    return arr;
}

bool operator==(const SweepRow &a, const SweepRow &b) {
    auto same = [](double x, double y) {
        return x == y || (std::isnan(x) && std::isnan(y));
    };
    return a.scenario == b.scenario && a.arrangement == b.arrangement && same(a.p_I, b.p_I) && same(a.p_A, b.p_A) &&
           same(a.p_B, b.p_B) && a.target == b.target && same(a.theta_star, b.theta_star) &&
           same(a.phi_star, b.phi_star) && same(a.fidelity, b.fidelity) && same(a.success, b.success) &&
           same(a.concurrence, b.concurrence) && a.above_classical == b.above_classical && a.status == b.status;
}

SearchConfig config_for(const RunSettings &settings, const Arrangement &arr, const Target &target) {
    SearchConfig cfg = settings.search;
    cfg.target = target;
    if (settings.auto_ranges) {
        SearchConfig d = default_config(arr, target, settings.range_reading);
        cfg.theta_range = d.theta_range;
        cfg.phi_range = d.phi_range;
    }
    return cfg;
}

bool SweepResult::infeasible_everywhere() const {
    if (rows.empty()) {
        return false;
    }
    for (const auto &r : rows) {
        if (r.status != "infeasible") {
            return false;
        }
    }
    return true;
}

void parallel_for(size_t count, unsigned jobs, const std::function<void(size_t)> &fn) {
    unsigned workers = jobs ? jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<size_t>(workers, count));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

SweepResult run_sweep(const ScenarioSpec &spec, const RunSettings &settings) {
    validate(spec);
    std::vector<double> points = spec.sweep.points();
    size_t n_targets = spec.targets.size();

    std::vector<SweepRow> rows(points.size() * n_targets);
    std::vector<OutcomeRow> outcomes(rows.size());
    parallel_for(points.size(), settings.jobs, [&](size_t i) {
        Arrangement arr = bind(spec, points[i]);
        SearchConfig cfg = config_for(settings, arr, Target::deterministic());
        auto results = optimize_targets(arr, cfg, spec.targets);
        for (size_t t = 0; t < n_targets; ++t) {
            size_t idx = i * n_targets + t;
            SweepRow &row = rows[idx];
            row.scenario = spec.scenario;
            row.arrangement = arrangement_code(arr);
            row.p_I = round12(arr.input.p);
            row.p_A = round12(arr.alice.p);
            row.p_B = round12(arr.bob.p);
            row.target = spec.targets[t].label();
            OutcomeRow &out = outcomes[idx];
            out.row = idx;
            if (!results[t]) {
                double nan = std::nan("");
                row.theta_star = row.phi_star = row.fidelity = row.success = row.concurrence = nan;
                row.above_classical = false;
                row.status = "infeasible";
                out.qbar.fill(nan);
                out.fbar.fill(nan);
                out.f_det = nan;
                continue;
            }
            const OptResult &r = *results[t];
            row.theta_star = round12(r.theta_star);
            row.phi_star = round12(r.phi_star);
            row.fidelity = round12(r.value);
            row.success = round12(r.success);
            row.concurrence = round12(channel_concurrence(r.theta_star));
            row.above_classical = above_classical(row.fidelity);
            row.status = r.constrained_flag ? "ok-bound" : "ok";
            for (size_t j = 0; j < 4; ++j) {
                out.qbar[j] = round12(r.report.qbar[j]);
                // Unfloored, so that the outcomes always add back up to f_det.
                double q = r.report.qbar[j];
                out.fbar[j] = q > 0 ? round12(r.report.qf_bar[j] / q) : std::nan("");
            }
            out.f_det = round12(r.report.f_det);
        }
    });
    return SweepResult{std::move(rows), std::move(outcomes)};
}

FixedEval run_fixed_eval(const Arrangement &arr, const ChannelParams &params, std::span<const int> outcomes,
                         const QuadratureGrid &grid) {
    FixedEval out;
    out.report = average(params, arr, grid);
    out.outcomes.assign(outcomes.begin(), outcomes.end());
    out.postselected = average_postselected(out.report, outcomes);
    return out;
}

CensusTable run_census(const RunSettings &settings, std::span<const double> noise_levels) {
    if (noise_levels.empty()) {
        throw std::invalid_argument("census needs at least one noise level");
    }
    struct Job {
        size_t case_index;
        ScenarioSpec spec;
    };
    CensusTable table;
    table.noise_levels.assign(noise_levels.begin(), noise_levels.end());
    std::vector<Job> jobs;
    for (int scenario = 1; scenario <= 3; ++scenario) {
        for (NoiseKind first : kNoisyKinds) {
            for (NoiseKind second : kNoisyKinds) {
                ScenarioSpec spec = make_scenario(scenario, first, second);
                CensusCase c;
                c.scenario = scenario;
                c.kinds = spec.kinds;
                size_t case_index = table.cases.size();
                table.cases.push_back(std::move(c));
                for (double a : noise_levels) {
                    for (double b : noise_levels) {
                        ScenarioSpec s = spec;
                        // Free probabilities: scenario 1 (p_I, p_B), 2 (p_I, p), 3 (p, p_B).
                        if (scenario == 1) {
                            s.p_input = a;
                            s.p_bob = b;
                        } else if (scenario == 2) {
                            s.p_input = a;
                            s.p = b;
                        } else {
                            s.p = a;
                            s.p_bob = b;
                        }
                        jobs.push_back(Job{case_index, std::move(s)});
                    }
                }
            }
        }
    }

    std::vector<CensusLevel> levels(jobs.size());
    parallel_for(jobs.size(), settings.jobs, [&](size_t i) {
        CensusLevel &level = levels[i];
        level.arrangement = bind(jobs[i].spec);
        SearchConfig cfg = config_for(settings, level.arrangement, Target::deterministic());
        try {
            Classification c = classify(level.arrangement, cfg);
            level.det_value = c.deterministic.value;
            level.det_theta = c.deterministic.theta_star;
            level.det_phi = c.deterministic.phi_star;
            level.best_outcome = c.best_outcome;
            if (c.best_outcome > 0) {
                const OptResult &best = *c.outcomes[c.best_outcome - 1];
                level.best_value = best.value;
                level.best_success = best.success;
                level.best_theta = best.theta_star;
                level.best_phi = best.phi_star;
            }
            level.gap = c.gap;
            level.improved = c.improved;
        } catch (const InfeasibleError &) {
            level.status = "infeasible";
        }
    });

    for (size_t i = 0; i < jobs.size(); ++i) {
        CensusCase &c = table.cases[jobs[i].case_index];
        c.improved = c.improved || levels[i].improved;
        c.levels.push_back(std::move(levels[i]));
    }
    for (const auto &c : table.cases) {
        if (c.improved) {
            ++table.improved_counts[static_cast<size_t>(c.scenario - 1)];
        }
    }
    return table;
}

}  // namespace pqt
