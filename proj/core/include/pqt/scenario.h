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

#ifndef PQT_SCENARIO_H
#define PQT_SCENARIO_H

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pqt/ensemble.h"
#include "pqt/optimizer.h"

namespace pqt {

/// Which probability a sweep varies. Bound is the shared p of scenarios 2 (p_A = p_B) and 3 (p_I = p_A).
enum class Axis { PInput, PAlice, PBob, PBound };

std::string_view axis_name(Axis axis);  // p_I, p_A, p_B, p
Axis parse_axis(std::string_view text);

/// Inclusive grid start, start + step, ..., stop. Values are rounded to 12 significant digits.
struct SweepAxis {
    Axis axis = Axis::PBob;
    double start = 0;
    double stop = 1;
    double step = 0.05;

    std::vector<double> points() const;
};

/// "<axis>:<start>:<stop>:<step>", e.g. "p_B:0:1:0.05".
SweepAxis parse_sweep(std::string_view text);

/// One of the three noise placements, or scenario 0 for a free arrangement.
///   1: noise on the input and on Bob's half; Alice's half is clean. p_I and p_B free.
///   2: the same noise on both halves of the pair (p_A = p_B = p); input noise with p_I.
///   3: the same noise on both of Alice's qubits (p_I = p_A = p); Bob's noise with p_B.
struct ScenarioSpec {
    int scenario = 0;
    /// Noise kinds in (input, alice, bob) order; must respect the scenario's pattern.
    std::array<NoiseKind, 3> kinds{NoiseKind::None, NoiseKind::None, NoiseKind::None};
    double p_input = 0;
    double p_alice = 0;
    double p_bob = 0;
    double p = 0;
    SweepAxis sweep;
    std::vector<Target> targets = {Target::deterministic()};
};

/// Scenario with its kind pattern filled in from the two free kinds. For scenario 1 and 2,
/// `other` is Bob's (resp. the pair's) noise; for scenario 3 `input` also acts on Alice's half.
ScenarioSpec make_scenario(int scenario, NoiseKind input, NoiseKind other);

/// Throws std::invalid_argument when kinds break the scenario pattern or the sweep axis is not free.
void validate(const ScenarioSpec &spec);

/// The scenario's probabilities with the swept axis set to `value`.
Arrangement bind(const ScenarioSpec &spec, double value);
/// Without a sweep: the fixed probabilities only.
Arrangement bind(const ScenarioSpec &spec);

/// 12 significant digits, the precision used in every emitted table.
double round12(double x);

struct SweepRow {
    int scenario = 0;
    std::string arrangement;
    double p_I = 0;
    double p_A = 0;
    double p_B = 0;
    std::string target;
    double theta_star = 0;
    double phi_star = 0;
    double fidelity = 0;
    double success = 0;
    double concurrence = 0;
    bool above_classical = false;
    std::string status = "ok";
};

bool operator==(const SweepRow &a, const SweepRow &b);

/// Full per-outcome report at a row's optimum, for re-deriving f_det offline.
struct OutcomeRow {
    size_t row = 0;
    std::array<double, 4> qbar{};
    /// Ratio of the averaged Q_j F_j to Q-bar_j, even below the reporting floor; NaN only when Q-bar_j is 0.
    std::array<double, 4> fbar{};
    double f_det = 0;
};

struct RunSettings {
    SearchConfig search;
    /// Per arrangement, pick full or restricted ranges via default_config(); otherwise use search's ranges.
    bool auto_ranges = true;
    RangeReading range_reading = RangeReading::Literal;
    /// Worker threads; 0 means hardware concurrency.
    unsigned jobs = 0;
};

SearchConfig config_for(const RunSettings &settings, const Arrangement &arr, const Target &target);

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<OutcomeRow> outcomes;

    bool infeasible_everywhere() const;
};

/// One row per (sweep point, target), ordered by sweep point then by target as listed.
SweepResult run_sweep(const ScenarioSpec &spec, const RunSettings &settings);

struct FixedEval {
    AverageReport report;
    PostselectedAverage postselected;
    std::vector<int> outcomes;
};

/// Every outcome at a user-chosen (theta, phi), plus the chosen postselection set.
FixedEval run_fixed_eval(const Arrangement &arr, const ChannelParams &params, std::span<const int> outcomes,
                         const QuadratureGrid &grid = QuadratureGrid::make());

struct CensusLevel {
    Arrangement arrangement;
    double det_value = 0;
    double det_theta = 0;
    double det_phi = 0;
    int best_outcome = 0;
    double best_value = 0;
    double best_success = 0;
    double best_theta = 0;
    double best_phi = 0;
    double gap = 0;
    bool improved = false;
    std::string status = "ok";
};

struct CensusCase {
    int scenario = 0;
    std::array<NoiseKind, 3> kinds{};
    std::vector<CensusLevel> levels;
    /// Any level improved.
    bool improved = false;
};

struct CensusTable {
    std::vector<CensusCase> cases;
    std::array<int, 3> improved_counts{};
    std::vector<double> noise_levels;

    int total_improved() const {
        return improved_counts[0] + improved_counts[1] + improved_counts[2];
    }
};

inline constexpr std::array<double, 3> kCensusLevels = {0.1, 0.2, 0.3};

/// The 16 noise pairings of each scenario, classified at every combination of `noise_levels`
/// on the scenario's two free probabilities. A case counts as improved if any level is.
CensusTable run_census(const RunSettings &settings, std::span<const double> noise_levels = kCensusLevels);

/// Runs fn(i) for i in [0, count) on `jobs` threads (0 = hardware concurrency).
void parallel_for(size_t count, unsigned jobs, const std::function<void(size_t)> &fn);

}  // namespace pqt

#endif
