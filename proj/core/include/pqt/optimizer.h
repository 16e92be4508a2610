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

#ifndef PQT_OPTIMIZER_H
#define PQT_OPTIMIZER_H

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pqt/ensemble.h"

namespace pqt {

/// Fidelity achievable with classical resources only.
inline constexpr double kClassicalLimit = 2.0 / 3.0;
/// A fidelity counts as above the classical limit only past this margin. Measure-and-prepare
/// strategies sit exactly at 2/3, and rounding must not lift them over.
inline constexpr double kClassicalMargin = 1e-9;

inline bool above_classical(double fidelity) {
    return fidelity > kClassicalLimit + kClassicalMargin;
}

/// What the search maximizes: one postselected outcome, a postselected set, or the
/// deterministic (all outcomes accepted) efficiency.
class Target {
   public:
    enum class Kind { Outcome, Set, Deterministic };

    static Target outcome(int j);
    static Target set(std::vector<int> outcomes);
    static Target deterministic();

    /// "det", "j1".."j4", or "set:1,2,4".
    static Target parse(std::string_view text);
    std::string label() const;

    Kind kind() const {
        return kind_;
    }
    /// Accepted outcomes (1-based); all four for Deterministic.
    const std::vector<int> &outcomes() const {
        return outcomes_;
    }

    bool operator==(const Target &) const = default;

   private:
    Target(Kind kind, std::vector<int> outcomes) : kind_(kind), outcomes_(std::move(outcomes)) {
    }
    Kind kind_ = Kind::Deterministic;
    std::vector<int> outcomes_;
};

struct Range {
    double lo = 0;
    double hi = kPi / 2;

    bool operator==(const Range &) const = default;
};

inline constexpr Range kFullRange{0, kPi / 2};
/// 5%..95% of [0, pi/2].
inline constexpr Range kRestrictedRange{0.05 * kPi / 2, 0.95 * kPi / 2};
/// Upper bound taken literally as 2.984 rad (about 0.95 pi). Past pi/2 the channel and
/// measurement amplitudes change sign, which lets the search absorb a Z error on the input or
/// on Bob's qubit that the fixed corrections cannot undo.
inline constexpr Range kRestrictedRangeLiteral{0.05 * kPi / 2, 2.984};

/// How the restricted range's upper bound is read: 2.984 rad, or 0.95 of pi/2.
enum class RangeReading { Literal, Fraction };

Range restricted_range(RangeReading reading);
std::string_view range_reading_name(RangeReading reading);
/// "literal" or "fraction".
RangeReading parse_range_reading(std::string_view text);

struct SearchConfig {
    Range theta_range = kFullRange;
    Range phi_range = kFullRange;
    size_t coarse_grid = 64;
    size_t refine_iters = 60;
    double q_min = 1e-8;
    /// Optimal efficiencies are often attained on a whole ridge of (theta, phi) with very different
    /// success rates. When set, the point on that ridge with the largest success is reported.
    bool prefer_success = true;
    /// Efficiency slack that still counts as optimal for the prefer_success pass.
    double tie_slack = 1e-8;
    Target target = Target::deterministic();
    QuadratureGrid quadrature = QuadratureGrid::make();
};

/// Throws std::invalid_argument on empty/inverted ranges, a coarse grid below 2, or negative q_min/tie_slack.
void validate(const SearchConfig &cfg);

/// True when amplitude damping acts on either half of the shared pair. Such arrangements
/// admit near-zero-success optima at the edges of the parameter square.
bool needs_restricted_range(const Arrangement &arr);

/// Full ranges, or restricted_range(reading) on both axes when needs_restricted_range(arr).
SearchConfig default_config(const Arrangement &arr, Target target = Target::deterministic(),
                            RangeReading reading = RangeReading::Literal);

struct TargetValue {
    double value = 0;
    double success = 0;
};

/// Target efficiency and success rate read off a report; empty when the target's
/// success is below max(q_min, kAverageFloor) or its efficiency is undefined. q_min = 0 drops the floor.
std::optional<TargetValue> target_value(const AverageReport &report, const Target &target, double q_min);

struct OptResult {
    double theta_star = 0;
    double phi_star = 0;
    double value = 0;
    double success = 0;
    AverageReport report;
    /// The optimum lies within 1e-6 of a search bound other than the natural ends 0 and pi/2.
    bool constrained_flag = false;
    /// Best feasible value seen on the coarse grid, before refinement.
    double coarse_value = 0;
};

class InfeasibleError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Coarse grid scan over (theta, phi) followed by line-search refinement around the best cell.
/// Throws InfeasibleError when no grid point satisfies q_min.
OptResult optimize(const Arrangement &arr, const SearchConfig &cfg);

/// optimize() for several targets, sharing one coarse scan. cfg.target is ignored.
/// Each entry is empty when that target was infeasible everywhere.
std::vector<std::optional<OptResult>> optimize_targets(const Arrangement &arr, const SearchConfig &cfg,
                                                       std::span<const Target> targets);

inline constexpr double kTieTolerance = 1e-6;

struct Classification {
    bool improved = false;
    OptResult deterministic;
    /// Optimal postselected result per outcome; empty where infeasible.
    std::array<std::optional<OptResult>, 4> outcomes;
    /// max_j optimal F-bar_j minus optimal deterministic efficiency.
    double gap = 0;
    int best_outcome = 0;
};

/// Improved iff some outcome's optimal efficiency beats the optimal deterministic one by more than kTieTolerance.
/// Only values matter here, so the prefer_success pass is skipped.
Classification classify(const Arrangement &arr, const SearchConfig &cfg);

enum class CrossingSide { Rising, Falling };

struct Crossing {
    double p = 0;
    /// Rising: the optimized fidelity goes above 2/3 as p increases.
    CrossingSide side = CrossingSide::Rising;
    double bracket_lo = 0;
    double bracket_hi = 0;
};

/// Locates where the optimized target efficiency of family(p) crosses 2/3: sign changes along p_axis
/// are bisected until the bracket is at most `width` wide. Infeasible points count as below 2/3.
std::vector<Crossing> threshold_crossings(const std::function<Arrangement(double)> &family,
                                          const SearchConfig &cfg, std::span<const double> p_axis,
                                          double width = 1e-3);

}  // namespace pqt

#endif
