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

#include "pqt/optimizer.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace pqt {

Target Target::outcome(int j) {
    if (j < 1 || j > 4) {
        throw std::invalid_argument("target outcome must be in 1..4");
    }
    return Target(Kind::Outcome, {j});
}

Target Target::set(std::vector<int> outcomes) {
    if (outcomes.empty()) {
        throw std::invalid_argument("postselection set is empty");
    }
    for (int j : outcomes) {
        if (j < 1 || j > 4) {
            throw std::invalid_argument("postselection outcome out of range: " + std::to_string(j));
        }
    }
    std::sort(outcomes.begin(), outcomes.end());
    outcomes.erase(std::unique(outcomes.begin(), outcomes.end()), outcomes.end());
    return Target(Kind::Set, std::move(outcomes));
}

Target Target::deterministic() {
    return Target(Kind::Deterministic, {1, 2, 3, 4});
}

Target Target::parse(std::string_view text) {
    if (text == "det") {
        return deterministic();
    }
    if (text.size() == 2 && text[0] == 'j' && text[1] >= '1' && text[1] <= '4') {
        return outcome(text[1] - '0');
    }
    if (text.starts_with("set:")) {
        std::vector<int> outcomes;
        std::string_view rest = text.substr(4);
        while (!rest.empty()) {
            size_t comma = rest.find(',');
            std::string_view item = rest.substr(0, comma);
            int j = 0;
            auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), j);
            if (ec != std::errc() || ptr != item.data() + item.size()) {
                throw std::invalid_argument("bad outcome in target '" + std::string(text) + "'");
            }
            outcomes.push_back(j);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        return set(std::move(outcomes));
    }
    throw std::invalid_argument("unknown target '" + std::string(text) + "' (expected det, j1..j4, set:a,b,...)");
}

std::string Target::label() const {
    switch (kind_) {
        case Kind::Deterministic:
            return "det";
        case Kind::Outcome:
            return "j" + std::to_string(outcomes_.front());
        case Kind::Set: {
            std::string out = "set:";
            for (size_t k = 0; k < outcomes_.size(); ++k) {
                out += (k ? "," : "") + std::to_string(outcomes_[k]);
            }
            return out;
        }
    }
    return "?";
}

void validate(const SearchConfig &cfg) {
    for (const Range *r : {&cfg.theta_range, &cfg.phi_range}) {
        if (!(r->lo <= r->hi) || !std::isfinite(r->lo) || !std::isfinite(r->hi)) {
            throw std::invalid_argument("search range is empty or not finite");
        }
    }
    if (cfg.coarse_grid < 2) {
        throw std::invalid_argument("coarse grid needs at least 2 points per axis");
    }
    if (!(cfg.q_min >= 0)) {
        throw std::invalid_argument("q_min must be non-negative");
    }
    if (!(cfg.tie_slack >= 0)) {
        throw std::invalid_argument("tie_slack must be non-negative");
    }
}

bool needs_restricted_range(const Arrangement &arr) {
    return arr.alice.kind == NoiseKind::AmplitudeDamping || arr.bob.kind == NoiseKind::AmplitudeDamping;
}

Range restricted_range(RangeReading reading) {
    return reading == RangeReading::Literal ? kRestrictedRangeLiteral : kRestrictedRange;
}

std::string_view range_reading_name(RangeReading reading) {
    return reading == RangeReading::Literal ? "literal" : "fraction";
}

RangeReading parse_range_reading(std::string_view text) {
    if (text == "literal") {
        return RangeReading::Literal;
    }
    if (text == "fraction") {
        return RangeReading::Fraction;
    }
    throw std::invalid_argument("unknown range reading '" + std::string(text) + "' (expected literal or fraction)");
}

SearchConfig default_config(const Arrangement &arr, Target target, RangeReading reading) {
    SearchConfig cfg;
    if (needs_restricted_range(arr)) {
        cfg.theta_range = restricted_range(reading);
        cfg.phi_range = cfg.theta_range;
    }
    cfg.target = std::move(target);
    return cfg;
}

std::optional<TargetValue> target_value(const AverageReport &report, const Target &target, double q_min) {
    switch (target.kind()) {
        case Target::Kind::Deterministic:
            return TargetValue{report.f_det, 1.0};
        case Target::Kind::Outcome: {
            size_t j = static_cast<size_t>(target.outcomes().front() - 1);
            if (!report.fbar[j] || report.qbar[j] < q_min) {
                return std::nullopt;
            }
            return TargetValue{*report.fbar[j], report.qbar[j]};
        }
        case Target::Kind::Set: {
            double success = 0;
            double weighted = 0;
            for (int j : target.outcomes()) {
                success += report.qbar[j - 1];
                weighted += report.qf_bar[j - 1];
            }
            double floor = q_min > 0 ? std::max(q_min, kAverageFloor) : std::numeric_limits<double>::min();
            if (success < floor) {
                return std::nullopt;
            }
            return TargetValue{weighted / success, success};
        }
    }
    return std::nullopt;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Candidate {
    double theta = 0;
    double phi = 0;
    double value = kNegInf;
    double success = 0;
    AverageReport report;

    bool feasible() const {
        return value > kNegInf;
    }
};

class Evaluator {
   public:
    Evaluator(const Arrangement &arr, const SearchConfig &cfg) : arr_(arr), cfg_(cfg) {
    }

    AverageReport report(double theta, double phi) const {
        // With q_min = 0 the caller asked for every outcome that has any weight at all.
        double floor = cfg_.q_min > 0 ? kAverageFloor : std::numeric_limits<double>::min();
        return average(ChannelParams{theta, phi}, arr_, cfg_.quadrature, floor);
    }

    Candidate score(double theta, double phi, const Target &target) const {
        return score(theta, phi, target, report(theta, phi));
    }

    Candidate score(double theta, double phi, const Target &target, AverageReport rep) const {
        Candidate c{theta, phi, kNegInf, 0, std::move(rep)};
        if (auto v = target_value(c.report, target, cfg_.q_min)) {
            c.value = v->value;
            c.success = v->success;
        }
        return c;
    }

   private:
    const Arrangement &arr_;
    const SearchConfig &cfg_;
};

double clamp_to(const Range &r, double x) {
    return std::clamp(x, r.lo, r.hi);
}

// Golden-section search along best + t * dir for t in [t_lo, t_hi]. Keeps the best point seen.
void line_search(const Evaluator &eval, const Target &target, const SearchConfig &cfg, Candidate &best,
                 double d_theta, double d_phi, double reach) {
    double t_lo = -reach;
    double t_hi = reach;
    // Shrink [t_lo, t_hi] so the whole segment stays inside the box.
    auto limit = [&](double origin, double d, const Range &r) {
        if (d > 0) {
            t_lo = std::max(t_lo, (r.lo - origin) / d);
            t_hi = std::min(t_hi, (r.hi - origin) / d);
        } else if (d < 0) {
            t_lo = std::max(t_lo, (r.hi - origin) / d);
            t_hi = std::min(t_hi, (r.lo - origin) / d);
        }
    };
    double theta0 = best.theta;
    double phi0 = best.phi;
    limit(theta0, d_theta, cfg.theta_range);
    limit(phi0, d_phi, cfg.phi_range);
    if (!(t_hi > t_lo)) {
        return;
    }

    auto at = [&](double t) {
        Candidate c = eval.score(clamp_to(cfg.theta_range, theta0 + t * d_theta),
                                 clamp_to(cfg.phi_range, phi0 + t * d_phi), target);
        if (c.value > best.value) {
            best = c;
        }
        return c.value;
    };

    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = t_lo;
    double b = t_hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = at(x1);
    double f2 = at(x2);
    double scale = std::max(std::abs(d_theta), std::abs(d_phi));
    while ((b - a) * scale > 1e-3 * reach * scale + 1e-13) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = at(x2);
        }
    }
}

Candidate refine(const Evaluator &eval, const Target &target, const SearchConfig &cfg, Candidate start) {
    double h_theta = (cfg.theta_range.hi - cfg.theta_range.lo) / static_cast<double>(cfg.coarse_grid - 1);
    double h_phi = (cfg.phi_range.hi - cfg.phi_range.lo) / static_cast<double>(cfg.coarse_grid - 1);
    if (h_theta == 0 && h_phi == 0) {
        return start;
    }
    // Axis moves alternate with the two diagonals so ridges along theta = +-phi are followed.
    const std::array<std::array<double, 2>, 4> directions = {
        {{h_theta, 0}, {0, h_phi}, {h_theta, h_phi}, {h_theta, -h_phi}}};
    Candidate best = std::move(start);
    double reach = 1;
    for (size_t iter = 0; iter < cfg.refine_iters; ++iter) {
        double before = best.value;
        for (const auto &d : directions) {
            if (d[0] == 0 && d[1] == 0) {
                continue;
            }
            line_search(eval, target, cfg, best, d[0], d[1], reach);
        }
        if (!(best.value > before)) {
            reach /= 4;
        }
        if (reach * std::max(h_theta, h_phi) < 1e-11) {
            break;
        }
    }
    return best;
}

// Coarse grid scores for one target, row-major in (theta index, phi index).
struct CoarseScan {
    size_t n = 0;
    std::vector<double> value;

    double at(size_t i, size_t k) const {
        return value[i * n + k];
    }
};

double grid_point(const Range &r, size_t i, size_t n) {
    return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Golden-section maximization of the target along one axis, inside [lo, hi] of that axis.
Candidate maximize_along(const Evaluator &eval, const Target &target, bool along_phi, double fixed, double lo,
                         double hi) {
    Candidate best;
    auto at = [&](double x) {
        Candidate c = along_phi ? eval.score(fixed, x, target) : eval.score(x, fixed, target);
        double v = c.value;
        if (v > best.value) {
            best = std::move(c);
        }
        return v;
    };
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = lo;
    double b = hi;
    at(a);
    at(b);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = at(x1);
    double f2 = at(x2);
    while (b - a > 1e-10) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = at(x2);
        }
    }
    return best;
}

// Largest success among ridge points, maximizing the efficiency along `along_phi`'s axis for each
// position of the other coordinate in [lo, hi]. Points that fall off the ridge score -inf.
Candidate climb_ridge(const Evaluator &eval, const Target &target, const SearchConfig &cfg, bool along_phi,
                      double lo, double hi, double free_lo, double free_hi, double top) {
    Candidate best;
    auto at = [&](double x) {
        Candidate c = maximize_along(eval, target, along_phi, x, free_lo, free_hi);
        if (!(c.value >= top - cfg.tie_slack)) {
            return kNegInf;
        }
        double s = c.success;
        if (!best.feasible() || s > best.success) {
            best = std::move(c);
        }
        return s;
    };
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = at(x1);
    double f2 = at(x2);
    while (b - a > 1e-9) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = at(x2);
        }
    }
    return best;
}

// Walks the optimal ridge: for every coarse row and column, maximizes the efficiency along the
// other axis near the row's best cell, and keeps the highest-success point within tie_slack of the
// best. The winning row is then polished by a golden-section climb of the success along the ridge.
Candidate prefer_success(const Evaluator &eval, const Target &target, const SearchConfig &cfg,
                         const CoarseScan &scan, Candidate best) {
    struct RidgePoint {
        Candidate c;
        bool along_phi = false;
        size_t fixed = 0;
        size_t free = 0;
    };
    size_t n = scan.n;
    std::vector<RidgePoint> ridge;
    for (int along_phi = 0; along_phi < 2; ++along_phi) {
        const Range &fixed_range = along_phi ? cfg.theta_range : cfg.phi_range;
        const Range &free_range = along_phi ? cfg.phi_range : cfg.theta_range;
        for (size_t i = 0; i < n; ++i) {
            size_t arg = n;
            double top = kNegInf;
            for (size_t k = 0; k < n; ++k) {
                double v = along_phi ? scan.at(i, k) : scan.at(k, i);
                if (v > top) {
                    top = v;
                    arg = k;
                }
            }
            if (arg == n) {
                continue;
            }
            double lo = grid_point(free_range, arg == 0 ? 0 : arg - 1, n);
            double hi = grid_point(free_range, std::min(arg + 1, n - 1), n);
            ridge.push_back({maximize_along(eval, target, along_phi, grid_point(fixed_range, i, n), lo, hi),
                             along_phi != 0, i, arg});
        }
    }
    double top = best.value;
    for (const RidgePoint &r : ridge) {
        top = std::max(top, r.c.value);
    }
    Candidate pick = best.value >= top - cfg.tie_slack ? std::move(best) : Candidate{};
    const RidgePoint *row = nullptr;
    for (const RidgePoint &r : ridge) {
        if (r.c.value >= top - cfg.tie_slack && (!pick.feasible() || r.c.success > pick.success)) {
            pick = r.c;
            row = &r;
        }
    }
    if (row != nullptr) {
        const Range &fixed_range = row->along_phi ? cfg.theta_range : cfg.phi_range;
        const Range &free_range = row->along_phi ? cfg.phi_range : cfg.theta_range;
        // Two cells of slack on the free axis: the ridge drifts as the fixed coordinate moves.
        Candidate polished = climb_ridge(
            eval, target, cfg, row->along_phi, grid_point(fixed_range, row->fixed == 0 ? 0 : row->fixed - 1, n),
            grid_point(fixed_range, std::min(row->fixed + 1, n - 1), n),
            grid_point(free_range, row->free < 2 ? 0 : row->free - 2, n),
            grid_point(free_range, std::min(row->free + 2, n - 1), n), top);
        if (polished.feasible() && polished.success > pick.success) {
            pick = std::move(polished);
        }
    }
    return pick;
}

bool on_narrowed_bound(const SearchConfig &cfg, double theta, double phi) {
    auto check = [](const Range &r, double x) {
        bool lo = r.lo != kFullRange.lo && std::abs(x - r.lo) < 1e-6;
        bool hi = r.hi != kFullRange.hi && std::abs(x - r.hi) < 1e-6;
        return lo || hi;
    };
    return check(cfg.theta_range, theta) || check(cfg.phi_range, phi);
}

OptResult to_result(const SearchConfig &cfg, Candidate best, double coarse_value) {
    OptResult r;
    r.theta_star = best.theta;
    r.phi_star = best.phi;
    r.value = best.value;
    r.success = best.success;
    r.report = std::move(best.report);
    r.constrained_flag = on_narrowed_bound(cfg, r.theta_star, r.phi_star);
    r.coarse_value = coarse_value;
    return r;
}

}  // namespace

std::vector<std::optional<OptResult>> optimize_targets(const Arrangement &arr, const SearchConfig &cfg,
                                                       std::span<const Target> targets) {
    validate(cfg);
    Evaluator eval(arr, cfg);
    std::vector<Candidate> best(targets.size());

    size_t n = cfg.coarse_grid;
    std::vector<CoarseScan> scans(targets.size(), CoarseScan{n, std::vector<double>(n * n, kNegInf)});
    for (size_t i = 0; i < n; ++i) {
        double theta = grid_point(cfg.theta_range, i, n);
        for (size_t k = 0; k < n; ++k) {
            double phi = grid_point(cfg.phi_range, k, n);
            AverageReport rep = eval.report(theta, phi);
            for (size_t t = 0; t < targets.size(); ++t) {
                auto v = target_value(rep, targets[t], cfg.q_min);
                if (!v) {
                    continue;
                }
                scans[t].value[i * n + k] = v->value;
                if (v->value > best[t].value) {
                    best[t] = Candidate{theta, phi, v->value, v->success, rep};
                }
            }
        }
    }

    std::vector<std::optional<OptResult>> out(targets.size());
    for (size_t t = 0; t < targets.size(); ++t) {
        if (!best[t].feasible()) {
            continue;
        }
        double coarse_value = best[t].value;
        Candidate refined = refine(eval, targets[t], cfg, std::move(best[t]));
        if (cfg.prefer_success) {
            refined = prefer_success(eval, targets[t], cfg, scans[t], std::move(refined));
        }
        out[t] = to_result(cfg, std::move(refined), coarse_value);
    }
    return out;
}

OptResult optimize(const Arrangement &arr, const SearchConfig &cfg) {
    std::array<Target, 1> targets = {cfg.target};
    auto results = optimize_targets(arr, cfg, targets);
    if (!results[0]) {
        throw InfeasibleError("no (theta, phi) in range reaches success rate " + std::to_string(cfg.q_min) +
                              " for target " + cfg.target.label());
    }
    return std::move(*results[0]);
}

Classification classify(const Arrangement &arr, const SearchConfig &cfg) {
    std::vector<Target> targets = {Target::deterministic(), Target::outcome(1), Target::outcome(2),
                                   Target::outcome(3), Target::outcome(4)};
    SearchConfig values_only = cfg;
    values_only.prefer_success = false;
    auto results = optimize_targets(arr, values_only, targets);
    if (!results[0]) {
        throw InfeasibleError("deterministic optimization found no point");
    }
    Classification c;
    c.deterministic = std::move(*results[0]);
    double best = kNegInf;
    for (size_t j = 0; j < 4; ++j) {
        c.outcomes[j] = std::move(results[j + 1]);
        if (c.outcomes[j] && c.outcomes[j]->value > best) {
            best = c.outcomes[j]->value;
            c.best_outcome = static_cast<int>(j + 1);
        }
    }
    c.gap = best - c.deterministic.value;
    c.improved = c.gap > kTieTolerance;
    return c;
}

std::vector<Crossing> threshold_crossings(const std::function<Arrangement(double)> &family,
                                          const SearchConfig &cfg, std::span<const double> p_axis, double width) {
    auto excess = [&](double p) {
        try {
            return optimize(family(p), cfg).value - (kClassicalLimit + kClassicalMargin);
        } catch (const InfeasibleError &) {
            return -1.0;
        }
    };
    std::vector<Crossing> out;
    if (p_axis.size() < 2) {
        return out;
    }
    double prev_p = p_axis[0];
    double prev = excess(prev_p);
    for (size_t k = 1; k < p_axis.size(); ++k) {
        double p = p_axis[k];
        double cur = excess(p);
        if ((prev > 0) != (cur > 0)) {
            double lo = prev_p;
            double hi = p;
            bool lo_above = prev > 0;
            while (hi - lo > width) {
                double mid = (lo + hi) / 2;
                if ((excess(mid) > 0) == lo_above) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push_back(Crossing{(lo + hi) / 2, lo_above ? CrossingSide::Falling : CrossingSide::Rising, lo, hi});
        }
        prev_p = p;
        prev = cur;
    }
    return out;
}

}  // namespace pqt
