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

#include <gtest/gtest.h>

#include "test_util.h"

using namespace pqt;

namespace {

using K = NoiseKind;

SearchConfig with_target(const Arrangement &arr, Target t) {
    return default_config(arr, std::move(t));
}

}  // namespace

TEST(optimizer, noiseless_optimum) {
    Arrangement arr;
    auto r = optimize(arr, default_config(arr));
    ASSERT_NEAR(r.value, 1, 1e-10);
    ASSERT_NEAR(r.theta_star, kPi / 4, 1e-3);
    ASSERT_NEAR(r.phi_star, kPi / 4, 1e-3);
    ASSERT_NEAR(r.success, 1, 1e-12);
    ASSERT_FALSE(r.constrained_flag);
}

TEST(optimizer, depolarized_bob_outcome_one) {
    Arrangement arr{{}, {}, {K::Depolarizing, 0.4}};
    auto r = optimize(arr, with_target(arr, Target::outcome(1)));
    ASSERT_NEAR(r.value, 0.8, 1e-9);
    ASSERT_NEAR(r.theta_star, kPi / 4, 1e-3);
    ASSERT_NEAR(r.phi_star, kPi / 4, 1e-3);
    // Brute grid: nothing beats the closed form.
    for (int a = 0; a <= 40; ++a) {
        for (int b = 0; b <= 40; ++b) {
            auto rep = average({a * kPi / 80, b * kPi / 80}, arr);
            if (rep.fbar[0]) {
                ASSERT_LE(*rep.fbar[0], 0.8 + 1e-9);
            }
        }
    }
}

TEST(optimizer, damped_input_moves_theta_off_maximal) {
    Arrangement arr{{K::AmplitudeDamping, 0.8}, {}, {K::AmplitudeDamping, 0.3}};
    auto r = optimize(arr, with_target(arr, Target::outcome(4)));
    ASSERT_GT(std::abs(r.theta_star - kPi / 4), 0.05);
    auto d = optimize(arr, default_config(arr));
    ASSERT_GT(r.value, d.value + 1e-3);
}

TEST(optimizer, refinement_never_loses_to_coarse_grid) {
    for (int k = 0; k < 6; ++k) {
        Arrangement arr = tu::random_arrangement();
        SearchConfig cfg = with_target(arr, Target::outcome(1 + k % 4));
        cfg.coarse_grid = 16;
        cfg.refine_iters = 10;
        try {
            auto r = optimize(arr, cfg);
            ASSERT_GE(r.value, r.coarse_value);
            ASSERT_GE(r.success, cfg.q_min);
        } catch (const InfeasibleError &) {
        }
    }
}

TEST(optimizer, feasibility_respects_qmin) {
    Arrangement arr{{K::AmplitudeDamping, 0.5}, {K::AmplitudeDamping, 0.5}, {K::AmplitudeDamping, 0.5}};
    for (double q_min : {1e-8, 1e-3, 0.05, 0.2}) {
        SearchConfig cfg = with_target(arr, Target::outcome(4));
        cfg.q_min = q_min;
        auto r = optimize(arr, cfg);
        ASSERT_GE(r.success, q_min);
    }
    SearchConfig cfg = with_target(arr, Target::outcome(4));
    cfg.q_min = 0.9;
    ASSERT_THROW(optimize(arr, cfg), InfeasibleError);
}

TEST(optimizer, deterministic_results) {
    Arrangement arr{{K::PhaseFlip, 0.3}, {K::AmplitudeDamping, 0.3}, {K::AmplitudeDamping, 0.3}};
    auto cfg = with_target(arr, Target::outcome(4));
    auto a = optimize(arr, cfg);
    auto b = optimize(arr, cfg);
    ASSERT_EQ(a.theta_star, b.theta_star);
    ASSERT_EQ(a.phi_star, b.phi_star);
    ASSERT_EQ(a.value, b.value);
    ASSERT_EQ(a.success, b.success);
}

TEST(optimizer, prefer_success_keeps_value) {
    Arrangement arr{{K::AmplitudeDamping, 0.8}, {}, {K::Depolarizing, 0.3}};
    auto cfg = with_target(arr, Target::outcome(4));
    auto ridge = optimize(arr, cfg);
    cfg.prefer_success = false;
    auto plain = optimize(arr, cfg);
    ASSERT_NEAR(ridge.value, plain.value, 1e-8);
    ASSERT_GE(ridge.success, plain.success - 1e-12);
}

TEST(optimizer, targets_share_one_scan) {
    Arrangement arr{{K::AmplitudeDamping, 0.4}, {}, {K::BitFlip, 0.2}};
    std::vector<Target> targets = {Target::deterministic(), Target::outcome(2), Target::set({1, 2, 4})};
    auto many = optimize_targets(arr, default_config(arr), targets);
    ASSERT_EQ(many.size(), 3u);
    for (size_t k = 0; k < targets.size(); ++k) {
        auto single = optimize(arr, with_target(arr, targets[k]));
        ASSERT_TRUE(many[k].has_value());
        ASSERT_EQ(many[k]->value, single.value);
        ASSERT_EQ(many[k]->theta_star, single.theta_star);
    }
}

TEST(optimizer, restricted_ranges) {
    Arrangement clean_pair{{K::AmplitudeDamping, 0.3}, {}, {K::PhaseFlip, 0.3}};
    Arrangement damped_pair{{}, {K::AmplitudeDamping, 0.3}, {K::BitFlip, 0.3}};
    ASSERT_FALSE(needs_restricted_range(clean_pair));
    ASSERT_TRUE(needs_restricted_range(damped_pair));
    ASSERT_EQ(default_config(clean_pair).theta_range, kFullRange);
    auto lit = default_config(damped_pair);
    ASSERT_NEAR(lit.theta_range.lo, 0.0785398, 1e-7);
    ASSERT_EQ(lit.theta_range.hi, 2.984);
    auto frac = default_config(damped_pair, Target::deterministic(), RangeReading::Fraction);
    ASSERT_NEAR(frac.phi_range.hi, 1.4922565, 1e-7);
    ASSERT_EQ(parse_range_reading("fraction"), RangeReading::Fraction);
    ASSERT_THROW(parse_range_reading("percent"), std::invalid_argument);
}

TEST(optimizer, config_validation) {
    SearchConfig cfg;
    cfg.coarse_grid = 1;
    ASSERT_THROW(validate(cfg), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.q_min = -1;
    ASSERT_THROW(validate(cfg), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.theta_range = {1.0, 0.5};
    ASSERT_THROW(validate(cfg), std::invalid_argument);
    ASSERT_NO_THROW(validate(SearchConfig{}));
}

TEST(optimizer, target_parsing) {
    ASSERT_EQ(Target::parse("det"), Target::deterministic());
    ASSERT_EQ(Target::parse("j3"), Target::outcome(3));
    ASSERT_EQ(Target::parse("set:1,2,4"), Target::set({1, 2, 4}));
    ASSERT_EQ(Target::parse("set:1,2,4").label(), "set:1,2,4");
    ASSERT_EQ(Target::outcome(4).label(), "j4");
    ASSERT_THROW(Target::parse("j5"), std::invalid_argument);
    ASSERT_THROW(Target::parse("set:"), std::invalid_argument);
}

TEST(optimizer, classify_examples) {
    for (K bob : kNoisyKinds) {
        Arrangement arr{{K::BitFlip, 0.2}, {}, {bob, 0.3}};
        ASSERT_FALSE(classify(arr, default_config(arr)).improved) << code(bob);
    }
    Arrangement pf_pf_ad{{K::PhaseFlip, 0.2}, {K::PhaseFlip, 0.2}, {K::AmplitudeDamping, 0.3}};
    ASSERT_FALSE(classify(pf_pf_ad, default_config(pf_pf_ad)).improved);

    Arrangement pf_ad_ad{{K::PhaseFlip, 0.2}, {K::AmplitudeDamping, 0.3}, {K::AmplitudeDamping, 0.3}};
    auto c = classify(pf_ad_ad, default_config(pf_ad_ad));
    ASSERT_TRUE(c.improved);
    ASSERT_GT(c.gap, kTieTolerance);
    ASSERT_GE(c.best_outcome, 1);
}

TEST(optimizer, no_damping_means_maximal_entanglement) {
    std::vector<Arrangement> arrs = {
        {{K::BitFlip, 0.2}, {}, {K::PhaseFlip, 0.3}},
        {{K::Depolarizing, 0.3}, {K::Depolarizing, 0.3}, {K::BitFlip, 0.1}},
        {{K::PhaseFlip, 0.1}, {K::BitFlip, 0.2}, {K::BitFlip, 0.2}},
    };
    for (const auto &arr : arrs) {
        auto d = optimize(arr, default_config(arr));
        ASSERT_NEAR(d.theta_star, kPi / 4, 1e-3) << arrangement_code(arr);
        for (int j = 1; j <= 4; ++j) {
            auto r = optimize(arr, with_target(arr, Target::outcome(j)));
            ASSERT_NEAR(r.theta_star, kPi / 4, 1e-3) << arrangement_code(arr) << " j" << j;
            ASSERT_NEAR(r.value, d.value, 1e-6);
        }
    }
}

TEST(optimizer, threshold_crossings) {
    std::vector<double> axis;
    for (int k = 0; k <= 10; ++k) {
        axis.push_back(k / 10.0);
    }
    SearchConfig cfg;
    cfg.coarse_grid = 16;
    auto none = threshold_crossings([](double) { return Arrangement{}; }, cfg, axis);
    ASSERT_TRUE(none.empty());

    auto dep = threshold_crossings([](double p) { return Arrangement{{}, {}, {K::Depolarizing, p}}; }, cfg, axis);
    ASSERT_EQ(dep.size(), 1u);
    ASSERT_EQ(dep[0].side, CrossingSide::Falling);
    ASSERT_NEAR(dep[0].p, 2.0 / 3, 1e-3);
    ASSERT_LE(dep[0].bracket_hi - dep[0].bracket_lo, 1e-3);
}
