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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pqt/csv.h"

using namespace pqt;

namespace {

using K = NoiseKind;

ScenarioSpec small_sweep() {
    ScenarioSpec spec = make_scenario(1, K::AmplitudeDamping, K::PhaseFlip);
    spec.p_input = 0.8;
    spec.sweep = parse_sweep("p_B:0:1:0.25");
    spec.targets = {Target::deterministic(), Target::outcome(4), Target::set({1, 2, 4})};
    return spec;
}

RunSettings quick_settings(unsigned jobs = 1) {
    RunSettings s;
    s.search.coarse_grid = 24;
    s.search.refine_iters = 20;
    s.jobs = jobs;
    return s;
}

std::string read_all(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(scenario, make_and_bind) {
    auto s2 = make_scenario(2, K::PhaseFlip, K::AmplitudeDamping);
    s2.p_input = 0.2;
    s2.p = 0.3;
    Arrangement a = bind(s2);
    ASSERT_EQ(a.alice, (NoiseSpec{K::AmplitudeDamping, 0.3}));
    ASSERT_EQ(a.bob, (NoiseSpec{K::AmplitudeDamping, 0.3}));
    ASSERT_EQ(a.input, (NoiseSpec{K::PhaseFlip, 0.2}));
    Arrangement swept = bind(s2, 0.7);
    ASSERT_EQ(swept.input.p, 0.7);

    auto s3 = make_scenario(3, K::BitFlip, K::Depolarizing);
    s3.p = 0.4;
    s3.p_bob = 0.1;
    Arrangement b = bind(s3, 0.6);
    ASSERT_EQ(b.input, (NoiseSpec{K::BitFlip, 0.4}));
    ASSERT_EQ(b.alice, (NoiseSpec{K::BitFlip, 0.4}));
    ASSERT_EQ(b.bob, (NoiseSpec{K::Depolarizing, 0.6}));

    auto s1 = make_scenario(1, K::AmplitudeDamping, K::BitFlip);
    ASSERT_EQ(s1.kinds[1], K::None);
}

TEST(scenario, validation) {
    auto spec = make_scenario(1, K::AmplitudeDamping, K::BitFlip);
    spec.kinds[1] = K::PhaseFlip;
    ASSERT_THROW(validate(spec), std::invalid_argument);
    spec = make_scenario(2, K::AmplitudeDamping, K::BitFlip);
    spec.sweep.axis = Axis::PBob;
    ASSERT_THROW(validate(spec), std::invalid_argument);
    spec = make_scenario(3, K::AmplitudeDamping, K::BitFlip);
    spec.kinds[0] = K::PhaseFlip;
    ASSERT_THROW(validate(spec), std::invalid_argument);
    spec = make_scenario(3, K::AmplitudeDamping, K::BitFlip);
    spec.targets.clear();
    ASSERT_THROW(validate(spec), std::invalid_argument);
    ASSERT_THROW(make_scenario(4, K::None, K::None), std::invalid_argument);
}

TEST(scenario, sweep_parsing) {
    auto s = parse_sweep("p:0:1:0.1");
    ASSERT_EQ(s.axis, Axis::PBound);
    auto pts = s.points();
    ASSERT_EQ(pts.size(), 11u);
    ASSERT_EQ(pts[3], 0.3);
    ASSERT_EQ(pts.back(), 1.0);
    ASSERT_EQ(parse_axis("p_A"), Axis::PAlice);
    ASSERT_THROW(parse_sweep("p_B:0:1"), std::invalid_argument);
    ASSERT_THROW(parse_sweep("p_X:0:1:0.1"), std::invalid_argument);
    ASSERT_THROW(parse_sweep("p_B:1:0:0.1").points(), std::invalid_argument);
}

TEST(scenario, sweep_rows_and_ordering) {
    auto spec = small_sweep();
    auto r = run_sweep(spec, quick_settings());
    ASSERT_EQ(r.rows.size(), 15u);
    ASSERT_EQ(r.outcomes.size(), r.rows.size());
    ASSERT_FALSE(r.infeasible_everywhere());
    for (size_t k = 0; k < r.rows.size(); ++k) {
        const auto &row = r.rows[k];
        ASSERT_EQ(row.p_B, 0.25 * static_cast<double>(k / 3));
        ASSERT_EQ(row.target, spec.targets[k % 3].label());
        ASSERT_EQ(row.arrangement, "AD,NONE,PF");
        ASSERT_EQ(row.above_classical, row.fidelity > 2.0 / 3 + 1e-9);
    }
    ASSERT_EQ(r.rows[0].success, 1);
}

TEST(scenario, worker_count_does_not_change_results) {
    auto spec = small_sweep();
    auto a = run_sweep(spec, quick_settings(1));
    auto b = run_sweep(spec, quick_settings(3));
    ASSERT_EQ(a.rows, b.rows);
}

TEST(scenario, deterministic_fidelity_is_sum_of_outcomes) {
    auto r = run_sweep(small_sweep(), quick_settings());
    std::stringstream ss;
    write_outcome_csv(ss, {"outcomes"}, r.outcomes);
    auto parsed = parse_outcome_csv(ss);
    ASSERT_EQ(parsed.size(), r.outcomes.size());
    for (const auto &o : parsed) {
        double sum = 0;
        for (size_t j = 0; j < 4; ++j) {
            if (!std::isnan(o.fbar[j])) {
                sum += o.qbar[j] * o.fbar[j];
            }
        }
        ASSERT_LT(std::abs(sum - o.f_det), 1e-9) << "row " << o.row;
    }
}

TEST(scenario, csv_round_trip) {
    auto r = run_sweep(small_sweep(), quick_settings());
    std::stringstream ss;
    write_sweep_csv(ss, {"config a", "config b"}, r.rows);
    std::string text = ss.str();
    ASSERT_EQ(text.rfind("# config a\n# config b\n", 0), 0u);
    ASSERT_NE(text.find(kSweepHeader), std::string::npos);
    auto parsed = parse_sweep_csv(ss);
    ASSERT_EQ(parsed, r.rows);

    std::stringstream again;
    write_sweep_csv(again, {"config a", "config b"}, parsed);
    ASSERT_EQ(again.str(), text);
}

TEST(scenario, csv_rejects_bad_header) {
    std::stringstream ss("scenario,arrangement\n1,x\n");
    ASSERT_THROW(parse_sweep_csv(ss), std::runtime_error);
}

TEST(scenario, infeasible_rows_are_kept) {
    auto spec = small_sweep();
    spec.targets = {Target::outcome(4)};
    auto settings = quick_settings();
    settings.search.q_min = 0.95;
    auto r = run_sweep(spec, settings);
    ASSERT_EQ(r.rows.size(), 5u);
    for (const auto &row : r.rows) {
        ASSERT_EQ(row.status, "infeasible");
        ASSERT_FALSE(row.above_classical);
    }
    ASSERT_TRUE(r.infeasible_everywhere());
}

TEST(scenario, fixed_eval) {
    std::vector<int> all = {1, 2, 3, 4};
    auto e = run_fixed_eval(Arrangement{}, {}, all);
    ASSERT_NEAR(e.postselected.success, 1, 1e-12);
    ASSERT_NEAR(e.postselected.efficiency, 1, 1e-12);
    ASSERT_NEAR(e.report.f_det, 1, 1e-12);
}

TEST(scenario, atomic_write) {
    auto dir = std::filesystem::temp_directory_path() / "pqt_scenario_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "out.csv";
    write_file_atomic(path, "first\n");
    write_file_atomic(path, "second\n");
    ASSERT_EQ(read_all(path), "second\n");
    ASSERT_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
    ASSERT_THROW(write_file_atomic(dir / "missing" / "x.csv", "x"), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST(scenario, format_number) {
    ASSERT_EQ(format_number(0.1), "0.1");
    ASSERT_EQ(format_number(2.0 / 3), "0.666666666667");
    ASSERT_EQ(format_number(std::nan("")), "nan");
    ASSERT_EQ(round12(2.0 / 3), 0.666666666667);
}
