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

#include "pqt/ensemble.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pqt {

std::vector<QuadratureNode> gauss_legendre_unit(size_t order) {
    if (order == 0) {
        throw std::invalid_argument("Gauss-Legendre order must be positive");
    }
    std::vector<QuadratureNode> nodes(order);
    size_t n = order;
    for (size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1;
            double p1 = x;
            for (size_t k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p0 = 1;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        double p0 = 1;
        double p1 = x;
        for (size_t k = 2; k <= n; ++k) {
            double pk = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = n == 1 ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1);
        double w = 2 / ((1 - x * x) * dp * dp);
        // Map [-1, 1] -> [0, 1]; the measure halves.
        nodes[i] = {(1 - x) / 2, w / 2};
        nodes[n - 1 - i] = {(1 + x) / 2, w / 2};
    }
    return nodes;
}

QuadratureGrid QuadratureGrid::make(size_t u_order, size_t gamma_count) {
    if (gamma_count == 0) {
        throw std::invalid_argument("gamma grid needs at least one point");
    }
    return QuadratureGrid{gauss_legendre_unit(u_order), gamma_count};
}

double QuadratureGrid::gamma(size_t m) const {
    return 2 * kPi * static_cast<double>(m) / static_cast<double>(gamma_count);
}

AverageReport average(const ChannelParams &params, const Arrangement &arr, const QuadratureGrid &grid,
                      double q_floor) {
    ProtocolMap map(params, arr);
    AverageReport report;
    report.arrangement = arr;
    report.params = params;
    for (const auto &node : grid.u_nodes) {
        double w = node.weight / static_cast<double>(grid.gamma_count);
        for (size_t m = 0; m < grid.gamma_count; ++m) {
            auto outcomes = map.evaluate(InputState{node.u, grid.gamma(m)});
            for (size_t j = 0; j < 4; ++j) {
                report.qbar[j] += w * outcomes[j].q;
                report.qf_bar[j] += w * outcomes[j].qf;
            }
        }
    }
    for (size_t j = 0; j < 4; ++j) {
        report.f_det += report.qf_bar[j];
        if (report.qbar[j] >= q_floor) {
            report.fbar[j] = report.qf_bar[j] / report.qbar[j];
        }
    }
    return report;
}

PostselectedAverage average_postselected(const AverageReport &report, std::span<const int> outcomes,
                                         double q_floor) {
    if (outcomes.empty()) {
        throw std::invalid_argument("postselection set is empty");
    }
    std::array<bool, 4> seen{};
    PostselectedAverage out;
    double weighted = 0;
    for (int j : outcomes) {
        if (j < 1 || j > 4) {
            throw std::invalid_argument("postselection outcome out of range: " + std::to_string(j));
        }
        if (seen[j - 1]) {
            continue;
        }
        seen[j - 1] = true;
        out.success += report.qbar[j - 1];
        weighted += report.qf_bar[j - 1];
    }
    if (out.success < q_floor) {
        throw std::domain_error("postselected success rate is zero");
    }
    out.efficiency = weighted / out.success;
    return out;
}

MonteCarloReport monte_carlo_average(const ChannelParams &params, const Arrangement &arr, size_t samples,
                                     uint64_t seed, double q_floor) {
    if (samples == 0) {
        throw std::invalid_argument("monte carlo needs at least one sample");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Running sums for Q_j, Q_j F_j, their squares and cross terms, and the deterministic F.
    std::array<double, 4> sq{}, sqf{}, sq2{}, sqf2{}, sqqf{};
    double sdet = 0;
    double sdet2 = 0;
    for (size_t s = 0; s < samples; ++s) {
        InputState input{unit(rng), 2 * kPi * unit(rng)};
        auto outcomes = run(input, params, arr);
        double det = 0;
        for (size_t j = 0; j < 4; ++j) {
            double q = outcomes[j].q;
            double qf = outcomes[j].defined() ? q * *outcomes[j].fidelity : 0.0;
            sq[j] += q;
            sqf[j] += qf;
            sq2[j] += q * q;
            sqf2[j] += qf * qf;
            sqqf[j] += q * qf;
            det += qf;
        }
        sdet += det;
        sdet2 += det * det;
    }

    double n = static_cast<double>(samples);
    auto variance = [n](double sum, double sum2) {
        double mean = sum / n;
        return n > 1 ? std::max(0.0, (sum2 - n * mean * mean) / (n - 1)) : 0.0;
    };

    MonteCarloReport mc;
    mc.samples = samples;
    mc.report.arrangement = arr;
    mc.report.params = params;
    for (size_t j = 0; j < 4; ++j) {
        double mq = sq[j] / n;
        double mqf = sqf[j] / n;
        mc.report.qbar[j] = mq;
        mc.report.qf_bar[j] = mqf;
        mc.qbar_se[j] = std::sqrt(variance(sq[j], sq2[j]) / n);
        if (mq >= q_floor) {
            double ratio = mqf / mq;
            mc.report.fbar[j] = ratio;
            // Var(QF - R Q) = Var(QF) - 2 R Cov(Q, QF) + R^2 Var(Q)
            double cov = n > 1 ? (sqqf[j] - n * mq * mqf) / (n - 1) : 0.0;
            double resid = variance(sqf[j], sqf2[j]) - 2 * ratio * cov + ratio * ratio * variance(sq[j], sq2[j]);
            mc.fbar_se[j] = std::sqrt(std::max(0.0, resid) / n) / mq;
        }
    }
    mc.report.f_det = sdet / n;
    mc.f_det_se = std::sqrt(variance(sdet, sdet2) / n);
    return mc;
}

}  // namespace pqt
