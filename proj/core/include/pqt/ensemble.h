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

#ifndef PQT_ENSEMBLE_H
#define PQT_ENSEMBLE_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pqt/noise.h"
#include "pqt/protocol.h"

namespace pqt {

/// Averages with Q-bar below this are reported as undefined.
inline constexpr double kAverageFloor = 1e-8;

struct QuadratureNode {
    double u = 0;
    double weight = 0;
};

/// Gauss-Legendre in u = alpha^2 on [0, 1] times equally spaced gamma on [0, 2 pi).
/// Under the uniform density 1/(2 pi) the weight of node (u_k, gamma_m) is w_k / gamma_count.
struct QuadratureGrid {
    std::vector<QuadratureNode> u_nodes;
    size_t gamma_count = 0;

    static QuadratureGrid make(size_t u_order = 6, size_t gamma_count = 8);

    /// gamma_m = 2 pi m / gamma_count.
    double gamma(size_t m) const;
};

/// Gauss-Legendre nodes and weights mapped to [0, 1]; weights sum to 1.
std::vector<QuadratureNode> gauss_legendre_unit(size_t order);

struct AverageReport {
    Arrangement arrangement;
    ChannelParams params;
    /// Success rate per outcome.
    std::array<double, 4> qbar{};
    /// Postselected efficiency per outcome; empty when qbar_j is below the floor.
    std::array<std::optional<double>, 4> fbar{};
    /// Deterministic efficiency (all outcomes accepted).
    double f_det = 0;

    /// Sum over outcomes of the averaged Q_j F_j; equals f_det.
    std::array<double, 4> qf_bar{};
};

AverageReport average(const ChannelParams &params, const Arrangement &arr,
                      const QuadratureGrid &grid = QuadratureGrid::make(), double q_floor = kAverageFloor);

struct PostselectedAverage {
    double success = 0;
    double efficiency = 0;
};

/// Accepting every outcome in `outcomes` (1-based, nonempty). Throws std::invalid_argument on an
/// empty or out-of-range set, std::domain_error when the combined success is below q_floor.
PostselectedAverage average_postselected(const AverageReport &report, std::span<const int> outcomes,
                                         double q_floor = kAverageFloor);

struct MonteCarloReport {
    AverageReport report;
    std::array<double, 4> qbar_se{};
    std::array<double, 4> fbar_se{};
    double f_det_se = 0;
    size_t samples = 0;
};

/// Haar sampling (u ~ U[0,1], gamma ~ U[0, 2 pi)) through the full per-input pipeline.
/// F-bar uses the ratio estimator; its standard error is the delta-method value.
MonteCarloReport monte_carlo_average(const ChannelParams &params, const Arrangement &arr, size_t samples,
                                     uint64_t seed, double q_floor = kAverageFloor);

}  // namespace pqt

#endif
