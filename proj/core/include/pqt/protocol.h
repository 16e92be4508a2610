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

#ifndef PQT_PROTOCOL_H
#define PQT_PROTOCOL_H

#include <array>
#include <optional>

#include "pqt/noise.h"
#include "pqt/qlin.h"

namespace pqt {

inline constexpr double kPi = 3.14159265358979323846;

/// Below this Q_j an outcome is treated as never occurring.
inline constexpr double kOutcomeFloor = 1e-14;

/// Pure input qubit sqrt(u)|0> + sqrt(1-u) e^{i gamma}|1>.
struct InputState {
    double u = 1;
    double gamma = 0;

    Ket ket() const;
    ComplexMatrix density() const;
};

/// Throws std::invalid_argument outside u in [0,1], gamma in [0, 2 pi].
void validate(const InputState &input);

/// theta sets the shared state cos(theta)|00> + sin(theta)|11>; phi sets Alice's measurement basis.
struct ChannelParams {
    double theta = kPi / 4;
    double phi = kPi / 4;
};

struct ProtocolOutcome {
    int j = 0;
    double q = 0;
    /// Bob's state after correction; empty when q < q_floor.
    std::optional<ComplexMatrix> bob_state;
    std::optional<double> fidelity;

    bool defined() const {
        return fidelity.has_value();
    }
};

/// Generalized Bell ket j in {1..4}:
///   1: cos(phi)|00> + sin(phi)|11>     2: sin(phi)|00> - cos(phi)|11>
///   3: cos(phi)|01> + sin(phi)|10>     4: sin(phi)|01> - cos(phi)|10>
Ket bell_ket(int j, double phi);

/// Bob's fixed correction: 1 -> I, 2 -> Z, 3 -> X, 4 -> ZX.
ComplexMatrix correction_unitary(int j);

/// Density matrix of the noiseless shared pair, |B_1^theta><B_1^theta|.
ComplexMatrix channel_state(double theta);

/// Concurrence of the noiseless shared pair, |sin(2 theta)|.
double channel_concurrence(double theta);

/// One teleportation run for a fixed input: joint state, noise on all three qubits,
/// projection onto each generalized Bell state, Bob's correction, and fidelity.
std::array<ProtocolOutcome, 4> run(const InputState &input, const ChannelParams &params, const Arrangement &arr,
                                   double q_floor = kOutcomeFloor);

/// Outcome probability and the product Q_j * F_j at one input.
struct WeightedOutcome {
    double q = 0;
    double qf = 0;
};

/// The protocol at fixed (params, arrangement) as a linear map from the input density
/// matrix to Bob's unnormalized corrected state per outcome. Built once from the images of
/// the four operator-basis inputs |a><b|, using the per-qubit factorization of the noise;
/// afterwards each input costs a handful of 2x2 operations. run() is the unfactored route.
class ProtocolMap {
   public:
    ProtocolMap(const ChannelParams &params, const Arrangement &arr);

    /// U_j Tr_12[P_j rho P_j] U_j^dag for rho the noisy joint state built from input_density (unnormalized).
    ComplexMatrix bob_unnormalized(int j, const ComplexMatrix &input_density) const;

    std::array<WeightedOutcome, 4> evaluate(const InputState &input) const;

   private:
    // blocks_[j][2a+b] is the image of |a><b|.
    std::array<std::array<std::array<complex, 4>, 4>, 4> blocks_{};
};

}  // namespace pqt

#endif
