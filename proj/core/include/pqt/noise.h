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

#ifndef PQT_NOISE_H
#define PQT_NOISE_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "pqt/qlin.h"

namespace pqt {

enum class NoiseKind { None, BitFlip, PhaseFlip, Depolarizing, AmplitudeDamping };

inline constexpr std::array<NoiseKind, 4> kNoisyKinds = {
    NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::Depolarizing, NoiseKind::AmplitudeDamping};

/// One noise channel acting on one qubit; p is the probability the noise acted.
struct NoiseSpec {
    NoiseKind kind = NoiseKind::None;
    double p = 0;

    bool operator==(const NoiseSpec &) const = default;
};

/// Noise on the three protocol qubits in tensor order (input, Alice's channel half, Bob's channel half).
struct Arrangement {
    NoiseSpec input;
    NoiseSpec alice;
    NoiseSpec bob;

    bool has(NoiseKind kind) const;
    bool operator==(const Arrangement &) const = default;
};

/// Throws std::invalid_argument if p is outside [0, 1] or NaN.
void validate(const NoiseSpec &spec);

/// Textual codes: NONE, BF, PF, D, AD.
std::string_view code(NoiseKind kind);
/// Accepts the codes above case-insensitively, plus "PHF" and "0" aliases.
NoiseKind parse_noise_kind(std::string_view text);

/// "AD,NONE,PF" style triple, in (input, alice, bob) order.
std::string arrangement_code(const Arrangement &arr);
std::array<NoiseKind, 3> parse_arrangement_code(std::string_view text);

/// Kraus operators of the single-qubit channel. Sum of E^dag E is the identity.
std::vector<ComplexMatrix> kraus_set(const NoiseSpec &spec);

/// rho -> sum_k E_k rho E_k^dag on a single qubit. Throws if rho is not a 2x2 density matrix.
ComplexMatrix apply_single(const NoiseSpec &spec, const ComplexMatrix &rho);

/// Applies a Kraus set to qubit `qubit` (0 = most significant) of an operator on `num_qubits` qubits.
/// Linear in m; m need not be a density matrix.
ComplexMatrix apply_on_qubit(std::span<const ComplexMatrix> kraus, size_t qubit, size_t num_qubits,
                             const ComplexMatrix &m);

/// Independent noise on all three qubits of an 8x8 operator: the sum over every Kraus
/// triple (E_i (x) F_j (x) G_k) m (E_i (x) F_j (x) G_k)^dag. Linear in m.
ComplexMatrix apply_arrangement(const Arrangement &arr, const ComplexMatrix &m);

}  // namespace pqt

#endif
