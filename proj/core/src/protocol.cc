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

#include "pqt/protocol.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pqt {

namespace {

void require_outcome(int j) {
    if (j < 1 || j > 4) {
        throw std::out_of_range("outcome index must be in 1..4, got " + std::to_string(j));
    }
}

}  // namespace

Ket InputState::ket() const {
    return Ket{std::sqrt(u), std::sqrt(1 - u) * std::polar(1.0, gamma)};
}

ComplexMatrix InputState::density() const {
    return outer(ket());
}

void validate(const InputState &input) {
    if (!(input.u >= 0 && input.u <= 1) || !(input.gamma >= 0 && input.gamma <= 2 * kPi)) {
        throw std::invalid_argument("input state parameters out of range");
    }
}

Ket bell_ket(int j, double phi) {
    require_outcome(j);
    double c = std::cos(phi);
    double s = std::sin(phi);
    switch (j) {
        case 1:
            return Ket{c, 0, 0, s};
        case 2:
            return Ket{s, 0, 0, -c};
        case 3:
            return Ket{0, c, s, 0};
        default:
            return Ket{0, s, -c, 0};
    }
}

ComplexMatrix correction_unitary(int j) {
    require_outcome(j);
    switch (j) {
        case 1:
            return pauli::I();
        case 2:
            return pauli::Z();
        case 3:
            return pauli::X();
        default:
            return pauli::Z() * pauli::X();
    }
}

ComplexMatrix channel_state(double theta) {
    return outer(Ket{std::cos(theta), 0, 0, std::sin(theta)});
}

double channel_concurrence(double theta) {
    // Absolute value: past pi/2 the state is cos|00> - |sin||11> up to a sign, equally entangled.
    return std::abs(std::sin(2 * theta));
}

std::array<ProtocolOutcome, 4> run(const InputState &input, const ChannelParams &params, const Arrangement &arr,
                                   double q_floor) {
    validate(input);
    ComplexMatrix rho_in = input.density();
    ComplexMatrix joint = apply_arrangement(arr, tensor(rho_in, channel_state(params.theta)));
    ComplexMatrix id2 = ComplexMatrix::identity(2);

    std::array<ProtocolOutcome, 4> out;
    for (int j = 1; j <= 4; ++j) {
        ProtocolOutcome &o = out[j - 1];
        o.j = j;
        ComplexMatrix projector = tensor(outer(bell_ket(j, params.phi)), id2);
        o.q = trace(projector * joint).real();
        if (o.q < q_floor) {
            continue;
        }
        ComplexMatrix u = correction_unitary(j);
        ComplexMatrix bob = partial_trace_12(projector * joint * projector);
        bob = (1.0 / o.q) * (u * bob * adjoint(u));
        o.fidelity = sandwich(input.ket(), bob, input.ket()).real();
        o.bob_state = std::move(bob);
    }
    return out;
}

ProtocolMap::ProtocolMap(const ChannelParams &params, const Arrangement &arr) {
    // The noise acts independently on each qubit, so the joint operator for input |a><b| is
    // N_in(|a><b|) (x) N_pair(rho_ch); Alice's projection is contracted without forming it.
    auto input_kraus = kraus_set(arr.input);
    ComplexMatrix pair = channel_state(params.theta);
    if (arr.alice.kind != NoiseKind::None) {
        pair = apply_on_qubit(kraus_set(arr.alice), 0, 2, pair);
    }
    if (arr.bob.kind != NoiseKind::None) {
        pair = apply_on_qubit(kraus_set(arr.bob), 1, 2, pair);
    }
    std::array<Ket, 4> bells = {bell_ket(1, params.phi), bell_ket(2, params.phi), bell_ket(3, params.phi),
                                bell_ket(4, params.phi)};
    std::array<ComplexMatrix, 4> corrections = {correction_unitary(1), correction_unitary(2), correction_unitary(3),
                                                correction_unitary(4)};
    for (size_t ab = 0; ab < 4; ++ab) {
        ComplexMatrix basis(2, 2);
        basis(ab / 2, ab % 2) = 1;
        ComplexMatrix in = apply_on_qubit(input_kraus, 0, 1, basis);
        for (size_t j = 0; j < 4; ++j) {
            const Ket &bell = bells[j];
            // Alice index x = 2 * input_bit + alice_bit.
            std::array<complex, 4> raw{};
            for (size_t x = 0; x < 4; ++x) {
                complex bx = std::conj(bell[x]);
                if (bx == complex{}) {
                    continue;
                }
                for (size_t y = 0; y < 4; ++y) {
                    complex by = bell[y];
                    complex w = bx * by * in(x / 2, y / 2);
                    if (w == complex{}) {
                        continue;
                    }
                    for (size_t r = 0; r < 2; ++r) {
                        for (size_t c = 0; c < 2; ++c) {
                            raw[2 * r + c] += w * pair(2 * (x % 2) + r, 2 * (y % 2) + c);
                        }
                    }
                }
            }
            // U raw U^dag with U a signed permutation.
            const ComplexMatrix &u = corrections[j];
            for (size_t r = 0; r < 2; ++r) {
                for (size_t c = 0; c < 2; ++c) {
                    complex v = 0;
                    for (size_t k = 0; k < 2; ++k) {
                        for (size_t l = 0; l < 2; ++l) {
                            v += u(r, k) * raw[2 * k + l] * std::conj(u(c, l));
                        }
                    }
                    blocks_[j][2 * r + c][ab] = v;
                }
            }
        }
    }
}

ComplexMatrix ProtocolMap::bob_unnormalized(int j, const ComplexMatrix &input_density) const {
    require_outcome(j);
    if (input_density.rows() != 2 || input_density.cols() != 2) {
        throw std::invalid_argument("ProtocolMap: input must be 2x2");
    }
    const auto &blk = blocks_[j - 1];
    ComplexMatrix out(2, 2);
    for (size_t rc = 0; rc < 4; ++rc) {
        complex v = 0;
        for (size_t ab = 0; ab < 4; ++ab) {
            v += blk[rc][ab] * input_density.entries()[ab];
        }
        out(rc / 2, rc % 2) = v;
    }
    return out;
}

std::array<WeightedOutcome, 4> ProtocolMap::evaluate(const InputState &input) const {
    double a = std::sqrt(input.u);
    complex b = std::sqrt(1 - input.u) * std::polar(1.0, input.gamma);
    std::array<complex, 2> psi = {a, b};
    std::array<complex, 4> rho = {a * a, a * std::conj(b), b * a, std::norm(b)};

    std::array<WeightedOutcome, 4> out;
    for (size_t j = 0; j < 4; ++j) {
        std::array<complex, 4> m{};
        for (size_t rc = 0; rc < 4; ++rc) {
            const auto &row = blocks_[j][rc];
            m[rc] = row[0] * rho[0] + row[1] * rho[1] + row[2] * rho[2] + row[3] * rho[3];
        }
        out[j].q = (m[0] + m[3]).real();
        complex overlap = 0;
        for (size_t r = 0; r < 2; ++r) {
            for (size_t c = 0; c < 2; ++c) {
                overlap += std::conj(psi[r]) * m[2 * r + c] * psi[c];
            }
        }
        out[j].qf = overlap.real();
    }
    return out;
}

}  // namespace pqt
