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

#include "pqt/noise.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace pqt {

bool Arrangement::has(NoiseKind kind) const {
    return input.kind == kind || alice.kind == kind || bob.kind == kind;
}

void validate(const NoiseSpec &spec) {
    if (!(spec.p >= 0 && spec.p <= 1)) {
        throw std::invalid_argument("noise probability must lie in [0, 1], got " + std::to_string(spec.p));
    }
}

std::string_view code(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::None:
            return "NONE";
        case NoiseKind::BitFlip:
            return "BF";
        case NoiseKind::PhaseFlip:
            return "PF";
        case NoiseKind::Depolarizing:
            return "D";
        case NoiseKind::AmplitudeDamping:
            return "AD";
    }
    throw std::logic_error("unknown NoiseKind");
}

NoiseKind parse_noise_kind(std::string_view text) {
    std::string upper;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    if (upper == "NONE" || upper == "0") {
        return NoiseKind::None;
    }
    if (upper == "BF") {
        return NoiseKind::BitFlip;
    }
    if (upper == "PF" || upper == "PHF") {
        return NoiseKind::PhaseFlip;
    }
    if (upper == "D") {
        return NoiseKind::Depolarizing;
    }
    if (upper == "AD") {
        return NoiseKind::AmplitudeDamping;
    }
    throw std::invalid_argument("unknown noise code '" + std::string(text) + "'");
}

std::string arrangement_code(const Arrangement &arr) {
    std::string out;
    out += code(arr.input.kind);
    out += ',';
    out += code(arr.alice.kind);
    out += ',';
    out += code(arr.bob.kind);
    return out;
}

std::array<NoiseKind, 3> parse_arrangement_code(std::string_view text) {
    std::array<NoiseKind, 3> out{};
    size_t start = 0;
    for (size_t k = 0; k < 3; ++k) {
        size_t comma = text.find(',', start);
        if ((k < 2) == (comma == std::string_view::npos)) {
            throw std::invalid_argument("arrangement code needs exactly three comma-separated kinds: '" +
                                        std::string(text) + "'");
        }
        out[k] = parse_noise_kind(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        start = comma + 1;
    }
    return out;
}

std::vector<ComplexMatrix> kraus_set(const NoiseSpec &spec) {
    validate(spec);
    double p = spec.p;
    switch (spec.kind) {
        case NoiseKind::None:
            return {pauli::I()};
        case NoiseKind::BitFlip:
            return {std::sqrt(1 - p) * pauli::I(), std::sqrt(p) * pauli::X()};
        case NoiseKind::PhaseFlip:
            return {std::sqrt(1 - p) * pauli::I(), std::sqrt(p) * pauli::Z()};
        case NoiseKind::Depolarizing: {
            double w = std::sqrt(p / 4);
            return {std::sqrt(1 - 3 * p / 4) * pauli::I(), w * pauli::X(), w * pauli::Y(), w * pauli::Z()};
        }
        case NoiseKind::AmplitudeDamping:
            return {ComplexMatrix{{1, 0}, {0, std::sqrt(1 - p)}}, ComplexMatrix{{0, std::sqrt(p)}, {0, 0}}};
    }
    throw std::logic_error("unknown NoiseKind");
}

ComplexMatrix apply_single(const NoiseSpec &spec, const ComplexMatrix &rho) {
    if (rho.rows() != 2 || rho.cols() != 2 || !is_density_matrix(rho)) {
        throw std::invalid_argument("apply_single: input is not a 2x2 density matrix");
    }
    auto ks = kraus_set(spec);
    return apply_on_qubit(ks, 0, 1, rho);
}

ComplexMatrix apply_on_qubit(std::span<const ComplexMatrix> kraus, size_t qubit, size_t num_qubits,
                             const ComplexMatrix &m) {
    size_t dim = size_t{1} << num_qubits;
    if (qubit >= num_qubits || m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument("apply_on_qubit: dimension mismatch");
    }
    size_t shift = num_qubits - 1 - qubit;
    size_t mask = size_t{1} << shift;
    ComplexMatrix out(dim, dim);
    ComplexMatrix left(dim, dim);
    for (const auto &k : kraus) {
        // left = K_q m
        for (size_t r = 0; r < dim; ++r) {
            size_t br = (r >> shift) & 1;
            size_t r0 = r & ~mask;
            for (size_t c = 0; c < dim; ++c) {
                left(r, c) = k(br, 0) * m(r0, c) + k(br, 1) * m(r0 | mask, c);
            }
        }
        // out += left K_q^dag
        for (size_t r = 0; r < dim; ++r) {
            for (size_t c = 0; c < dim; ++c) {
                size_t bc = (c >> shift) & 1;
                size_t c0 = c & ~mask;
                out(r, c) += left(r, c0) * std::conj(k(bc, 0)) + left(r, c0 | mask) * std::conj(k(bc, 1));
            }
        }
    }
    return out;
}

ComplexMatrix apply_arrangement(const Arrangement &arr, const ComplexMatrix &m) {
    if (m.rows() != 8 || m.cols() != 8) {
        throw std::invalid_argument("apply_arrangement: expected an 8x8 operator");
    }
    // Kraus triples factor as commuting single-qubit maps, so the triple sum is three passes.
    ComplexMatrix out = m;
    const NoiseSpec *specs[3] = {&arr.input, &arr.alice, &arr.bob};
    for (size_t q = 0; q < 3; ++q) {
        if (specs[q]->kind == NoiseKind::None) {
            validate(*specs[q]);
            continue;
        }
        auto ks = kraus_set(*specs[q]);
        out = apply_on_qubit(ks, q, 3, out);
    }
    return out;
}

}  // namespace pqt
