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

#ifndef PQT_TESTS_TEST_UTIL_H
#define PQT_TESTS_TEST_UTIL_H

#include <random>

#include "pqt/noise.h"
#include "pqt/qlin.h"

namespace pqt::tu {

// Fixed seed so failures reproduce.
inline std::mt19937_64 &rng() {
    static std::mt19937_64 gen(20260417);
    return gen;
}

inline double uniform(double lo = 0, double hi = 1) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Ket random_ket(size_t dim) {
    std::normal_distribution<double> n;
    std::vector<complex> a(dim);
    double norm = 0;
    for (auto &x : a) {
        x = {n(rng()), n(rng())};
        norm += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(norm);
    }
    return Ket(a);
}

inline ComplexMatrix random_hermitian(size_t dim) {
    std::normal_distribution<double> n;
    ComplexMatrix m(dim, dim);
    for (size_t r = 0; r < dim; ++r) {
        m(r, r) = n(rng());
        for (size_t c = r + 1; c < dim; ++c) {
            m(r, c) = {n(rng()), n(rng())};
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

inline NoiseKind random_kind() {
    return static_cast<NoiseKind>(std::uniform_int_distribution<int>(0, 4)(rng()));
}

inline Arrangement random_arrangement() {
    return Arrangement{{random_kind(), uniform()}, {random_kind(), uniform()}, {random_kind(), uniform()}};
}

}  // namespace pqt::tu

#endif
