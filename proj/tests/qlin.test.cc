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

#include "pqt/qlin.h"

#include <gtest/gtest.h>

#include "pqt/protocol.h"
#include "test_util.h"

using namespace pqt;
using namespace pqt::pauli;

namespace {

ComplexMatrix diag(std::vector<complex> d) {
    return ComplexMatrix::diagonal(d);
}

}  // namespace

TEST(qlin, tensor_identity) {
    ASSERT_EQ(tensor(I(), I()), ComplexMatrix::identity(4));
}

TEST(qlin, tensor_zz) {
    ASSERT_EQ(tensor(Z(), Z()), diag({1, -1, -1, 1}));
}

TEST(qlin, tensor_input_and_channel) {
    ComplexMatrix rho = tensor(outer(Ket{1, 0}), channel_state(kPi / 4));
    ASSERT_EQ(rho.rows(), 8u);
    for (size_t r = 0; r < 8; ++r) {
        for (size_t c = 0; c < 8; ++c) {
            bool corner = (r == 0 || r == 3) && (c == 0 || c == 3);
            ASSERT_NEAR(std::abs(rho(r, c) - complex(corner ? 0.5 : 0.0)), 0, 1e-15) << r << "," << c;
        }
    }
}

TEST(qlin, tensor_associative) {
    auto a = tu::random_hermitian(2);
    auto b = tu::random_hermitian(2);
    auto c = tu::random_hermitian(2);
    ASSERT_LT(max_abs_diff(tensor(tensor(a, b), c), tensor(a, tensor(b, c))), 1e-15);
}

TEST(qlin, trace_of_tensor) {
    for (int k = 0; k < 20; ++k) {
        auto a = tu::random_hermitian(4);
        auto b = tu::random_hermitian(2);
        ASSERT_NEAR(std::abs(trace(tensor(a, b)) - trace(a) * trace(b)), 0, 1e-12);
    }
}

TEST(qlin, partial_trace_examples) {
    auto a = outer(tu::random_ket(4));
    auto b = outer(tu::random_ket(2));
    ASSERT_LT(max_abs_diff(partial_trace_12(tensor(a, b)), b), 1e-12);
    ASSERT_LT(max_abs_diff(partial_trace_12(0.125 * ComplexMatrix::identity(8)), 0.5 * ComplexMatrix::identity(2)),
              1e-15);
    ComplexMatrix joint = tensor(outer(Ket{1, 0}), channel_state(kPi / 4));
    ASSERT_LT(max_abs_diff(partial_trace_12(joint), diag({0.5, 0.5})), 1e-15);
}

TEST(qlin, partial_trace_of_product_random) {
    for (int k = 0; k < 20; ++k) {
        auto a = tu::random_hermitian(4);
        auto b = tu::random_hermitian(2);
        ASSERT_LT(max_abs_diff(partial_trace_12(tensor(a, b)), trace(a) * b), 1e-12);
    }
}

TEST(qlin, outer_examples) {
    ASSERT_EQ(outer(Ket{1, 0}), diag({1, 0}));
    ComplexMatrix b1 = outer(bell_ket(1, kPi / 4));
    ASSERT_NEAR(b1(0, 0).real(), 0.5, 1e-15);
    ASSERT_NEAR(b1(0, 3).real(), 0.5, 1e-15);
    ASSERT_NEAR(b1(3, 0).real(), 0.5, 1e-15);
    ASSERT_NEAR(b1(3, 3).real(), 0.5, 1e-15);

    ComplexMatrix b4 = outer(bell_ket(4, kPi / 3));
    ComplexMatrix expected(4, 4);
    expected(1, 1) = 0.75;
    expected(1, 2) = -std::sqrt(3.0) / 4;
    expected(2, 1) = -std::sqrt(3.0) / 4;
    expected(2, 2) = 0.25;
    ASSERT_LT(max_abs_diff(b4, expected), 1e-15);
}

TEST(qlin, outer_is_projector) {
    for (size_t dim : {2, 4, 8}) {
        auto p = outer(tu::random_ket(dim));
        ASSERT_LT(max_abs_diff(p * p, p), 1e-12);
    }
}

TEST(qlin, trace_adjoint_eigenvalues) {
    ASSERT_EQ(trace(ComplexMatrix::identity(4)), complex(4));
    auto m = tu::random_hermitian(4) + complex(0, 1) * tu::random_hermitian(4);
    ASSERT_EQ(adjoint(adjoint(m)), m);
    auto ev = eigenvalues_hermitian(X());
    ASSERT_EQ(ev.size(), 2u);
    ASSERT_NEAR(ev[0], -1, 1e-14);
    ASSERT_NEAR(ev[1], 1, 1e-14);
}

TEST(qlin, eigenvalues_match_trace_and_projector_spectrum) {
    for (size_t dim : {4, 8}) {
        auto h = tu::random_hermitian(dim);
        auto ev = eigenvalues_hermitian(h);
        double sum = 0;
        for (double e : ev) {
            sum += e;
        }
        ASSERT_NEAR(sum, trace(h).real(), 1e-10);
        ASSERT_TRUE(std::is_sorted(ev.begin(), ev.end()));

        auto p = eigenvalues_hermitian(outer(tu::random_ket(dim)));
        ASSERT_NEAR(p.back(), 1, 1e-10);
        ASSERT_NEAR(p.front(), 0, 1e-10);
    }
}

TEST(qlin, density_checks) {
    ASSERT_TRUE(is_density_matrix(outer(tu::random_ket(8))));
    ASSERT_FALSE(is_density_matrix(Z()));
    ASSERT_FALSE(is_density_matrix(diag({0.5, 0.6})));
    ComplexMatrix skew = 0.5 * I();
    skew(0, 1) = 0.1;
    ASSERT_FALSE(is_hermitian(skew));
}

TEST(qlin, shape_errors) {
    ASSERT_THROW(ComplexMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
    ASSERT_THROW(ComplexMatrix::identity(2) * ComplexMatrix::identity(4), std::invalid_argument);
    ASSERT_THROW(partial_trace_12(ComplexMatrix::identity(4)), std::invalid_argument);
}
