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

#ifndef PQT_QLIN_H
#define PQT_QLIN_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pqt {

using complex = std::complex<double>;

/// Absolute tolerance used for O(1) matrix comparisons.
inline constexpr double kMatrixTol = 1e-12;

/// Dense complex matrix stored row-major. Sized for few-qubit density matrices (dimension <= 8).
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<complex> entries);
    /// Row-major nested initializer, e.g. {{1, 0}, {0, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

    static ComplexMatrix identity(size_t dim);
    static ComplexMatrix zeros(size_t rows, size_t cols);
    static ComplexMatrix diagonal(std::span<const complex> diag);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    std::span<const complex> entries() const {
        return entries_;
    }

    complex &operator()(size_t r, size_t c) {
        return entries_[r * cols_ + c];
    }
    const complex &operator()(size_t r, size_t c) const {
        return entries_[r * cols_ + c];
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(complex factor);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(complex factor, ComplexMatrix m);

/// Pure state vector.
class Ket {
   public:
    Ket() = default;
    explicit Ket(std::vector<complex> amplitudes);
    Ket(std::initializer_list<complex> amplitudes);

    size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const complex> amplitudes() const {
        return amplitudes_;
    }
    const complex &operator[](size_t k) const {
        return amplitudes_[k];
    }
    double norm_squared() const;
    bool is_normalized(double tol = kMatrixTol) const;

   private:
    std::vector<complex> amplitudes_;
};

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix scale(const ComplexMatrix &m, complex factor);
ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix adjoint(const ComplexMatrix &m);
complex trace(const ComplexMatrix &m);

/// Kronecker product; row and column counts multiply.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

/// Traces out qubits 1 and 2 of a three-qubit operator, keeping the last qubit.
/// Throws std::invalid_argument unless m is 8x8.
ComplexMatrix partial_trace_12(const ComplexMatrix &m);

/// |k><k|.
ComplexMatrix outer(const Ket &k);

/// <a|m|b>.
complex sandwich(const Ket &a, const ComplexMatrix &m, const Ket &b);

/// Eigenvalues of a Hermitian matrix, ascending. 2x2 uses the closed form; larger
/// sizes run cyclic Jacobi on the real-symmetric embedding [[Re, -Im], [Im, Re]].
/// Throws std::invalid_argument when m is not square or not Hermitian within 1e-10.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix &m);

/// Largest entrywise |a - b|; throws on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_hermitian(const ComplexMatrix &m, double tol = kMatrixTol);

/// Hermitian, unit trace, and eigenvalues >= -eig_tol.
bool is_density_matrix(const ComplexMatrix &m, double tol = kMatrixTol, double eig_tol = 1e-10);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

}  // namespace pqt

#endif
