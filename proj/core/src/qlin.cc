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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pqt {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

// Cyclic Jacobi sweeps on a dense real symmetric matrix, in place. Returns the diagonal.
std::vector<double> jacobi_symmetric(std::vector<double> a, size_t n) {
    auto at = [&](size_t r, size_t c) -> double & {
        return a[r * n + c];
    };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                off += at(p, q) * at(p, q);
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                double tau = (at(q, q) - at(p, p)) / (2 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                double c = 1 / std::sqrt(1 + t * t);
                double s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double akp = at(k, p);
                    double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = at(p, k);
                    double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> diag(n);
    for (size_t k = 0; k < n; ++k) {
        diag[k] = at(k, k);
    }
    return diag;
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim, dim);
    for (size_t k = 0; k < dim; ++k) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros(size_t rows, size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const complex> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (size_t k = 0; k < diag.size(); ++k) {
        m(k, k) = diag[k];
    }
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "add");
    for (size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "subtract");
    for (size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(complex factor) {
    for (auto &e : entries_) {
        e *= factor;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return multiply(a, b);
}

ComplexMatrix operator*(complex factor, ComplexMatrix m) {
    m *= factor;
    return m;
}

Ket::Ket(std::vector<complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
}

Ket::Ket(std::initializer_list<complex> amplitudes) : amplitudes_(amplitudes) {
}

double Ket::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

bool Ket::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1) <= tol;
}

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a + b;
}

ComplexMatrix scale(const ComplexMatrix &m, complex factor) {
    return factor * m;
}

ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: inner dimensions differ");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); ++r) {
        for (size_t k = 0; k < a.cols(); ++k) {
            complex v = a(r, k);
            if (v == complex{}) {
                continue;
            }
            for (size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += v * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix &m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) {
            out(c, r) = std::conj(m(r, c));
        }
    }
    return out;
}

complex trace(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("trace: matrix is not square");
    }
    complex total = 0;
    for (size_t k = 0; k < m.rows(); ++k) {
        total += m(k, k);
    }
    return total;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ++ar) {
        for (size_t ac = 0; ac < a.cols(); ++ac) {
            complex v = a(ar, ac);
            for (size_t br = 0; br < b.rows(); ++br) {
                for (size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace_12(const ComplexMatrix &m) {
    if (m.rows() != 8 || m.cols() != 8) {
        throw std::invalid_argument("partial_trace_12: expected an 8x8 matrix");
    }
    ComplexMatrix out(2, 2);
    for (size_t alice = 0; alice < 4; ++alice) {
        for (size_t r = 0; r < 2; ++r) {
            for (size_t c = 0; c < 2; ++c) {
                out(r, c) += m(alice * 2 + r, alice * 2 + c);
            }
        }
    }
    return out;
}

ComplexMatrix outer(const Ket &k) {
    ComplexMatrix out(k.dim(), k.dim());
    for (size_t r = 0; r < k.dim(); ++r) {
        for (size_t c = 0; c < k.dim(); ++c) {
            out(r, c) = k[r] * std::conj(k[c]);
        }
    }
    return out;
}

complex sandwich(const Ket &a, const ComplexMatrix &m, const Ket &b) {
    if (m.rows() != a.dim() || m.cols() != b.dim()) {
        throw std::invalid_argument("sandwich: dimension mismatch");
    }
    complex total = 0;
    for (size_t r = 0; r < m.rows(); ++r) {
        complex row = 0;
        for (size_t c = 0; c < m.cols(); ++c) {
            row += m(r, c) * b[c];
        }
        total += std::conj(a[r]) * row;
    }
    return total;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0;
    for (size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = r; c < m.cols(); ++c) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix &m) {
    if (!is_hermitian(m, 1e-10)) {
        throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian");
    }
    size_t n = m.rows();
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {m(0, 0).real()};
    }
    if (n == 2) {
        double a = m(0, 0).real();
        double d = m(1, 1).real();
        double mean = (a + d) / 2;
        double radius = std::hypot((a - d) / 2, std::abs(m(0, 1)));
        return {mean - radius, mean + radius};
    }
    size_t n2 = 2 * n;
    std::vector<double> real(n2 * n2);
    for (size_t r = 0; r < n; ++r) {
        for (size_t c = 0; c < n; ++c) {
            double re = m(r, c).real();
            double im = m(r, c).imag();
            real[r * n2 + c] = re;
            real[(r + n) * n2 + (c + n)] = re;
            real[r * n2 + (c + n)] = -im;
            real[(r + n) * n2 + c] = im;
        }
    }
    auto doubled = jacobi_symmetric(std::move(real), n2);
    std::sort(doubled.begin(), doubled.end());
    // Every eigenvalue of the embedding appears twice.
    std::vector<double> out(n);
    for (size_t k = 0; k < n; ++k) {
        out[k] = (doubled[2 * k] + doubled[2 * k + 1]) / 2;
    }
    return out;
}

bool is_density_matrix(const ComplexMatrix &m, double tol, double eig_tol) {
    if (!is_hermitian(m, tol)) {
        return false;
    }
    if (std::abs(trace(m) - complex{1}) > tol) {
        return false;
    }
    auto eig = eigenvalues_hermitian(m);
    return eig.front() >= -eig_tol;
}

namespace pauli {
ComplexMatrix I() {
    return ComplexMatrix::identity(2);
}
ComplexMatrix X() {
    return {{0, 1}, {1, 0}};
}
ComplexMatrix Y() {
    return {{0, complex{0, -1}}, {complex{0, 1}, 0}};
}
ComplexMatrix Z() {
    return {{1, 0}, {0, -1}};
}
}  // namespace pauli

}  // namespace pqt
