// Copyright 2026 The qsdc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsdc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cstdio>
#include <numeric>

namespace qsdc {

Matrix dagger(const Matrix& m) { return m.adjoint(); }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

Matrix kron(const Matrix& a, const Matrix& b, const NumericPolicy& policy) {
    const long rows = a.rows() * b.rows();
    const long cols = a.cols() * b.cols();
    if (rows > policy.max_dim || cols > policy.max_dim) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "kron: result %ldx%ld exceeds the configured maximum dimension %d "
                      "(operands %ldx%ld and %ldx%ld)",
                      rows, cols, policy.max_dim, a.rows(), a.cols(), b.rows(), b.cols());
        throw std::invalid_argument(buf);
    }
    Matrix out(rows, cols);
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

void check_bipartite_dims(const Matrix& x, int d_a, int d_b, const char* who) {
    const long dim = static_cast<long>(d_a) * d_b;
    if (d_a < 1 || d_b < 1 || x.rows() != dim || x.cols() != dim) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: operator is %ldx%ld but local dims are (%d,%d)",
                      who, x.rows(), x.cols(), d_a, d_b);
        throw std::invalid_argument(buf);
    }
}

} // namespace

Matrix partial_trace(const Matrix& x, int d_a, int d_b, Subsystem keep) {
    check_bipartite_dims(x, d_a, d_b, "partial_trace");
    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(d_a, d_a);
        for (int a = 0; a < d_a; ++a)
            for (int ap = 0; ap < d_a; ++ap) {
                Complex acc = 0.0;
                for (int b = 0; b < d_b; ++b) acc += x(a * d_b + b, ap * d_b + b);
                out(a, ap) = acc;
            }
        return out;
    }
    Matrix out = Matrix::Zero(d_b, d_b);
    for (int b = 0; b < d_b; ++b)
        for (int bp = 0; bp < d_b; ++bp) {
            Complex acc = 0.0;
            for (int a = 0; a < d_a; ++a) acc += x(a * d_b + b, a * d_b + bp);
            out(b, bp) = acc;
        }
    return out;
}

Matrix partial_transpose(const Matrix& x, int d_a, int d_b, Subsystem which) {
    check_bipartite_dims(x, d_a, d_b, "partial_transpose");
    Matrix out(x.rows(), x.cols());
    for (int a = 0; a < d_a; ++a)
        for (int b = 0; b < d_b; ++b)
            for (int ap = 0; ap < d_a; ++ap)
                for (int bp = 0; bp < d_b; ++bp) {
                    if (which == Subsystem::A)
                        out(a * d_b + b, ap * d_b + bp) = x(ap * d_b + b, a * d_b + bp);
                    else
                        out(a * d_b + b, ap * d_b + bp) = x(a * d_b + bp, ap * d_b + b);
                }
    return out;
}

Matrix permute_subsystems(const Matrix& x, const std::vector<int>& dims,
                          const std::vector<int>& order) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("permute_subsystems: dims/order size mismatch");
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("permute_subsystems: nonpositive factor dim");
        total *= d;
    }
    if (x.rows() != total || x.cols() != total)
        throw std::invalid_argument("permute_subsystems: operator size does not match dims");

    std::vector<bool> seen(n, false);
    for (int o : order) {
        if (o < 0 || o >= n || seen[o])
            throw std::invalid_argument("permute_subsystems: order is not a permutation");
        seen[o] = true;
    }

    // Strides of each factor in the old (row-major tensor) index.
    std::vector<long> stride(n, 1);
    for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

    // index_map[new_index] = old_index
    std::vector<long> index_map(total);
    std::vector<int> digits(n, 0);
    for (long idx = 0; idx < total; ++idx) {
        long rem = idx;
        for (int k = 0; k < n; ++k) {
            const int dim_k = dims[order[k]];
            long block = 1;
            for (int l = k + 1; l < n; ++l) block *= dims[order[l]];
            digits[order[k]] = static_cast<int>(rem / block % dim_k);
        }
        long old_idx = 0;
        for (int k = 0; k < n; ++k) old_idx += digits[k] * stride[k];
        index_map[idx] = old_idx;
        (void)rem;
    }

    Matrix out(total, total);
    for (long i = 0; i < total; ++i)
        for (long j = 0; j < total; ++j) out(i, j) = x(index_map[i], index_map[j]);
    return out;
}

HermitianEig herm_eig(const Matrix& h, const NumericPolicy& policy) {
    if (h.rows() != h.cols()) throw std::invalid_argument("herm_eig: matrix is not square");
    const double scale = h.norm();
    const double dev = (h - h.adjoint()).norm();
    if (dev > policy.symmetry_tol * std::max(1.0, scale)) {
        char buf[120];
        std::snprintf(buf, sizeof(buf),
                      "herm_eig: matrix is not Hermitian (deviation %.3e, norm %.3e)", dev,
                      scale);
        throw std::invalid_argument(buf);
    }
    Matrix sym = hermitian_part(h);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("herm_eig: eigen-iteration failed to converge within the "
                                 "backend's internal iteration limit");
    const long n = sym.rows();
    HermitianEig out;
    out.eigenvalues = RealVector(n);
    out.eigenvectors = Matrix(n, n);
    // Eigen sorts ascending; flip to descending.
    for (long k = 0; k < n; ++k) {
        out.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
        out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

double trace_norm(const Matrix& m, const NumericPolicy& policy) {
    if (m.rows() == m.cols() && is_hermitian(m, policy.symmetry_tol)) {
        const HermitianEig eig = herm_eig(m, policy);
        return eig.eigenvalues.cwiseAbs().sum();
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

double trace_distance(const Matrix& rho, const Matrix& sigma, const NumericPolicy& policy) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    return 0.5 * trace_norm(rho - sigma, policy);
}

} // namespace qsdc
