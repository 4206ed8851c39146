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

#include "qsdc/states.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>

#include "qsdc/rng.hpp"

namespace qsdc {

void validate_density(const DensityOperator& rho, const NumericPolicy& policy) {
    const long dim = static_cast<long>(rho.d_a) * rho.d_b;
    if (rho.d_a < 1 || rho.d_b < 1 || rho.matrix.rows() != dim || rho.matrix.cols() != dim)
        throw InvariantViolation("density operator: matrix size does not match (d_a, d_b)");
    if (dim > policy.max_dim)
        throw InvariantViolation("density operator: dimension exceeds the configured maximum");
    if (!is_hermitian(rho.matrix, policy.symmetry_tol))
        throw InvariantViolation("density operator: matrix is not Hermitian");
    if (std::abs(rho.matrix.trace().real() - 1.0) > policy.trace_tol ||
        std::abs(rho.matrix.trace().imag()) > policy.trace_tol)
        throw InvariantViolation("density operator: trace differs from one");
    const HermitianEig eig = herm_eig(rho.matrix, policy);
    if (eig.eigenvalues.minCoeff() < -policy.psd_tol)
        throw InvariantViolation("density operator: negative eigenvalue beyond tolerance");
}

void validate_pure(const PureState& psi, const NumericPolicy& policy) {
    const long dim = static_cast<long>(psi.d_a) * psi.d_b;
    if (psi.d_a < 1 || psi.d_b < 1 || psi.amplitudes.size() != dim)
        throw InvariantViolation("pure state: amplitude count does not match (d_a, d_b)");
    if (std::abs(psi.amplitudes.norm() - 1.0) > policy.symmetry_tol)
        throw InvariantViolation("pure state: amplitudes are not normalized");
}

DensityOperator pure_to_density(const PureState& psi) {
    DensityOperator rho;
    rho.matrix = psi.amplitudes * psi.amplitudes.adjoint();
    rho.d_a = psi.d_a;
    rho.d_b = psi.d_b;
    return rho;
}

DensityOperator make_density(const Matrix& m, int d_a, int d_b, const NumericPolicy& policy) {
    DensityOperator rho{m, d_a, d_b};
    validate_density(rho, policy);
    return rho;
}

PureState max_entangled(int d, const NumericPolicy& policy) {
    if (d < 1) throw std::invalid_argument("max_entangled: d must be positive");
    if (static_cast<long>(d) * d > policy.max_dim)
        throw std::invalid_argument("max_entangled: dimension exceeds the configured maximum");
    PureState psi;
    psi.d_a = d;
    psi.d_b = d;
    psi.amplitudes = Vector::Zero(static_cast<long>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) psi.amplitudes(i * d + i) = amp;
    return psi;
}

DensityOperator isotropic(int d, double chi, const NumericPolicy& policy) {
    if (d < 2) throw std::invalid_argument("isotropic: d must be at least 2");
    const double d2 = static_cast<double>(d) * d;
    const double chi_min = -1.0 / (d2 - 1.0);
    if (chi < chi_min - 1e-15 || chi > 1.0 + 1e-15) {
        char buf[120];
        std::snprintf(buf, sizeof(buf),
                      "isotropic: chi=%.6g outside the positive-semidefinite range [%.6g, 1]",
                      chi, chi_min);
        throw std::invalid_argument(buf);
    }
    const PureState phi = max_entangled(d, policy);
    const Matrix proj = phi.amplitudes * phi.amplitudes.adjoint();
    DensityOperator rho;
    rho.d_a = d;
    rho.d_b = d;
    rho.matrix = ((1.0 - chi) / d2) * Matrix::Identity(d * d, d * d) + chi * proj;
    return rho;
}

DensityOperator werner(int d, double alpha, const NumericPolicy& policy) {
    if (d < 2) throw std::invalid_argument("werner: d must be at least 2");
    if (alpha < -1.0 - 1e-15 || alpha > 1.0 + 1e-15)
        throw std::invalid_argument("werner: alpha must lie in [-1, 1]");
    if (static_cast<long>(d) * d > policy.max_dim)
        throw std::invalid_argument("werner: dimension exceeds the configured maximum");
    Matrix swap = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
    DensityOperator rho;
    rho.d_a = d;
    rho.d_b = d;
    rho.matrix = (Matrix::Identity(d * d, d * d) - alpha * swap) /
                 (static_cast<double>(d) * d - alpha * d);
    return rho;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, const NumericPolicy& policy) {
    validate_pure(psi, policy);
    // Reshape amplitudes into the d_a x d_b coefficient matrix and SVD it.
    Matrix coeff(psi.d_a, psi.d_b);
    for (int i = 0; i < psi.d_a; ++i)
        for (int j = 0; j < psi.d_b; ++j) coeff(i, j) = psi.amplitudes(i * psi.d_b + j);
    Eigen::JacobiSVD<Matrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);

    SchmidtDecomposition out;
    const int n = static_cast<int>(svd.singularValues().size());
    int rank = 0;
    for (int k = 0; k < n; ++k)
        if (svd.singularValues()(k) > policy.zero_tol) ++rank;
    out.coefficients.resize(rank);
    out.left_vectors = Matrix(psi.d_a, rank);
    out.right_vectors = Matrix(psi.d_b, rank);
    for (int k = 0; k < rank; ++k) {
        out.coefficients[k] = svd.singularValues()(k);
        out.left_vectors.col(k) = svd.matrixU().col(k);
        // A = U S V^dagger means |psi> = sum_k s_k |u_k> (conj |v_k>).
        out.right_vectors.col(k) = svd.matrixV().col(k).conjugate();
    }
    return out;
}

int schmidt_rank(const PureState& psi, const NumericPolicy& policy) {
    return schmidt_decompose(psi, policy).rank();
}

double fidelity_phi_plus(const DensityOperator& rho) {
    if (rho.d_a != rho.d_b)
        throw std::invalid_argument("fidelity_phi_plus: requires d_a == d_b");
    const PureState phi = max_entangled(rho.d_a);
    const Complex val = phi.amplitudes.adjoint() * rho.matrix * phi.amplitudes;
    return val.real();
}

namespace {

// Unitary polar factor via full SVD; full factors keep rank-deficient
// inputs well-defined.
Matrix polar_unitary(const Matrix& g) {
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

// Overlap objective <Phi|rho|Phi> with |Phi> = (M x I)|Phi+>, i.e.
// (1/d) vec(M)^dagger rho vec(M) with vec in row-major order.
double meb_overlap(const Matrix& rho, const Matrix& m) {
    const int d = static_cast<int>(m.rows());
    Vector v(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v(i * d + j) = m(i, j);
    const Complex val = v.adjoint() * rho * v;
    return val.real() / d;
}

// unvec(rho * vec(M)) as a d x d matrix; the overlap objective is the
// PSD-weighted inner product of M with this matrix.
Matrix overlap_gradient(const Matrix& rho, const Matrix& m) {
    const int d = static_cast<int>(m.rows());
    Vector v(d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v(i * d + j) = m(i, j);
    const Vector w = rho * v;
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = w(i * d + j);
    return g;
}

} // namespace

SingletFractionResult singlet_fraction(const DensityOperator& rho, double tol, int restarts,
                                       std::uint64_t seed) {
    if (rho.d_a != rho.d_b)
        throw std::invalid_argument("singlet_fraction: requires d_a == d_b");
    if (restarts < 1) throw std::invalid_argument("singlet_fraction: restarts must be >= 1");
    const int d = rho.d_a;
    constexpr int kMaxIters = 500;

    SingletFractionResult best;
    best.value = -1.0;
    for (int r = 0; r < restarts; ++r) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(r));
        Matrix m = (r == 0) ? Matrix::Identity(d, d) : rng.haar_unitary(d);
        double value = meb_overlap(rho.matrix, m);
        bool converged = false;
        int iters = 0;
        for (; iters < kMaxIters; ++iters) {
            m = polar_unitary(overlap_gradient(rho.matrix, m));
            const double next = meb_overlap(rho.matrix, m);
            if (next - value < tol) {
                value = std::max(value, next);
                converged = true;
                break;
            }
            value = next;
        }
        if (value > best.value) {
            best.value = value;
            best.converged = converged;
            best.best_restart = r;
            best.iterations = iters;
        }
    }
    return best;
}

DensityOperator twirl_to_isotropic(const DensityOperator& rho, const NumericPolicy& policy) {
    if (rho.d_a != rho.d_b)
        throw std::invalid_argument("twirl_to_isotropic: requires d_a == d_b");
    const double d2 = static_cast<double>(rho.d_a) * rho.d_a;
    const double fidelity = fidelity_phi_plus(rho);
    const double chi = (fidelity * d2 - 1.0) / (d2 - 1.0);
    return isotropic(rho.d_a, chi, policy);
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma,
                      const NumericPolicy& policy) {
    if (rho.d_a != sigma.d_a || rho.d_b != sigma.d_b)
        throw std::invalid_argument("trace_distance: dimension mismatch");
    return trace_distance(rho.matrix, sigma.matrix, policy);
}

} // namespace qsdc
