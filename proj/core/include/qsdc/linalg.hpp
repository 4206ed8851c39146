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

#ifndef QSDC_LINALG_HPP
#define QSDC_LINALG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qsdc/policy.hpp"

namespace qsdc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Which tensor factor of a bipartite operator an operation refers to.
enum class Subsystem { A, B };

/// Result of a Hermitian eigendecomposition, eigenvalues sorted descending,
/// eigenvectors as the corresponding unitary's columns.
struct HermitianEig {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

Matrix dagger(const Matrix& m);
Matrix hermitian_part(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol);

/// Kronecker product.  Rejects results whose dimension exceeds policy.max_dim.
Matrix kron(const Matrix& a, const Matrix& b, const NumericPolicy& policy = {});

/// Trace out one factor of an operator on a (d_a x d_b)-dimensional product
/// space; `keep` names the factor that survives.  The total trace is preserved.
Matrix partial_trace(const Matrix& x, int d_a, int d_b, Subsystem keep);

/// Transpose a single factor of a bipartite operator.  Involutive.
Matrix partial_transpose(const Matrix& x, int d_a, int d_b, Subsystem which);

/// Reorder the tensor factors of a multipartite operator.  `order[k]` is the
/// index (into `dims`) of the old factor placed at new position k.
Matrix permute_subsystems(const Matrix& x, const std::vector<int>& dims,
                          const std::vector<int>& order);

/// Eigendecomposition of a (numerically) Hermitian matrix.  The input is
/// symmetrized before factorization; deviations beyond policy.symmetry_tol
/// relative to the Frobenius norm are rejected.
HermitianEig herm_eig(const Matrix& h, const NumericPolicy& policy = {});

/// Sum of singular values; for Hermitian input the sum of absolute eigenvalues.
double trace_norm(const Matrix& m, const NumericPolicy& policy = {});

/// Trace distance (1/2)*||rho - sigma||_1 between two equal-sized Hermitian
/// operators.
double trace_distance(const Matrix& rho, const Matrix& sigma,
                      const NumericPolicy& policy = {});

} // namespace qsdc

#endif // QSDC_LINALG_HPP
