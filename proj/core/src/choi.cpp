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

#include "qsdc/choi.hpp"

namespace qsdc {

void validate_choi(const ChoiOperator& choi, const NumericPolicy& policy) {
    const long dim = static_cast<long>(choi.d_a) * choi.d_a;
    if (choi.d_a < 1 || choi.matrix.rows() != dim || choi.matrix.cols() != dim)
        throw InvariantViolation("choi operator: matrix size does not match d_a^2");
    if (!is_hermitian(choi.matrix, policy.symmetry_tol))
        throw InvariantViolation("choi operator: matrix is not Hermitian");
    const HermitianEig eig = herm_eig(choi.matrix, policy);
    if (eig.eigenvalues.minCoeff() < -policy.psd_tol)
        throw InvariantViolation("choi operator: not completely positive "
                                 "(negative eigenvalue beyond tolerance)");
    const Matrix marginal = partial_trace(choi.matrix, choi.d_a, choi.d_a, Subsystem::A);
    if ((marginal - Matrix::Identity(choi.d_a, choi.d_a)).norm() > policy.completeness_tol)
        throw InvariantViolation("choi operator: not trace preserving "
                                 "(input marginal differs from identity)");
}

ChoiOperator choi_of_unitary(const Matrix& u) {
    const int d = static_cast<int>(u.rows());
    if (u.cols() != d) throw std::invalid_argument("choi_of_unitary: matrix is not square");
    ChoiOperator choi;
    choi.d_a = d;
    choi.matrix = Matrix::Zero(d * d, d * d);
    // L = sum_{ij} |i><j| (x) U|i><j|U^dagger, assembled from vec(U)-style
    // outer products: entry ((i,a),(j,b)) = U_{ai} conj(U_{bj}).
    Vector v(d * d);
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) v(i * d + a) = u(a, i);
    choi.matrix = v * v.adjoint();
    return choi;
}

ChoiOperator choi_of_depolarizing(int d) {
    ChoiOperator choi;
    choi.d_a = d;
    choi.matrix = Matrix::Identity(d * d, d * d) / static_cast<double>(d);
    return choi;
}

Matrix apply_choi(const ChoiOperator& choi, const Matrix& rho_a) {
    const int d = choi.d_a;
    if (rho_a.rows() != d || rho_a.cols() != d)
        throw std::invalid_argument("apply_choi: state dimension does not match channel");
    Matrix out = Matrix::Zero(d, d);
    for (int ap = 0; ap < d; ++ap)
        for (int app = 0; app < d; ++app) {
            Complex acc = 0.0;
            for (int k = 0; k < d; ++k)
                for (int i = 0; i < d; ++i)
                    acc += rho_a(k, i) * choi.matrix(k * d + ap, i * d + app);
            out(ap, app) = acc;
        }
    return out;
}

Matrix apply_choi_to_alice(const ChoiOperator& choi, const Matrix& rho_ab, int d_a, int d_b) {
    if (choi.d_a != d_a)
        throw std::invalid_argument("apply_choi_to_alice: channel dimension mismatch");
    if (rho_ab.rows() != static_cast<long>(d_a) * d_b || rho_ab.cols() != rho_ab.rows())
        throw std::invalid_argument("apply_choi_to_alice: state dimension mismatch");
    Matrix out = Matrix::Zero(rho_ab.rows(), rho_ab.cols());
    // out[(a',b),(a'',b')] = sum_{k,i} rho[(k,b),(i,b')] L[(k,a'),(i,a'')]
    for (int ap = 0; ap < d_a; ++ap)
        for (int b = 0; b < d_b; ++b)
            for (int app = 0; app < d_a; ++app)
                for (int bp = 0; bp < d_b; ++bp) {
                    Complex acc = 0.0;
                    for (int k = 0; k < d_a; ++k)
                        for (int i = 0; i < d_a; ++i)
                            acc += rho_ab(k * d_b + b, i * d_b + bp) *
                                   choi.matrix(k * d_a + ap, i * d_a + app);
                    out(ap * d_b + b, app * d_b + bp) = acc;
                }
    return out;
}

} // namespace qsdc
