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

#ifndef QSDC_TEST_HELPERS_HPP
#define QSDC_TEST_HELPERS_HPP

#include <vector>

#include "qsdc/rng.hpp"
#include "qsdc/states.hpp"

namespace qsdc::test {

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline Vector basis_vector(int dim, int k) {
    Vector v = Vector::Zero(dim);
    v(k) = 1.0;
    return v;
}

inline DensityOperator basis_density(int d_a, int d_b, int a, int b) {
    const Vector v = basis_vector(d_a * d_b, a * d_b + b);
    return DensityOperator{v * v.adjoint(), d_a, d_b};
}

/// Pure bipartite state with exactly the requested Schmidt rank, in random
/// local bases.  Coefficients resampled until well separated from zero.
inline PureState random_pure_with_rank(Rng& rng, int d_a, int d_b, int rank) {
    RealVector coeffs(rank);
    while (true) {
        double norm_sq = 0.0;
        for (int k = 0; k < rank; ++k) {
            coeffs(k) = std::abs(rng.gaussian()) + 0.05;
            norm_sq += coeffs(k) * coeffs(k);
        }
        coeffs /= std::sqrt(norm_sq);
        if (coeffs.minCoeff() > 0.05) break;
    }
    const Matrix ua = rng.haar_unitary(d_a);
    const Matrix ub = rng.haar_unitary(d_b);
    Vector amp = Vector::Zero(static_cast<long>(d_a) * d_b);
    for (int k = 0; k < rank; ++k)
        for (int i = 0; i < d_a; ++i)
            for (int j = 0; j < d_b; ++j) amp(i * d_b + j) += coeffs(k) * ua(i, k) * ub(j, k);
    PureState psi{amp / amp.norm(), d_a, d_b};
    return psi;
}

/// Random bipartite density operator (full rank almost surely).
inline DensityOperator random_density_operator(Rng& rng, int d_a, int d_b) {
    return DensityOperator{rng.random_density(d_a * d_b), d_a, d_b};
}

} // namespace qsdc::test

#endif // QSDC_TEST_HELPERS_HPP
