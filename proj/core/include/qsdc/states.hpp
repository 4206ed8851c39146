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

#ifndef QSDC_STATES_HPP
#define QSDC_STATES_HPP

#include <cstdint>
#include <vector>

#include "qsdc/linalg.hpp"

namespace qsdc {

/// Density operator on a bipartite space with recorded local dimensions.
/// Invariants: Hermitian, PSD (eigenvalues >= -psd_tol), unit trace,
/// matrix dimension d_a * d_b.  Enforced by validate_density.
struct DensityOperator {
    Matrix matrix;
    int d_a = 1;
    int d_b = 1;

    int dim() const { return d_a * d_b; }
};

/// Pure bipartite state as an amplitude vector over the product basis
/// |i>|j> at index i*d_b + j.
struct PureState {
    Vector amplitudes;
    int d_a = 1;
    int d_b = 1;
};

/// Schmidt form of a pure state: strictly positive coefficients in
/// descending order and the matching orthonormal local vectors.
struct SchmidtDecomposition {
    std::vector<double> coefficients;
    Matrix left_vectors;   // columns, in H_A
    Matrix right_vectors;  // columns, in H_B

    int rank() const { return static_cast<int>(coefficients.size()); }
};

/// Iterative lower bound on the maximal overlap with a local-unitary-rotated
/// maximally entangled state.
struct SingletFractionResult {
    double value = 0.0;
    bool converged = false;
    int best_restart = 0;
    int iterations = 0;
};

void validate_density(const DensityOperator& rho, const NumericPolicy& policy = {});
void validate_pure(const PureState& psi, const NumericPolicy& policy = {});

DensityOperator pure_to_density(const PureState& psi);
DensityOperator make_density(const Matrix& m, int d_a, int d_b,
                             const NumericPolicy& policy = {});

/// (1/sqrt(d)) sum_i |ii>.
PureState max_entangled(int d, const NumericPolicy& policy = {});

/// Mixture of white noise and the maximally entangled state:
/// (1-chi)/d^2 * I + chi * |Phi+><Phi+|.  Valid for chi in [-1/(d^2-1), 1].
DensityOperator isotropic(int d, double chi, const NumericPolicy& policy = {});

/// (I - alpha*S) / (d^2 - alpha*d) with S the swap operator, alpha in [-1, 1].
DensityOperator werner(int d, double alpha, const NumericPolicy& policy = {});

SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                       const NumericPolicy& policy = {});

/// Number of Schmidt coefficients above policy.zero_tol.
int schmidt_rank(const PureState& psi, const NumericPolicy& policy = {});

/// <Phi+|rho|Phi+> for the unrotated maximally entangled state; requires
/// d_a == d_b.
double fidelity_phi_plus(const DensityOperator& rho);

/// Alternating maximization of <Phi|rho|Phi> over |Phi> = (U1 x U2)|Phi+>.
/// Each step replaces the rotation with the polar factor of the d x d
/// overlap matrix, which is the exact optimum of the linearized problem, so
/// the objective is non-decreasing.  Restart 0 starts from the identity,
/// the others from Haar-random unitaries.  The result is a certified lower
/// bound on the maximal singlet fraction.
SingletFractionResult singlet_fraction(const DensityOperator& rho, double tol = 1e-10,
                                       int restarts = 20, std::uint64_t seed = 0);

/// Fidelity-preserving projection onto the isotropic family:
/// chi = (F d^2 - 1)/(d^2 - 1) with F = fidelity_phi_plus(rho).
DensityOperator twirl_to_isotropic(const DensityOperator& rho,
                                   const NumericPolicy& policy = {});

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma,
                      const NumericPolicy& policy = {});

} // namespace qsdc

#endif // QSDC_STATES_HPP
