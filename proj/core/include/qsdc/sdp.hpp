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

#ifndef QSDC_SDP_HPP
#define QSDC_SDP_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "qsdc/linalg.hpp"

namespace qsdc {

/// One linear equality over the block variables:
/// sum_i Re tr(A_i^dagger X_i) = rhs, with Hermitian coefficients A_i given
/// per touched block.
struct SdpConstraint {
    std::vector<std::pair<int, Matrix>> terms;
    double rhs = 0.0;
};

/// Block-structured Hermitian SDP in the convention
///   maximize   sum_i Re tr(C_i^dagger X_i)
///   subject to sum_i Re tr(A_{j,i}^dagger X_i) = b_j,   X_i >= 0.
struct SdpProblem {
    std::vector<int> block_dims;
    std::vector<Matrix> objective;
    std::vector<SdpConstraint> constraints;

    /// Optional strictly feasible primal start (one PSD matrix per block
    /// with all equalities satisfied).  When both inits verify, the solver
    /// runs feasible-start and every iterate satisfies weak duality.
    std::vector<Matrix> primal_init;
    /// Optional dual start y with sum_j y_j A_j - C positive definite.
    std::vector<double> dual_init;

    /// Trusted builders set this to skip the linear-independence preprocessing.
    bool constraints_verified = false;
};

enum class SdpStatus { Optimal, MaxIterations, Infeasible };

struct SdpIterate {
    int iteration = 0;
    double mu = 0.0;
    double primal = 0.0;
    double dual = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double step_primal = 0.0;
    double step_dual = 0.0;
};

struct SdpSolution {
    std::vector<Matrix> primal_blocks;
    /// Multipliers per constraint after preprocessing (dependent rows with
    /// consistent right-hand sides are dropped before solving).
    std::vector<double> dual_y;
    double primal_value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;              ///< |primal - dual| / max(1, |primal|)
    double primal_residual = 0.0;  ///< worst scaled equality violation
    double dual_residual = 0.0;
    double min_eigenvalue = 0.0;   ///< over all primal blocks
    SdpStatus status = SdpStatus::MaxIterations;
    int iterations = 0;
    std::vector<SdpIterate> trace;
};

struct SdpOptions {
    double tol_gap = 1e-9;
    double tol_feas = 1e-9;
    int max_iterations = 200;
    double step_fraction = 0.98;
    std::ostream* iteration_log = nullptr;  ///< optional CSV diagnostics
};

/// Primal-dual path-following solver with Nesterov-Todd scaling and a
/// Mehrotra predictor-corrector step.  Hermitian blocks are handled on the
/// real symmetric embedding [[Re, -Im], [Im, Re]]; reported values are
/// halved to undo the doubling and solutions are mapped back to Hermitian
/// matrices.
SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options = {});

} // namespace qsdc

#endif // QSDC_SDP_HPP
