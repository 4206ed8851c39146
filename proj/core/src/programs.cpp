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

#include "qsdc/programs.hpp"

#include <cmath>
#include <numbers>

namespace qsdc {

namespace {

// Frobenius-orthonormal Hermitian basis of the d x d matrices: diagonal
// units, then (|i><j| + |j><i|)/sqrt(2) and i(|i><j| - |j><i|)/sqrt(2).
std::vector<Matrix> hermitian_basis(int d) {
    std::vector<Matrix> basis;
    basis.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) {
        Matrix e = Matrix::Zero(d, d);
        e(i, i) = 1.0;
        basis.push_back(std::move(e));
    }
    const double inv_rt2 = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = inv_rt2;
            e(j, i) = inv_rt2;
            basis.push_back(std::move(e));
            Matrix f = Matrix::Zero(d, d);
            f(i, j) = Complex(0.0, inv_rt2);
            f(j, i) = Complex(0.0, -inv_rt2);
            basis.push_back(std::move(f));
        }
    return basis;
}

Matrix clip_psd(const Matrix& m, const NumericPolicy& policy) {
    const HermitianEig eig = herm_eig(m, policy);
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (long k = 0; k < eig.eigenvalues.size(); ++k) {
        const double v = eig.eigenvalues(k);
        if (v > 0.0) out += v * (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
    }
    return out;
}

Matrix inverse_sqrt(const Matrix& m, const NumericPolicy& policy) {
    const HermitianEig eig = herm_eig(m, policy);
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (long k = 0; k < eig.eigenvalues.size(); ++k) {
        const double v = std::max(eig.eigenvalues(k), 1e-14);
        out += (1.0 / std::sqrt(v)) *
               (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
    }
    return out;
}

} // namespace

Povm repair_povm(const Povm& povm, const NumericPolicy& policy) {
    const long dim = povm.effects.front().rows();
    Povm clipped;
    clipped.effects.reserve(povm.effects.size());
    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& effect : povm.effects) {
        clipped.effects.push_back(clip_psd(hermitian_part(effect), policy));
        sum += clipped.effects.back();
    }
    const Matrix t = inverse_sqrt(sum, policy);
    for (Matrix& effect : clipped.effects) effect = t * effect * t;
    return clipped;
}

ChoiOperator repair_choi(const ChoiOperator& choi, const NumericPolicy& policy) {
    ChoiOperator out;
    out.d_a = choi.d_a;
    out.matrix = clip_psd(hermitian_part(choi.matrix), policy);
    const Matrix marginal = partial_trace(out.matrix, choi.d_a, choi.d_a, Subsystem::A);
    const Matrix fix = kron(inverse_sqrt(marginal, policy),
                            Matrix::Identity(choi.d_a, choi.d_a), policy);
    out.matrix = fix * out.matrix * fix;
    return out;
}

PovmOptimum optimize_povm(const std::vector<DensityOperator>& prepared,
                          const SdpOptions& options, const NumericPolicy& policy) {
    if (prepared.empty()) throw std::invalid_argument("optimize_povm: no prepared states");
    const int n = static_cast<int>(prepared.size());
    const int dim = prepared.front().dim();
    for (const DensityOperator& rho : prepared)
        if (rho.dim() != dim || rho.matrix.rows() != dim)
            throw std::invalid_argument("optimize_povm: prepared states of unequal dimension");

    SdpProblem problem;
    problem.block_dims.assign(n, dim);
    problem.objective.reserve(n);
    for (const DensityOperator& rho : prepared) problem.objective.push_back(rho.matrix);

    const std::vector<Matrix> basis = hermitian_basis(dim);
    problem.constraints.reserve(basis.size());
    problem.dual_init.reserve(basis.size());
    for (const Matrix& e : basis) {
        SdpConstraint c;
        c.terms.reserve(n);
        for (int x = 0; x < n; ++x) c.terms.emplace_back(x, e);
        c.rhs = e.trace().real();
        problem.constraints.push_back(std::move(c));
        problem.dual_init.push_back(2.0 * e.trace().real());
    }
    problem.primal_init.assign(n, Matrix::Identity(dim, dim) / static_cast<double>(n));
    problem.constraints_verified = true;

    PovmOptimum out;
    out.sdp = solve_sdp(problem, options);
    if (out.sdp.status != SdpStatus::Optimal)
        throw SolverFailure("optimize_povm: interior-point solve did not reach optimality");

    Povm raw;
    raw.effects = out.sdp.primal_blocks;
    out.povm = repair_povm(raw, policy);
    double total = 0.0;
    for (int x = 0; x < n; ++x)
        total += (prepared[x].matrix * out.povm.effects[x]).trace().real();
    out.value = total / n;
    return out;
}

PreparationOptimum optimize_preparations(const DensityOperator& shared, const Povm& povm,
                                         const SdpOptions& options,
                                         const NumericPolicy& policy) {
    const int d_a = shared.d_a;
    const int d_b = shared.d_b;
    const int n = povm.n_outcomes();
    if (n < 1) throw std::invalid_argument("optimize_preparations: empty POVM");
    const long dim_full = static_cast<long>(d_a) * d_b;
    for (const Matrix& effect : povm.effects)
        if (effect.rows() != dim_full || effect.cols() != dim_full)
            throw std::invalid_argument("optimize_preparations: effect dimension mismatch");

    const int dim_choi = d_a * d_a;
    const Matrix id_a = Matrix::Identity(d_a, d_a);

    // Objective coefficient per input x, on the channel's Choi space:
    // C_x = herm( tr_B[ (rho^{T_A} (x) I_{A'}) (I_A (x) M_x) ] ) with factor
    // order (A, A', B), so that tr(C_x L_x) is the Born-rule success term.
    const Matrix rho_ta = partial_transpose(shared.matrix, d_a, d_b, Subsystem::A);
    const Matrix big_rho = permute_subsystems(kron(rho_ta, id_a, policy),
                                              {d_a, d_b, d_a}, {0, 2, 1});

    SdpProblem problem;
    problem.block_dims.assign(n, dim_choi);
    problem.objective.reserve(n);
    std::vector<double> dual_shift(n);
    for (int x = 0; x < n; ++x) {
        const Matrix big_m = kron(id_a, povm.effects[x], policy);
        const Matrix c_x =
            hermitian_part(partial_trace(big_rho * big_m, d_a * d_a, d_b, Subsystem::A));
        const HermitianEig eig = herm_eig(c_x, policy);
        dual_shift[x] = 1.0 + std::max(0.0, eig.eigenvalues.maxCoeff());
        problem.objective.push_back(c_x);
    }

    const std::vector<Matrix> basis = hermitian_basis(d_a);
    problem.constraints.reserve(static_cast<std::size_t>(n) * basis.size());
    problem.dual_init.reserve(static_cast<std::size_t>(n) * basis.size());
    for (int x = 0; x < n; ++x)
        for (const Matrix& e : basis) {
            SdpConstraint c;
            c.terms.emplace_back(x, kron(e, id_a, policy));
            c.rhs = e.trace().real();
            problem.constraints.push_back(std::move(c));
            problem.dual_init.push_back(dual_shift[x] * e.trace().real());
        }
    problem.primal_init.assign(n, Matrix::Identity(dim_choi, dim_choi) /
                                      static_cast<double>(d_a));
    problem.constraints_verified = true;

    PreparationOptimum out;
    out.sdp = solve_sdp(problem, options);
    if (out.sdp.status != SdpStatus::Optimal)
        throw SolverFailure(
            "optimize_preparations: interior-point solve did not reach optimality");

    out.encodings.reserve(n);
    for (int x = 0; x < n; ++x)
        out.encodings.push_back(repair_choi(ChoiOperator{out.sdp.primal_blocks[x], d_a},
                                            policy));

    double total = 0.0;
    for (int x = 0; x < n; ++x) {
        const Matrix rho_x =
            apply_choi_to_alice(out.encodings[x], shared.matrix, d_a, d_b);
        total += (rho_x * povm.effects[x]).trace().real();
    }
    out.value = total / n;
    return out;
}

} // namespace qsdc
