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

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qsdc/rng.hpp"
#include "qsdc/sdp.hpp"
#include "test_helpers.hpp"

using namespace qsdc;

namespace {

SdpConstraint trace_constraint(int block, int dim, double rhs) {
    SdpConstraint c;
    c.terms.emplace_back(block, Matrix::Identity(dim, dim));
    c.rhs = rhs;
    return c;
}

} // namespace

TEST_CASE("maximize the trace on the unit-trace cone", "[sdp]") {
    SdpProblem problem;
    problem.block_dims = {2};
    problem.objective = {Matrix::Identity(2, 2)};
    problem.constraints.push_back(trace_constraint(0, 2, 1.0));

    const SdpSolution sol = solve_sdp(problem);
    REQUIRE(sol.status == SdpStatus::Optimal);
    REQUIRE(sol.primal_value == Catch::Approx(1.0).margin(1e-8));
    REQUIRE(sol.gap <= 1e-7);
    REQUIRE(sol.primal_residual <= 1e-8);
    REQUIRE(sol.min_eigenvalue >= -1e-8);
}

TEST_CASE("two-state discrimination reaches the trace-distance value", "[sdp]") {
    // equiprobable discrimination of |0><0| and |+><+| in SDP form
    const Vector e0 = qsdc::test::basis_vector(2, 0);
    Vector plus(2);
    plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    const Matrix rho0 = e0 * e0.adjoint();
    const Matrix rho1 = plus * plus.adjoint();

    SdpProblem problem;
    problem.block_dims = {2, 2};
    problem.objective = {0.5 * rho0, 0.5 * rho1};
    // completeness: M_0 + M_1 = I, expressed over a Hermitian basis
    const std::vector<Matrix> basis = [] {
        std::vector<Matrix> out;
        Matrix e00 = Matrix::Zero(2, 2), e11 = Matrix::Zero(2, 2);
        e00(0, 0) = 1.0;
        e11(1, 1) = 1.0;
        Matrix sym = Matrix::Zero(2, 2), asym = Matrix::Zero(2, 2);
        sym(0, 1) = sym(1, 0) = 1.0;
        asym(0, 1) = Complex(0, 1);
        asym(1, 0) = Complex(0, -1);
        out = {e00, e11, sym, asym};
        return out;
    }();
    for (const Matrix& e : basis) {
        SdpConstraint c;
        c.terms.emplace_back(0, e);
        c.terms.emplace_back(1, e);
        c.rhs = e.trace().real();
        problem.constraints.push_back(std::move(c));
    }

    const SdpSolution sol = solve_sdp(problem);
    REQUIRE(sol.status == SdpStatus::Optimal);
    // closed form (1 + D)/2 with D = sqrt(1 - |<0|+>|^2) = sqrt(1/2)
    const double expected = 0.5 * (1.0 + std::sqrt(0.5));
    REQUIRE(expected == Catch::Approx(0.8535533905932738).epsilon(1e-15));
    REQUIRE(sol.primal_value == Catch::Approx(expected).margin(1e-7));
    REQUIRE(sol.dual_value == Catch::Approx(expected).margin(1e-7));
}

TEST_CASE("infeasible-start runs still satisfy the solution contract", "[sdp]") {
    Rng rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = rng.uniform_int(2, 4);
        SdpProblem problem;
        problem.block_dims = {dim};
        problem.objective = {rng.random_psd(dim)};
        problem.constraints.push_back(trace_constraint(0, dim, 1.0));
        const SdpSolution sol = solve_sdp(problem);
        REQUIRE(sol.status == SdpStatus::Optimal);
        // optimum of max tr(CX) under tr X = 1 is the top eigenvalue
        const HermitianEig eig = herm_eig(problem.objective[0]);
        REQUIRE(sol.primal_value == Catch::Approx(eig.eigenvalues(0)).margin(1e-7));
        REQUIRE(sol.gap <= 1e-7);
        REQUIRE(sol.primal_residual <= 1e-8);
        REQUIRE(sol.min_eigenvalue >= -1e-8);
    }
}

TEST_CASE("iteration cap is honoured", "[sdp]") {
    SdpProblem problem;
    problem.block_dims = {3};
    problem.objective = {Matrix::Identity(3, 3)};
    problem.constraints.push_back(trace_constraint(0, 3, 1.0));
    SdpOptions options;
    options.max_iterations = 1;
    const SdpSolution sol = solve_sdp(problem, options);
    REQUIRE(sol.status == SdpStatus::MaxIterations);
    REQUIRE(sol.iterations <= 1);
}

TEST_CASE("duplicated constraints are dropped, inconsistent ones rejected", "[sdp]") {
    SdpProblem problem;
    problem.block_dims = {2};
    problem.objective = {Matrix::Identity(2, 2)};
    problem.constraints.push_back(trace_constraint(0, 2, 1.0));
    problem.constraints.push_back(trace_constraint(0, 2, 1.0));  // redundant copy
    const SdpSolution sol = solve_sdp(problem);
    REQUIRE(sol.status == SdpStatus::Optimal);
    REQUIRE(sol.primal_value == Catch::Approx(1.0).margin(1e-7));

    SdpProblem bad = problem;
    bad.constraints[1].rhs = 2.0;  // same row, different right-hand side
    REQUIRE_THROWS_AS(solve_sdp(bad), SolverFailure);
}

TEST_CASE("iteration diagnostics can be streamed as CSV", "[sdp]") {
    SdpProblem problem;
    problem.block_dims = {2};
    problem.objective = {Matrix::Identity(2, 2)};
    problem.constraints.push_back(trace_constraint(0, 2, 1.0));
    std::ostringstream log;
    SdpOptions options;
    options.iteration_log = &log;
    solve_sdp(problem, options);
    const std::string text = log.str();
    REQUIRE(text.rfind("iter,mu,primal,dual", 0) == 0);
    REQUIRE(std::count(text.begin(), text.end(), '\n') >= 3);
}

TEST_CASE("input validation", "[sdp]") {
    SdpProblem empty;
    REQUIRE_THROWS_AS(solve_sdp(empty), std::invalid_argument);

    SdpProblem nonherm;
    nonherm.block_dims = {2};
    Matrix c(2, 2);
    c << 0, 1, 0, 0;
    nonherm.objective = {c};
    nonherm.constraints.push_back(trace_constraint(0, 2, 1.0));
    REQUIRE_THROWS_AS(solve_sdp(nonherm), std::invalid_argument);
}
