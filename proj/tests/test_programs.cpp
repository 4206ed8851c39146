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

#include "qsdc/programs.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/witness.hpp"
#include "test_helpers.hpp"

using namespace qsdc;

TEST_CASE("choi application closed forms", "[programs]") {
    Rng rng(89);
    const Matrix rho = rng.random_density(3);

    // identity channel
    Matrix l_id = Matrix::Zero(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) l_id(i * 3 + i, j * 3 + j) = 1.0;
    const ChoiOperator identity{l_id, 3};
    validate_choi(identity);
    REQUIRE((apply_choi(identity, rho) - rho).norm() < 1e-13);

    // full depolarization
    const ChoiOperator depol = choi_of_depolarizing(3);
    validate_choi(depol);
    REQUIRE((apply_choi(depol, rho) - Matrix::Identity(3, 3) / 3.0).norm() < 1e-13);

    // unitary conjugation on random inputs
    for (int trial = 0; trial < 20; ++trial) {
        const int d = rng.uniform_int(2, 4);
        const Matrix u = rng.haar_unitary(d);
        const Matrix state = rng.random_density(d);
        const ChoiOperator choi = choi_of_unitary(u);
        validate_choi(choi);
        REQUIRE((apply_choi(choi, state) - u * state * u.adjoint()).norm() < 1e-12);
    }
}

TEST_CASE("choi application to one side of a shared state", "[programs]") {
    Rng rng(97);
    const int d_a = 2, d_b = 3;
    const Matrix rho = rng.random_density(d_a * d_b);
    const Matrix u = rng.haar_unitary(d_a);
    const Matrix u_full = kron(u, Matrix::Identity(d_b, d_b));
    const Matrix direct = u_full * rho * u_full.adjoint();
    const Matrix via_choi = apply_choi_to_alice(choi_of_unitary(u), rho, d_a, d_b);
    REQUIRE((direct - via_choi).norm() < 1e-12);

    // trace preserved
    REQUIRE(std::abs(via_choi.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("measurement optimization on orthogonal states", "[programs]") {
    const std::vector<DensityOperator> prepared = {qsdc::test::basis_density(1, 2, 0, 0),
                                                   qsdc::test::basis_density(1, 2, 0, 1)};
    const PovmOptimum opt = optimize_povm(prepared);
    REQUIRE(opt.value == Catch::Approx(1.0).margin(1e-8));
    validate_povm(opt.povm);
}

TEST_CASE("measurement optimization decodes the four shifted entangled states",
          "[programs]") {
    PreparationFamily family;
    family.shared_state = pure_to_density(max_entangled(2));
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            family.encodings.push_back(Encoding::unitary(weyl(2, 2, x1, x2)));
    std::vector<DensityOperator> prepared;
    for (int x = 0; x < 4; ++x) prepared.push_back(prepare(family, x));

    const PovmOptimum opt = optimize_povm(prepared);
    REQUIRE(opt.value == Catch::Approx(1.0).margin(1e-7));
    REQUIRE(opt.sdp.gap <= 1e-7);
}

TEST_CASE("measurement optimization at the separability boundary", "[programs]") {
    // states prepared from the isotropic state at its critical visibility
    PreparationFamily family;
    family.shared_state = isotropic(2, 1.0 / 3.0);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            family.encodings.push_back(Encoding::unitary(weyl(2, 2, x1, x2)));
    std::vector<DensityOperator> prepared;
    for (int x = 0; x < 4; ++x) prepared.push_back(prepare(family, x));

    const PovmOptimum opt = optimize_povm(prepared);
    // sandwiched between the fidelity value and the classical cap
    REQUIRE(opt.value == Catch::Approx(0.5).margin(1e-7));
}

TEST_CASE("measurement optimization matches the dichotomic closed form",
          "[programs][property]") {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = rng.uniform_int(2, 4);
        const Vector a = rng.random_pure_state(d);
        const Vector b = rng.random_pure_state(d);
        const std::vector<DensityOperator> prepared = {
            DensityOperator{a * a.adjoint(), 1, d}, DensityOperator{b * b.adjoint(), 1, d}};
        const PovmOptimum opt = optimize_povm(prepared);
        const double helstrom =
            0.5 * (1.0 + trace_distance(prepared[0].matrix, prepared[1].matrix));
        REQUIRE(opt.value == Catch::Approx(helstrom).margin(1e-7));
        REQUIRE(opt.sdp.gap <= 1e-7);
        REQUIRE(opt.sdp.primal_residual <= 1e-8);
        REQUIRE(opt.sdp.dual_residual <= 1e-8);
    }
}

TEST_CASE("commuting diagonal states reduce to the best diagonal decoder", "[programs]") {
    Rng rng(103);
    const int dim = 4, n = 3;
    std::vector<DensityOperator> prepared;
    for (int x = 0; x < n; ++x) {
        RealVector diag(dim);
        for (int i = 0; i < dim; ++i) diag(i) = rng.uniform() + 1e-3;
        diag /= diag.sum();
        Matrix m = Matrix::Zero(dim, dim);
        m.diagonal() = diag.cast<Complex>();
        prepared.push_back(DensityOperator{m, 1, dim});
    }
    // oracle: assign each basis state to the preparation with the largest
    // weight there (exact for commuting states)
    double best = 0.0;
    for (int i = 0; i < dim; ++i) {
        double top = 0.0;
        for (int x = 0; x < n; ++x)
            top = std::max(top, prepared[x].matrix(i, i).real());
        best += top;
    }
    best /= n;
    const PovmOptimum opt = optimize_povm(prepared);
    REQUIRE(opt.value == Catch::Approx(best).margin(1e-7));
}

TEST_CASE("weak duality holds along the whole solve", "[programs][property]") {
    PreparationFamily family;
    family.shared_state = isotropic(2, 0.8);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2)
            family.encodings.push_back(Encoding::unitary(weyl(2, 2, x1, x2)));
    std::vector<DensityOperator> prepared;
    for (int x = 0; x < 4; ++x) prepared.push_back(prepare(family, x));

    const PovmOptimum opt = optimize_povm(prepared);
    REQUIRE(opt.sdp.trace.size() >= 2);
    for (const SdpIterate& it : opt.sdp.trace)
        REQUIRE(it.dual >= it.primal - 1e-12);

    const PreparationOptimum prep =
        optimize_preparations(family.shared_state, meb_povm(2));
    for (const SdpIterate& it : prep.sdp.trace)
        REQUIRE(it.dual >= it.primal - 1e-12);
}

TEST_CASE("repaired measurements stay close to the solver output", "[programs]") {
    Rng rng(107);
    PreparationFamily family;
    family.shared_state = qsdc::test::random_density_operator(rng, 2, 2);
    for (int x = 0; x < 4; ++x)
        family.encodings.push_back(Encoding::unitary(rng.haar_unitary(2)));
    std::vector<DensityOperator> prepared;
    for (int x = 0; x < 4; ++x) prepared.push_back(prepare(family, x));

    const PovmOptimum opt = optimize_povm(prepared);
    validate_povm(opt.povm);
    // objective shift from the repair is negligible
    REQUIRE(std::abs(opt.value - opt.sdp.primal_value / 4.0) <= 1e-9);

    // completeness is exact to roundoff
    Matrix sum = Matrix::Zero(4, 4);
    for (const Matrix& effect : opt.povm.effects) sum += effect;
    REQUIRE((sum - Matrix::Identity(4, 4)).norm() < 1e-13);
}

TEST_CASE("preparation optimization against a trivial measurement", "[programs]") {
    const DensityOperator shared = pure_to_density(max_entangled(2));
    Povm uniform;
    for (int x = 0; x < 4; ++x) uniform.effects.push_back(Matrix::Identity(4, 4) / 4.0);
    const PreparationOptimum opt = optimize_preparations(shared, uniform);
    REQUIRE(opt.value == Catch::Approx(0.25).margin(1e-8));
}

TEST_CASE("preparation optimization recovers the perfect dense-coding encodings",
          "[programs]") {
    const DensityOperator shared = pure_to_density(max_entangled(2));
    const PreparationOptimum opt = optimize_preparations(shared, meb_povm(2));
    REQUIRE(opt.value == Catch::Approx(1.0).margin(1e-7));
    for (const ChoiOperator& choi : opt.encodings) validate_choi(choi);
}

TEST_CASE("separable shared states stay below the classical cap", "[programs]") {
    Rng rng(109);
    // diagonal (hence separable) shared state
    RealVector diag(4);
    for (int i = 0; i < 4; ++i) diag(i) = rng.uniform() + 0.1;
    diag /= diag.sum();
    Matrix m = Matrix::Zero(4, 4);
    m.diagonal() = diag.cast<Complex>();
    const DensityOperator shared{m, 2, 2};

    Povm povm = meb_povm(2);
    const PreparationOptimum opt = optimize_preparations(shared, povm);
    REQUIRE(opt.value <= 0.5 + 1e-8);
}

TEST_CASE("preparation objective equals its re-simulated value", "[programs][property]") {
    Rng rng(113);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityOperator shared = qsdc::test::random_density_operator(rng, 2, 2);
        Povm povm;
        Matrix sum = Matrix::Zero(4, 4);
        std::vector<Matrix> raw;
        for (int x = 0; x < 4; ++x) {
            raw.push_back(rng.random_psd(4));
            sum += raw.back();
        }
        const HermitianEig eig = herm_eig(sum);
        Matrix t = Matrix::Zero(4, 4);
        for (long k = 0; k < 4; ++k)
            t += (1.0 / std::sqrt(eig.eigenvalues(k))) *
                 (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
        for (const Matrix& g : raw) povm.effects.push_back(t * g * t);

        const PreparationOptimum opt = optimize_preparations(shared, povm);
        // independent route: apply each returned channel, then the Born rule
        PreparationFamily family;
        family.shared_state = shared;
        for (const ChoiOperator& choi : opt.encodings)
            family.encodings.push_back(Encoding::choi(choi.matrix));
        const double resim = p_suc(behavior(family, {povm}));
        REQUIRE(opt.value == Catch::Approx(resim).margin(1e-8));
        REQUIRE(std::abs(opt.value - opt.sdp.primal_value / 4.0) <= 1e-7);
    }
}
