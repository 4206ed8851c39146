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

#include "qsdc/rng.hpp"
#include "qsdc/witness.hpp"
#include "test_helpers.hpp"

using namespace qsdc;

TEST_CASE("success-probability bound", "[witness]") {
    REQUIRE(psuc_bound(2, 1, 4) == 0.5);
    REQUIRE(psuc_bound(2, 2, 4) == 1.0);
    REQUIRE(psuc_bound(3, 2, 9) == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
    REQUIRE_THROWS_AS(psuc_bound(2, 3, 4), std::invalid_argument);
}

TEST_CASE("pure-state achievable value", "[witness]") {
    const double rt2 = 1.0 / std::numbers::sqrt2;
    REQUIRE(pure_state_psuc_lower({rt2, rt2}, 2) == Catch::Approx(1.0));
    REQUIRE(pure_state_psuc_lower({1.0}, 2) == Catch::Approx(0.5));
    REQUIRE(pure_state_psuc_lower({std::sqrt(0.9), std::sqrt(0.1)}, 2) ==
            Catch::Approx(0.8));
    REQUIRE_THROWS_AS(pure_state_psuc_lower({0.9, 0.1}, 2), std::invalid_argument);
}

TEST_CASE("pair-witness bound", "[witness]") {
    REQUIRE(vn_bound(2, 1, 4) == Catch::Approx(4.0));
    REQUIRE(vn_bound(2, 2, 4) == Catch::Approx(6.0));
    REQUIRE(vn_bound(2, 2, 3) == Catch::Approx(3.0));
}

TEST_CASE("classical optimum by enumeration", "[witness]") {
    ClassicalStrategy strategy;
    REQUIRE(classical_optimum_bruteforce(4, 2, &strategy) == 0.5);
    REQUIRE(strategy.encoder.size() == 4);
    REQUIRE(strategy.decoder.size() == 2);
    REQUIRE(classical_optimum_bruteforce(2, 2) == 1.0);
    REQUIRE(classical_optimum_bruteforce(9, 3) == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
    REQUIRE_THROWS_AS(classical_optimum_bruteforce(10, 2), std::invalid_argument);
}

TEST_CASE("enumeration agrees with the closed form everywhere", "[witness][property]") {
    for (int d = 1; d <= 3; ++d)
        for (int n = 1; n <= 9; ++n)
            REQUIRE(classical_optimum_bruteforce(n, d) == psuc_bound(d, 1, n));
}

TEST_CASE("shared randomness cannot beat deterministic strategies", "[witness][property]") {
    // mixtures of random deterministic strategies never exceed the optimum
    Rng rng(137);
    const int n = 5, d = 2;
    const double optimum = classical_optimum_bruteforce(n, d);
    for (int trial = 0; trial < 200; ++trial) {
        // random mixture of two deterministic strategies
        double mix = rng.uniform();
        double value = 0.0;
        for (int component = 0; component < 2; ++component) {
            std::vector<int> enc(n), dec(d);
            for (int x = 0; x < n; ++x) enc[x] = rng.uniform_int(0, d - 1);
            for (int a = 0; a < d; ++a) dec[a] = rng.uniform_int(0, n - 1);
            int hits = 0;
            for (int x = 0; x < n; ++x) hits += dec[enc[x]] == x ? 1 : 0;
            const double p = static_cast<double>(hits) / n;
            value += (component == 0 ? mix : 1.0 - mix) * p;
        }
        REQUIRE(value <= optimum + 1e-12);
    }
}

TEST_CASE("schmidt number from observed success", "[witness]") {
    REQUIRE(schmidt_number_lower_bound(1.0, 2, 4) == 2);
    REQUIRE(schmidt_number_lower_bound(0.5, 2, 4) == 1);
    REQUIRE(schmidt_number_lower_bound(0.7, 2, 4) == 2);
    REQUIRE(schmidt_number_lower_bound(0.5 + 1e-13, 2, 4) == 1);  // within tolerance
}

TEST_CASE("fidelity protocol realizes the fidelity as a success probability",
          "[witness]") {
    REQUIRE(build_zeta_protocol(pure_to_density(max_entangled(2))).value ==
            Catch::Approx(1.0).margin(1e-12));
    REQUIRE(build_zeta_protocol(isotropic(2, 1.0 / 3.0)).value ==
            Catch::Approx(0.5).margin(1e-12));
    REQUIRE(build_zeta_protocol(isotropic(3, 0.5)).value ==
            Catch::Approx(0.5 + 0.5 / 9.0).margin(1e-12));
}

TEST_CASE("fidelity protocol matches fidelity on random states", "[witness][property]") {
    Rng rng(139);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = rng.uniform_int(2, 3);
        const DensityOperator rho = qsdc::test::random_density_operator(rng, d, d);
        const ZetaProtocol zeta = build_zeta_protocol(rho);
        REQUIRE(zeta.value == Catch::Approx(fidelity_phi_plus(rho)).margin(1e-9));
        validate_povm(zeta.povm);
        validate_family(zeta.family);
    }
}

TEST_CASE("achievable pure-state value never exceeds the cap", "[witness][property]") {
    Rng rng(149);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = rng.uniform_int(2, 4);
        const int r = rng.uniform_int(1, d);
        RealVector coeffs(r);
        double norm_sq = 0.0;
        for (int k = 0; k < r; ++k) {
            coeffs(k) = std::abs(rng.gaussian()) + 0.01;
            norm_sq += coeffs(k) * coeffs(k);
        }
        coeffs /= std::sqrt(norm_sq);
        std::sort(coeffs.data(), coeffs.data() + r, std::greater<double>());
        std::vector<double> vec(coeffs.data(), coeffs.data() + r);
        REQUIRE(pure_state_psuc_lower(vec, d) <= psuc_bound(d, r, d * d) + 1e-12);
    }
}

TEST_CASE("self-test accepts the saturating constructions", "[witness]") {
    for (int d : {2, 3}) {
        const ProtocolPair pair = canonical_sdc_protocol(d, d, d);
        const CertificationVerdict verdict = selftest_check(pair.family, pair.povm);
        REQUIRE(verdict.maximally_entangled_selftest);
        REQUIRE(verdict.entangled);
        REQUIRE(verdict.schmidt_lower_bound == d);
    }
}

TEST_CASE("self-test rejects noisy and skewed states", "[witness]") {
    // noisy: success probability below one
    const ZetaProtocol noisy = build_zeta_protocol(isotropic(2, 0.9));
    const CertificationVerdict v1 = selftest_check(noisy.family, noisy.povm);
    REQUIRE(noisy.value == Catch::Approx(0.925).margin(1e-12));
    REQUIRE(!v1.maximally_entangled_selftest);

    // skewed spectrum: high but imperfect success, non-uniform marginal
    Vector amp = Vector::Zero(4);
    amp(0) = std::sqrt(0.9);
    amp(3) = std::sqrt(0.1);
    const ProtocolPair skew = weyl_meb_protocol(pure_to_density(PureState{amp, 2, 2}));
    const CertificationVerdict v2 = selftest_check(skew.family, skew.povm);
    REQUIRE(!v2.maximally_entangled_selftest);
}

TEST_CASE("self-test rejects spectra perturbed beyond tolerance", "[witness][property]") {
    for (double eps : {1e-2, 5e-3, 1e-3}) {
        Vector amp = Vector::Zero(4);
        amp(0) = std::sqrt(0.5 + eps);
        amp(3) = std::sqrt(0.5 - eps);
        const ProtocolPair pair = weyl_meb_protocol(pure_to_density(PureState{amp, 2, 2}));
        const CertificationVerdict verdict = selftest_check(pair.family, pair.povm);
        REQUIRE(!verdict.maximally_entangled_selftest);
    }
}

TEST_CASE("reference constants", "[witness]") {
    const ComparisonConstants c2 = comparison_constants(2);
    REQUIRE(c2.sdc_isotropic == 1.0 / 3.0);
    REQUIRE(c2.steering_isotropic == 0.5);
    REQUIRE(c2.steering_werner == 2.0 / 3.0);
    REQUIRE(c2.werner_sdc_observed == 0.5);

    const ComparisonConstants c3 = comparison_constants(3);
    REQUIRE(c3.steering_isotropic == Catch::Approx(5.0 / 12.0).epsilon(1e-15));

    // the dense-coding threshold beats steering at every dimension
    for (int d = 2; d <= 7; ++d) {
        const ComparisonConstants c = comparison_constants(d);
        REQUIRE(c.sdc_isotropic < c.steering_isotropic);
    }
}
