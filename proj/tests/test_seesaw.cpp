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
#include "qsdc/seesaw.hpp"
#include "qsdc/witness.hpp"
#include "test_helpers.hpp"

using namespace qsdc;

namespace {

SeesawConfig quick_config(int restarts = 3, std::uint64_t seed = 1) {
    SeesawConfig config;
    config.restarts = restarts;
    config.seed = seed;
    config.max_rounds = 40;
    return config;
}

double resimulate(const DensityOperator& shared, const SeesawResult& result) {
    PreparationFamily family;
    family.shared_state = shared;
    for (const ChoiOperator& choi : result.best_encodings)
        family.encodings.push_back(Encoding::choi(choi.matrix));
    return p_suc(behavior(family, {result.best_povm}));
}

} // namespace

TEST_CASE("maximally entangled states reach unit success", "[seesaw]") {
    const DensityOperator shared = pure_to_density(max_entangled(2));
    const SeesawResult result = seesaw_psuc(shared, quick_config(2));
    REQUIRE(result.best_value == Catch::Approx(1.0).margin(1e-6));
    REQUIRE(resimulate(shared, result) == Catch::Approx(result.best_value).margin(1e-8));
}

TEST_CASE("weakly noisy isotropic states stay classical", "[seesaw]") {
    const DensityOperator shared = isotropic(2, 0.2);  // below the critical visibility
    const SeesawResult result = seesaw_psuc(shared, quick_config(3));
    REQUIRE(result.best_value == Catch::Approx(0.5).margin(1e-5));
}

TEST_CASE("the d=2 swap-symmetric state at alpha=1 is maximally entangled", "[seesaw]") {
    const DensityOperator shared = werner(2, 1.0);
    const SeesawResult result = seesaw_psuc(shared, quick_config(3));
    REQUIRE(result.best_value == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("recorded traces never decrease", "[seesaw][property]") {
    Rng rng(127);
    const DensityOperator shared = qsdc::test::random_density_operator(rng, 2, 2);
    const SeesawResult result = seesaw_psuc(shared, quick_config(3, 9));
    REQUIRE(!result.traces.empty());
    for (const RestartTrace& trace : result.traces) {
        REQUIRE(!trace.failed);
        REQUIRE(trace.values.size() >= 2);
        for (std::size_t k = 1; k < trace.values.size(); ++k)
            REQUIRE(trace.values[k] >= trace.values[k - 1]);
    }
    REQUIRE(result.best_value >= 0.0);
    REQUIRE(result.best_value <= 1.0 + 1e-12);
}

TEST_CASE("identical configurations reproduce identical traces", "[seesaw][property]") {
    const DensityOperator shared = isotropic(2, 0.6);
    SeesawConfig config = quick_config(2, 42);
    const SeesawResult a = seesaw_psuc(shared, config);
    const SeesawResult b = seesaw_psuc(shared, config);
    REQUIRE(a.best_value == b.best_value);
    REQUIRE(a.best_restart == b.best_restart);
    REQUIRE(a.traces.size() == b.traces.size());
    for (std::size_t r = 0; r < a.traces.size(); ++r) {
        REQUIRE(a.traces[r].values.size() == b.traces[r].values.size());
        for (std::size_t k = 0; k < a.traces[r].values.size(); ++k)
            REQUIRE(a.traces[r].values[k] == b.traces[r].values[k]);
    }
}

TEST_CASE("output respects the dimension-entanglement cap", "[seesaw][property]") {
    Rng rng(131);
    for (int trial = 0; trial < 3; ++trial) {
        const DensityOperator shared = qsdc::test::random_density_operator(rng, 2, 2);
        const SeesawResult result = seesaw_psuc(shared, quick_config(2, 100 + trial));
        const int s_cap = 2;
        REQUIRE(result.best_value <= psuc_bound(2, s_cap, 4) + 1e-6);
    }
}

TEST_CASE("warm starts are honoured", "[seesaw]") {
    const DensityOperator shared = isotropic(2, 0.9);
    SeesawConfig config = quick_config(1, 7);
    config.use_canonical_start = false;
    const Povm warm = meb_povm(2);
    const SeesawResult result = seesaw_psuc(shared, config, &warm);
    const double zeta = 0.9 + 0.1 / 4.0;
    REQUIRE(result.best_value >= zeta - 1e-6);
}

TEST_CASE("configuration validation", "[seesaw]") {
    const DensityOperator shared = isotropic(2, 0.5);
    SeesawConfig config;
    config.restarts = 0;
    REQUIRE_THROWS_AS(seesaw_psuc(shared, config), std::invalid_argument);
    config.restarts = 1;
    config.n_preparations = 1;
    REQUIRE_THROWS_AS(seesaw_psuc(shared, config), std::invalid_argument);
}
