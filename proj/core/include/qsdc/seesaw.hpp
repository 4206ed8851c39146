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

#ifndef QSDC_SEESAW_HPP
#define QSDC_SEESAW_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qsdc/programs.hpp"

namespace qsdc {

struct SeesawConfig {
    int n_preparations = 0;  ///< N; defaults to d_a^2 when left at zero
    int restarts = 10;
    std::uint64_t seed = 0;
    double tol = 1e-7;       ///< stop when a full round improves less than this
    int max_rounds = 60;
    /// Dedicate one restart to the maximally-entangled-basis measurement
    /// (d_a == d_b and N == d_a^2 only); the remaining restarts are random.
    bool use_canonical_start = true;
    SdpOptions sdp;
};

struct RestartTrace {
    int restart = 0;
    std::vector<double> values;  ///< objective after every half-step, non-decreasing
    bool converged = false;
    bool failed = false;
    std::string error;
};

struct SeesawResult {
    double best_value = 0.0;
    std::vector<ChoiOperator> best_encodings;
    Povm best_povm;
    int best_restart = -1;
    int rounds_used = 0;
    std::vector<RestartTrace> traces;
};

/// Alternating lower bound on the decoding success reachable with a given
/// shared state: starting from an initial measurement, repeatedly optimize
/// the encodings for the current measurement and the measurement for the
/// current encodings, each step an exact semidefinite program.  A candidate
/// from either half-step is kept only when its exact re-simulated value does
/// not decrease the objective, so the recorded trace is non-decreasing and
/// best_value is certified by the returned protocol.
///
/// Optionally `warm_start` seeds restart 0 with a known measurement (used by
/// parameter sweeps to carry the optimum between neighbouring points).
SeesawResult seesaw_psuc(const DensityOperator& shared, const SeesawConfig& config,
                         const Povm* warm_start = nullptr,
                         const NumericPolicy& policy = {});

} // namespace qsdc

#endif // QSDC_SEESAW_HPP
