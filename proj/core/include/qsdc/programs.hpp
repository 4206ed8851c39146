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

#ifndef QSDC_PROGRAMS_HPP
#define QSDC_PROGRAMS_HPP

#include <vector>

#include "qsdc/choi.hpp"
#include "qsdc/protocol.hpp"
#include "qsdc/sdp.hpp"
#include "qsdc/states.hpp"

namespace qsdc {

struct PovmOptimum {
    Povm povm;
    double value = 0.0;  ///< exact Born-rule value of the repaired POVM
    SdpSolution sdp;
};

struct PreparationOptimum {
    std::vector<ChoiOperator> encodings;
    double value = 0.0;  ///< exact Born-rule value of the repaired channels
    SdpSolution sdp;
};

/// Best decoding measurement for a fixed list of prepared states:
/// maximize (1/N) sum_x tr(rho_x M_x) over POVMs with N effects.
/// Throws SolverFailure unless the solver certifies optimality.
PovmOptimum optimize_povm(const std::vector<DensityOperator>& prepared,
                          const SdpOptions& options = {},
                          const NumericPolicy& policy = {});

/// Best encodings for a fixed measurement: maximize the decoding success
/// over one trace-preserving completely positive channel per input, in Choi
/// form.  The effects act on the communicated system (first factor) and
/// Bob's share (second factor).
PreparationOptimum optimize_preparations(const DensityOperator& shared, const Povm& povm,
                                         const SdpOptions& options = {},
                                         const NumericPolicy& policy = {});

/// Clip tiny negative eigenvalues and renormalize so the effects sum to the
/// identity exactly (up to roundoff).
Povm repair_povm(const Povm& povm, const NumericPolicy& policy = {});

/// Clip tiny negative eigenvalues and rescale so the channel is trace
/// preserving exactly (up to roundoff).
ChoiOperator repair_choi(const ChoiOperator& choi, const NumericPolicy& policy = {});

} // namespace qsdc

#endif // QSDC_PROGRAMS_HPP
