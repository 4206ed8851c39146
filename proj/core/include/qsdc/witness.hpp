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

#ifndef QSDC_WITNESS_HPP
#define QSDC_WITNESS_HPP

#include <vector>

#include "qsdc/protocol.hpp"
#include "qsdc/states.hpp"

namespace qsdc {

/// Deterministic classical strategy: encoder x -> message in {0..d_a-1},
/// decoder message -> outcome.  Shared randomness cannot beat the best
/// deterministic pair for a linear figure of merit, so these suffice for
/// the exact classical optimum.
struct ClassicalStrategy {
    std::vector<int> encoder;
    std::vector<int> decoder;
};

/// Outcome of a semi-device-independent certification from observed data.
struct CertificationVerdict {
    int schmidt_lower_bound = 1;
    bool entangled = false;
    bool maximally_entangled_selftest = false;
    double margin = 0.0;  ///< distance of the observed value to the nearest bound
};

/// Reference critical visibilities for entanglement detection at local
/// dimension d, for comparison across certification methods.
struct ComparisonConstants {
    double sdc_isotropic = 0.0;       ///< 1/(d+1)
    double steering_isotropic = 0.0;  ///< (H_d - 1)/(d - 1), H_d the harmonic number
    double steering_werner = 0.0;     ///< d/(d+1)
    double werner_sdc_observed = 0.0; ///< (d-1)/d
};

/// Upper bound min(d_a*s/n, 1) on the decoding success with an s-entangled
/// shared state and a d_a-dimensional message.
double psuc_bound(int d_a, int s, int n);

/// Lower bound (1 + Gamma)/d_a achieved by a pure shared state with Schmidt
/// coefficients `coefficients`, Gamma = sum_{j != k} eta_j eta_k.
double pure_state_psuc_lower(const std::vector<double>& coefficients, int d_a);

/// Upper bound (n^2/2)(1 - 1/min(d_a*s, n)) on the pair-distinguishing
/// witness.
double vn_bound(int d_a, int s, int n);

/// Exact classical optimum of the decoding success by enumerating all
/// deterministic encoders (each message decoded optimally).  Capped at
/// n <= 9, d_a <= 3.
double classical_optimum_bruteforce(int n, int d_a,
                                    ClassicalStrategy* best_strategy = nullptr);

/// Smallest Schmidt number consistent with an observed success probability;
/// ceil(n*p/d_a) clamped to [1, d_a].
int schmidt_number_lower_bound(double p_suc_observed, int d_a, int n);

struct ZetaProtocol {
    PreparationFamily family;
    Povm povm;
    double value = 0.0;  ///< simulated success, equals the Phi+ fidelity of rho
};

/// Twirl the state onto the isotropic family and play the shift-and-phase /
/// entangled-basis protocol on it.  The simulated success probability equals
/// fidelity_phi_plus(rho), which certifies entanglement whenever it exceeds
/// the classical bound 1/d_a.
ZetaProtocol build_zeta_protocol(const DensityOperator& rho,
                                 const NumericPolicy& policy = {});

/// Accepts iff the observed statistics are consistent only with a maximally
/// entangled shared state: unit success probability, non-overlapping
/// preparations, and a uniform spectrum of Alice's reduced state.
CertificationVerdict selftest_check(const PreparationFamily& family, const Povm& povm,
                                    double tol_probability = 1e-6,
                                    double tol_spectrum = 1e-4,
                                    const NumericPolicy& policy = {});

ComparisonConstants comparison_constants(int d);

} // namespace qsdc

#endif // QSDC_WITNESS_HPP
