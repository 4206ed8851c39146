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

#include "qsdc/witness.hpp"

#include <algorithm>
#include <cmath>

namespace qsdc {

double psuc_bound(int d_a, int s, int n) {
    if (s < 1 || s > d_a) throw std::invalid_argument("psuc_bound: need 1 <= s <= d_a");
    if (n < 1) throw std::invalid_argument("psuc_bound: n must be positive");
    return std::min(static_cast<double>(d_a) * s / n, 1.0);
}

double pure_state_psuc_lower(const std::vector<double>& coefficients, int d_a) {
    if (coefficients.empty() || static_cast<int>(coefficients.size()) > d_a)
        throw std::invalid_argument("pure_state_psuc_lower: invalid coefficient count");
    double sum = 0.0, sum_sq = 0.0, prev = coefficients.front();
    for (double eta : coefficients) {
        if (eta <= 0.0 || eta > prev + 1e-12)
            throw std::invalid_argument(
                "pure_state_psuc_lower: coefficients must be positive and descending");
        prev = eta;
        sum += eta;
        sum_sq += eta * eta;
    }
    if (std::abs(sum_sq - 1.0) > 1e-8)
        throw std::invalid_argument("pure_state_psuc_lower: coefficients are not normalized");
    const double gamma = sum * sum - sum_sq;  // sum_{j != k} eta_j eta_k
    return (1.0 + gamma) / d_a;
}

double vn_bound(int d_a, int s, int n) {
    if (s < 1 || s > d_a) throw std::invalid_argument("vn_bound: need 1 <= s <= d_a");
    if (n < 1) throw std::invalid_argument("vn_bound: n must be positive");
    const double cap = std::min(static_cast<double>(d_a) * s, static_cast<double>(n));
    return 0.5 * n * n * (1.0 - 1.0 / cap);
}

double classical_optimum_bruteforce(int n, int d_a, ClassicalStrategy* best_strategy) {
    if (n < 1 || n > 9 || d_a < 1 || d_a > 3)
        throw std::invalid_argument(
            "classical_optimum_bruteforce: instance above the enumeration cap (n <= 9, d <= 3)");

    // Enumerate all d_a^n encoders.  For a fixed encoder the decoder
    // decomposes over messages: decoding message a as x succeeds only for
    // inputs with e(x) = a and x itself, so the best decoder scores one per
    // message that is used at least once.  That per-message optimization is
    // exact, not a heuristic.
    long total_encoders = 1;
    for (int i = 0; i < n; ++i) total_encoders *= d_a;

    int best_count = -1;
    std::vector<int> encoder(n, 0), best_encoder(n, 0);
    for (long code = 0; code < total_encoders; ++code) {
        long rem = code;
        for (int x = 0; x < n; ++x) {
            encoder[x] = static_cast<int>(rem % d_a);
            rem /= d_a;
        }
        int used_mask = 0;
        for (int x = 0; x < n; ++x) used_mask |= 1 << encoder[x];
        int count = 0;
        for (int a = 0; a < d_a; ++a) count += (used_mask >> a) & 1;
        if (count > best_count) {
            best_count = count;
            best_encoder = encoder;
        }
    }

    if (best_strategy != nullptr) {
        best_strategy->encoder = best_encoder;
        best_strategy->decoder.assign(d_a, 0);
        for (int a = 0; a < d_a; ++a)
            for (int x = 0; x < n; ++x)
                if (best_encoder[x] == a) {
                    best_strategy->decoder[a] = x;
                    break;
                }
    }
    return static_cast<double>(best_count) / n;
}

int schmidt_number_lower_bound(double p_suc_observed, int d_a, int n) {
    if (p_suc_observed < -1e-9 || p_suc_observed > 1.0 + 1e-9)
        throw std::invalid_argument("schmidt_number_lower_bound: probability outside [0, 1]");
    const double p = std::clamp(p_suc_observed, 0.0, 1.0);
    for (int s = 1; s <= d_a; ++s)
        if (psuc_bound(d_a, s, n) >= p - 1e-12) return s;
    return d_a;
}

ZetaProtocol build_zeta_protocol(const DensityOperator& rho, const NumericPolicy& policy) {
    if (rho.d_a != rho.d_b)
        throw std::invalid_argument("build_zeta_protocol: requires d_a == d_b");
    ZetaProtocol out;
    const DensityOperator twirled = twirl_to_isotropic(rho, policy);
    ProtocolPair pair = weyl_meb_protocol(twirled);
    out.family = std::move(pair.family);
    out.povm = std::move(pair.povm);
    out.value = p_suc(behavior(out.family, {out.povm}, policy));
    return out;
}

CertificationVerdict selftest_check(const PreparationFamily& family, const Povm& povm,
                                    double tol_probability, double tol_spectrum,
                                    const NumericPolicy& policy) {
    const int n = family.size();
    const int d_a = family.shared_state.d_a;
    if (n != d_a * d_a)
        throw std::invalid_argument("selftest_check: need d_a^2 preparations");
    if (povm.n_outcomes() != n)
        throw std::invalid_argument("selftest_check: need one outcome per preparation");

    const double observed = p_suc(behavior(family, {povm}, policy));

    std::vector<DensityOperator> prepared;
    prepared.reserve(n);
    for (int x = 0; x < n; ++x) prepared.push_back(prepare(family, x, policy));
    double worst_overlap = 0.0;
    for (int x = 0; x < n; ++x)
        for (int xp = x + 1; xp < n; ++xp)
            worst_overlap = std::max(
                worst_overlap,
                std::abs((prepared[x].matrix * prepared[xp].matrix).trace().real()));

    const Matrix reduced = partial_trace(family.shared_state.matrix, d_a,
                                         family.shared_state.d_b, Subsystem::A);
    const HermitianEig eig = herm_eig(reduced, policy);
    double spectrum_deviation = 0.0;
    for (long k = 0; k < eig.eigenvalues.size(); ++k)
        spectrum_deviation =
            std::max(spectrum_deviation, std::abs(eig.eigenvalues(k) - 1.0 / d_a));

    CertificationVerdict verdict;
    verdict.schmidt_lower_bound = schmidt_number_lower_bound(observed, d_a, n);
    verdict.entangled = verdict.schmidt_lower_bound >= 2;
    verdict.maximally_entangled_selftest = observed >= 1.0 - tol_probability &&
                                           worst_overlap <= tol_probability &&
                                           spectrum_deviation <= tol_spectrum;
    double margin = 2.0;
    for (int s = 1; s <= d_a; ++s)
        margin = std::min(margin, std::abs(observed - psuc_bound(d_a, s, n)));
    verdict.margin = margin;
    return verdict;
}

ComparisonConstants comparison_constants(int d) {
    if (d < 2) throw std::invalid_argument("comparison_constants: d must be at least 2");
    double harmonic = 0.0;
    for (int i = 1; i <= d; ++i) harmonic += 1.0 / i;
    ComparisonConstants out;
    out.sdc_isotropic = 1.0 / (d + 1);
    out.steering_isotropic = (harmonic - 1.0) / (d - 1);
    out.steering_werner = static_cast<double>(d) / (d + 1);
    out.werner_sdc_observed = static_cast<double>(d - 1) / d;
    return out;
}

} // namespace qsdc
