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

#include "qsdc/seesaw.hpp"

#include <algorithm>

#include "qsdc/rng.hpp"

namespace qsdc {

namespace {

Povm random_full_rank_povm(Rng& rng, int dim, int n_outcomes,
                           const NumericPolicy& policy) {
    std::vector<Matrix> raw;
    raw.reserve(n_outcomes);
    Matrix sum = Matrix::Zero(dim, dim);
    for (int x = 0; x < n_outcomes; ++x) {
        raw.push_back(rng.random_psd(dim));
        sum += raw.back();
    }
    const HermitianEig eig = herm_eig(sum, policy);
    Matrix t = Matrix::Zero(dim, dim);
    for (long k = 0; k < eig.eigenvalues.size(); ++k)
        t += (1.0 / std::sqrt(std::max(eig.eigenvalues(k), 1e-14))) *
             (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
    Povm povm;
    povm.effects.reserve(n_outcomes);
    for (const Matrix& g : raw) povm.effects.push_back(t * g * t);
    return povm;
}

} // namespace

SeesawResult seesaw_psuc(const DensityOperator& shared, const SeesawConfig& config,
                         const Povm* warm_start, const NumericPolicy& policy) {
    validate_density(shared, policy);
    const int d_a = shared.d_a;
    const int d_b = shared.d_b;
    const int n = config.n_preparations > 0 ? config.n_preparations : d_a * d_a;
    if (n < 2) throw std::invalid_argument("seesaw_psuc: need at least two preparations");
    if (config.restarts < 1 || config.tol <= 0.0)
        throw std::invalid_argument("seesaw_psuc: invalid restart count or tolerance");
    const int dim = d_a * d_b;

    const bool canonical_ok =
        config.use_canonical_start && d_a == d_b && n == d_a * d_a;

    SeesawResult result;
    result.best_value = -1.0;
    for (int r = 0; r < config.restarts; ++r) {
        RestartTrace trace;
        trace.restart = r;
        Rng rng = Rng::derived(config.seed, static_cast<std::uint64_t>(r));

        Povm povm;
        int special = 0;
        if (warm_start != nullptr && r == special++) {
            povm = *warm_start;
        } else if (canonical_ok && r == special) {
            povm = meb_povm(d_a);
        } else {
            povm = random_full_rank_povm(rng, dim, n, policy);
        }

        double value = -1.0;
        std::vector<ChoiOperator> encodings;
        Povm current_povm = povm;
        int rounds = 0;
        try {
            for (; rounds < config.max_rounds; ++rounds) {
                const double round_start = value;

                PreparationOptimum prep = optimize_preparations(shared, current_povm,
                                                                config.sdp, policy);
                if (prep.value >= value) {
                    value = prep.value;
                    encodings = std::move(prep.encodings);
                }
                trace.values.push_back(value);

                std::vector<DensityOperator> prepared;
                prepared.reserve(n);
                for (const ChoiOperator& choi : encodings)
                    prepared.push_back(DensityOperator{
                        apply_choi_to_alice(choi, shared.matrix, d_a, d_b), d_a, d_b});
                PovmOptimum meas = optimize_povm(prepared, config.sdp, policy);
                if (meas.value >= value) {
                    value = meas.value;
                    current_povm = std::move(meas.povm);
                }
                trace.values.push_back(value);

                if (value - round_start < config.tol || value >= 1.0 - 1e-12) {
                    trace.converged = true;
                    ++rounds;
                    break;
                }
            }
        } catch (const SolverFailure& err) {
            trace.failed = true;
            trace.error = err.what();
        }

        if (!trace.failed && value > result.best_value) {
            result.best_value = value;
            result.best_encodings = encodings;
            result.best_povm = current_povm;
            result.best_restart = r;
            result.rounds_used = rounds;
        }
        result.traces.push_back(std::move(trace));
    }

    if (result.best_restart < 0)
        throw SolverFailure("seesaw_psuc: every restart failed");
    return result;
}

} // namespace qsdc
