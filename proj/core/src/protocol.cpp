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

#include "qsdc/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace qsdc {

Behavior::Behavior(ScenarioShape shape, std::vector<double> probabilities)
    : shape_(shape), probs_(std::move(probabilities)) {
    const std::size_t expected = static_cast<std::size_t>(shape_.n_preparations) *
                                 shape_.n_settings * shape_.n_outcomes;
    if (shape_.n_preparations < 1 || shape_.n_settings < 1 || shape_.n_outcomes < 1 ||
        probs_.size() != expected)
        throw InvariantViolation("behavior: probability tensor does not match shape");
}

void validate_povm(const Povm& povm, const NumericPolicy& policy) {
    if (povm.effects.empty()) throw InvariantViolation("povm: no effects");
    const long dim = povm.effects.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& effect : povm.effects) {
        if (effect.rows() != dim || effect.cols() != dim)
            throw InvariantViolation("povm: effects have inconsistent dimensions");
        if (!is_hermitian(effect, policy.symmetry_tol))
            throw InvariantViolation("povm: effect is not Hermitian");
        const HermitianEig eig = herm_eig(effect, policy);
        if (eig.eigenvalues.minCoeff() < -policy.psd_tol)
            throw InvariantViolation("povm: effect has a negative eigenvalue beyond tolerance");
        sum += effect;
    }
    const HermitianEig res = herm_eig(Matrix(sum - Matrix::Identity(dim, dim)), policy);
    if (res.eigenvalues.cwiseAbs().maxCoeff() > policy.completeness_tol)
        throw InvariantViolation("povm: effects do not sum to the identity within tolerance");
}

void validate_family(const PreparationFamily& family, const NumericPolicy& policy) {
    validate_density(family.shared_state, policy);
    if (family.encodings.empty()) throw InvariantViolation("preparation family: no encodings");
    const int d_a = family.shared_state.d_a;
    const int d_b = family.shared_state.d_b;
    std::vector<Matrix> marginals;
    marginals.reserve(family.encodings.size());
    for (int x = 0; x < family.size(); ++x) {
        const DensityOperator rho_x = prepare(family, x, policy);
        validate_density(rho_x, policy);
        marginals.push_back(partial_trace(rho_x.matrix, d_a, d_b, Subsystem::B));
    }
    for (std::size_t i = 0; i < marginals.size(); ++i)
        for (std::size_t j = i + 1; j < marginals.size(); ++j)
            if (trace_norm(Matrix(marginals[i] - marginals[j]), policy) > 1e-9)
                throw InvariantViolation(
                    "preparation family: encodings change Bob's marginal state");
}

void validate_behavior(const Behavior& behavior, const NumericPolicy& policy) {
    const ScenarioShape& shape = behavior.shape();
    for (int y = 0; y < shape.n_settings; ++y)
        for (int x = 0; x < shape.n_preparations; ++x) {
            double total = 0.0;
            for (int b = 0; b < shape.n_outcomes; ++b) {
                const double v = behavior.p(b, x, y);
                if (v < -1e-12 || v > 1.0 + 1e-12)
                    throw InvariantViolation("behavior: probability outside [0, 1]");
                total += v;
            }
            if (std::abs(total - 1.0) > policy.completeness_tol)
                throw InvariantViolation("behavior: outcome probabilities do not sum to one");
        }
}

Matrix weyl(int d, int K, int x1, int x2) {
    if (d < 1 || K < 1) throw std::invalid_argument("weyl: dimensions must be positive");
    if (x1 < 0 || x1 >= d || x2 < 0 || x2 >= K)
        throw std::invalid_argument("weyl: index out of range");
    Matrix w = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const double phase = 2.0 * std::numbers::pi * j * x2 / K;
        w((j + x1) % d, j) = Complex(std::cos(phase), std::sin(phase));
    }
    return w;
}

DensityOperator prepare(const PreparationFamily& family, int x, const NumericPolicy& policy) {
    if (x < 0 || x >= family.size())
        throw std::invalid_argument("prepare: preparation index out of range");
    const DensityOperator& shared = family.shared_state;
    const Encoding& enc = family.encodings[x];
    DensityOperator out;
    out.d_a = shared.d_a;
    out.d_b = shared.d_b;
    if (enc.kind == Encoding::Kind::Unitary) {
        if (enc.op.rows() != shared.d_a || enc.op.cols() != shared.d_a)
            throw std::invalid_argument("prepare: unitary encoding has wrong dimension");
        if ((enc.op.adjoint() * enc.op - Matrix::Identity(shared.d_a, shared.d_a)).norm() >
            1e-8)
            throw std::invalid_argument("prepare: encoding matrix is not unitary");
        const Matrix u_full = kron(enc.op, Matrix::Identity(shared.d_b, shared.d_b), policy);
        out.matrix = u_full * shared.matrix * u_full.adjoint();
    } else {
        ChoiOperator choi{enc.op, shared.d_a};
        validate_choi(choi, policy);
        out.matrix = apply_choi_to_alice(choi, shared.matrix, shared.d_a, shared.d_b);
    }
    return out;
}

Behavior behavior(const PreparationFamily& family, const std::vector<Povm>& povms,
                  const NumericPolicy& policy) {
    if (povms.empty()) throw std::invalid_argument("behavior: no measurement settings");
    const int n = family.size();
    const int m = static_cast<int>(povms.size());
    const int k = povms.front().n_outcomes();
    const long dim = static_cast<long>(family.shared_state.d_a) * family.shared_state.d_b;
    for (const Povm& povm : povms) {
        if (povm.n_outcomes() != k)
            throw std::invalid_argument("behavior: settings have different outcome counts");
        for (const Matrix& effect : povm.effects)
            if (effect.rows() != dim || effect.cols() != dim)
                throw std::invalid_argument("behavior: effect dimension mismatch");
    }

    std::vector<double> probs(static_cast<std::size_t>(n) * m * k, 0.0);
    for (int x = 0; x < n; ++x) {
        const DensityOperator rho_x = prepare(family, x, policy);
        for (int y = 0; y < m; ++y)
            for (int b = 0; b < k; ++b) {
                const Complex val = (rho_x.matrix * povms[y].effects[b]).trace();
                probs[(static_cast<std::size_t>(y) * n + x) * k + b] = val.real();
            }
    }
    Behavior out({n, m, k}, std::move(probs));
    validate_behavior(out, policy);
    return out;
}

double p_suc(const Behavior& behavior) {
    const ScenarioShape& shape = behavior.shape();
    if (shape.n_settings != 1 || shape.n_outcomes != shape.n_preparations)
        throw std::invalid_argument(
            "p_suc: requires a single setting with one outcome per preparation");
    double total = 0.0;
    for (int x = 0; x < shape.n_preparations; ++x) total += behavior.p(x, x, 0);
    return total / shape.n_preparations;
}

std::vector<std::pair<int, int>> vn_pair_settings(int n_preparations) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n_preparations) * (n_preparations - 1) / 2);
    for (int x = 1; x < n_preparations; ++x)
        for (int xp = 0; xp < x; ++xp) pairs.emplace_back(x, xp);
    return pairs;
}

double v_n(const Behavior& behavior) {
    const ScenarioShape& shape = behavior.shape();
    const int n = shape.n_preparations;
    if (shape.n_outcomes != 2 || shape.n_settings != n * (n - 1) / 2)
        throw std::invalid_argument(
            "v_n: requires dichotomic outcomes and one setting per preparation pair");
    const auto pairs = vn_pair_settings(n);
    double total = 0.0;
    for (int y = 0; y < static_cast<int>(pairs.size()); ++y) {
        const double diff = behavior.p(1, pairs[y].first, y) - behavior.p(1, pairs[y].second, y);
        total += diff * diff;
    }
    return total;
}

namespace {

// |Psi_{x1,x2}> = sum_{j<s} (1/sqrt(s)) (W^{(K)}_{x1,x2} |j>) (x) |j> on a
// d x d_b product space.
Vector shifted_entangled_vector(int d, int d_b, int s, int K, int x1, int x2) {
    const Matrix w = weyl(d, K, x1, x2);
    Vector v = Vector::Zero(static_cast<long>(d) * d_b);
    const double amp = 1.0 / std::sqrt(static_cast<double>(s));
    for (int j = 0; j < s; ++j)
        for (int a = 0; a < d; ++a) v(a * d_b + j) += amp * w(a, j);
    return v;
}

} // namespace

Povm meb_povm(int d) {
    Povm povm;
    povm.effects.reserve(static_cast<std::size_t>(d) * d);
    for (int x1 = 0; x1 < d; ++x1)
        for (int x2 = 0; x2 < d; ++x2) {
            const Vector v = shifted_entangled_vector(d, d, d, d, x1, x2);
            povm.effects.push_back(v * v.adjoint());
        }
    return povm;
}

ProtocolPair weyl_meb_protocol(const DensityOperator& shared) {
    if (shared.d_a != shared.d_b)
        throw std::invalid_argument("weyl_meb_protocol: requires d_a == d_b");
    const int d = shared.d_a;
    ProtocolPair out;
    out.family.shared_state = shared;
    out.family.encodings.reserve(static_cast<std::size_t>(d) * d);
    for (int x1 = 0; x1 < d; ++x1)
        for (int x2 = 0; x2 < d; ++x2)
            out.family.encodings.push_back(Encoding::unitary(weyl(d, d, x1, x2)));
    out.povm = meb_povm(d);
    return out;
}

ProtocolPair canonical_sdc_protocol(int d, int s, int K) {
    if (s < 1 || s > d) throw std::invalid_argument("canonical_sdc_protocol: need 1 <= s <= d");
    if (K < s) throw std::invalid_argument("canonical_sdc_protocol: need K >= s");
    const int n = d * K;

    PureState shared;
    shared.d_a = d;
    shared.d_b = d;
    shared.amplitudes = Vector::Zero(static_cast<long>(d) * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(s));
    for (int j = 0; j < s; ++j) shared.amplitudes(j * d + j) = amp;

    ProtocolPair out;
    out.family.shared_state = pure_to_density(shared);
    out.family.encodings.reserve(n);

    Matrix tail = Matrix::Zero(d * d, d * d);
    for (int j = s; j < d; ++j) {
        Matrix proj = Matrix::Zero(d, d);
        proj(j, j) = 1.0;
        tail += kron(Matrix::Identity(d, d), proj);
    }

    for (int x1 = 0; x1 < d; ++x1)
        for (int x2 = 0; x2 < K; ++x2) {
            out.family.encodings.push_back(Encoding::unitary(weyl(d, K, x1, x2)));
            const Vector v = shifted_entangled_vector(d, d, s, K, x1, x2);
            Matrix effect = (static_cast<double>(s) / K) * (v * v.adjoint());
            effect += tail / static_cast<double>(n);
            out.povm.effects.push_back(std::move(effect));
        }
    return out;
}

Povm helstrom_povm(const DensityOperator& rho, const DensityOperator& sigma,
                   const NumericPolicy& policy) {
    if (rho.d_a != sigma.d_a || rho.d_b != sigma.d_b)
        throw std::invalid_argument("helstrom_povm: dimension mismatch");
    const Matrix diff = rho.matrix - sigma.matrix;
    const HermitianEig eig = herm_eig(diff, policy);
    const long dim = diff.rows();
    Matrix positive = Matrix::Zero(dim, dim);
    for (long k = 0; k < dim; ++k)
        if (eig.eigenvalues(k) >= -1e-10)
            positive += eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
    Povm povm;
    povm.effects.push_back(Matrix::Identity(dim, dim) - positive);
    povm.effects.push_back(std::move(positive));
    return povm;
}

PreparationFamily vn_weyl_preparations(int d, int n_preparations) {
    if (d < 2) throw std::invalid_argument("vn_weyl_preparations: d must be at least 2");
    if (n_preparations < 2)
        throw std::invalid_argument("vn_weyl_preparations: need at least two preparations");
    PreparationFamily family;
    family.shared_state = pure_to_density(max_entangled(d));
    family.encodings.reserve(n_preparations);

    const int groups = d * d;
    const int base = n_preparations / groups;
    const int leftover = n_preparations % groups;
    for (int g = 0; g < groups; ++g) {
        const int members = base + (g < leftover ? 1 : 0);
        const Matrix w = weyl(d, d, g / d, g % d);
        for (int m = 0; m < members; ++m) family.encodings.push_back(Encoding::unitary(w));
    }
    return family;
}

std::vector<Povm> pairwise_helstrom_povms(const PreparationFamily& family,
                                          const NumericPolicy& policy) {
    const int n = family.size();
    std::vector<DensityOperator> prepared;
    prepared.reserve(n);
    for (int x = 0; x < n; ++x) prepared.push_back(prepare(family, x, policy));
    std::vector<Povm> povms;
    for (const auto& [x, xp] : vn_pair_settings(n))
        povms.push_back(helstrom_povm(prepared[x], prepared[xp], policy));
    return povms;
}

double preparation_purity(const PreparationFamily& family, const NumericPolicy& policy) {
    const int n = family.size();
    const long dim = static_cast<long>(family.shared_state.d_a) * family.shared_state.d_b;
    Matrix omega = Matrix::Zero(dim, dim);
    for (int x = 0; x < n; ++x) omega += prepare(family, x, policy).matrix;
    omega /= static_cast<double>(n);
    return (omega * omega).trace().real();
}

} // namespace qsdc
