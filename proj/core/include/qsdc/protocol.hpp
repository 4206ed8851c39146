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

#ifndef QSDC_PROTOCOL_HPP
#define QSDC_PROTOCOL_HPP

#include <utility>
#include <vector>

#include "qsdc/choi.hpp"
#include "qsdc/linalg.hpp"
#include "qsdc/states.hpp"

namespace qsdc {

/// Size of a prepare-and-measure experiment: N preparations, m measurement
/// settings, k outcomes per setting.
struct ScenarioShape {
    int n_preparations = 0;
    int n_settings = 0;
    int n_outcomes = 0;
};

/// Local operation applied to Alice's share: either conjugation by a
/// unitary or a general channel in Choi form.  Unitaries are kept as such
/// so analytic constructions stay exact; conversion to Choi form happens
/// only when a channel-level optimization requires it.
struct Encoding {
    enum class Kind { Unitary, Choi };
    Kind kind = Kind::Unitary;
    Matrix op;  // d_a x d_a unitary, or d_a^2 x d_a^2 Choi matrix

    static Encoding unitary(Matrix u) { return {Kind::Unitary, std::move(u)}; }
    static Encoding choi(Matrix l) { return {Kind::Choi, std::move(l)}; }
};

/// A shared bipartite state together with the N local operations Alice uses
/// to encode her input.  Encodings act on the A factor only, so every
/// prepared state has the same marginal on Bob's side.
struct PreparationFamily {
    DensityOperator shared_state;
    std::vector<Encoding> encodings;

    int size() const { return static_cast<int>(encodings.size()); }
};

/// Generalized measurement: PSD effects summing to the identity.
struct Povm {
    std::vector<Matrix> effects;

    int n_outcomes() const { return static_cast<int>(effects.size()); }
};

/// Conditional probability tensor p(b|x,y) of a scenario.
class Behavior {
  public:
    Behavior() = default;
    Behavior(ScenarioShape shape, std::vector<double> probabilities);

    const ScenarioShape& shape() const { return shape_; }
    double p(int b, int x, int y) const {
        return probs_[(static_cast<std::size_t>(y) * shape_.n_preparations + x) *
                          shape_.n_outcomes +
                      b];
    }
    const std::vector<double>& raw() const { return probs_; }

  private:
    ScenarioShape shape_;
    std::vector<double> probs_;
};

void validate_povm(const Povm& povm, const NumericPolicy& policy = {});
void validate_family(const PreparationFamily& family, const NumericPolicy& policy = {});
void validate_behavior(const Behavior& behavior, const NumericPolicy& policy = {});

/// Shift-and-phase unitary W = sum_j exp(2*pi*i*j*x2/K) |j + x1 mod d><j|.
/// For K = d these are the d^2 Weyl operators.
Matrix weyl(int d, int K, int x1, int x2);

/// The state Alice's encoding x produces from the shared state.
DensityOperator prepare(const PreparationFamily& family, int x,
                        const NumericPolicy& policy = {});

/// Born-rule behavior of a family measured with one POVM per setting.
Behavior behavior(const PreparationFamily& family, const std::vector<Povm>& povms,
                  const NumericPolicy& policy = {});

/// Average decoding success (1/N) sum_x p(b=x | x) for single-setting
/// scenarios with as many outcomes as preparations.
double p_suc(const Behavior& behavior);

/// Pair-distinguishing witness sum_{x>x'} |p(1|x,(x,x')) - p(1|x',(x,x'))|^2
/// for scenarios with N(N-1)/2 dichotomic settings ordered lexicographically
/// over pairs (x, x'), x > x'.
double v_n(const Behavior& behavior);

/// Canonical ordering of the dichotomic settings used by v_n: element y is
/// the pair (x, x') assigned to setting y.
std::vector<std::pair<int, int>> vn_pair_settings(int n_preparations);

struct ProtocolPair {
    PreparationFamily family;
    Povm povm;
};

/// Maximally-entangled-basis POVM: the d^2 projectors onto
/// (W_{x1,x2} (x) I)|Phi+_d>.
Povm meb_povm(int d);

/// Shift-and-phase encodings with the maximally-entangled-basis measurement
/// applied to an arbitrary shared state with d_a == d_b.
ProtocolPair weyl_meb_protocol(const DensityOperator& shared);

/// Explicit protocol achieving success probability s/K with N = d*K
/// preparations and a rank-s maximally entangled shared state: encodings
/// W^{(K)}_{x1,x2} indexed by x = x1*K + x2, measurement effects
/// (s/K)|Psi_x><Psi_x| + (1/N) sum_{j>=s} I_A (x) |j><j|.
ProtocolPair canonical_sdc_protocol(int d, int s, int K);

/// Dichotomic measurement optimally distinguishing rho from sigma: effect 1
/// projects onto the nonnegative eigenspace of rho - sigma (eigenvalues with
/// |lambda| <= 1e-10 count as nonnegative), so p(1|rho) - p(1|sigma) equals
/// the trace distance.
Povm helstrom_povm(const DensityOperator& rho, const DensityOperator& sigma,
                   const NumericPolicy& policy = {});

/// Preparation family on |Phi+_d> whose N encodings cycle through the d^2
/// Weyl operators in groups of size floor(N/d^2)+1 for the first N mod d^2
/// groups and floor(N/d^2) for the rest.
PreparationFamily vn_weyl_preparations(int d, int n_preparations);

/// One Helstrom POVM per pair setting of vn_pair_settings, in order.
std::vector<Povm> pairwise_helstrom_povms(const PreparationFamily& family,
                                          const NumericPolicy& policy = {});

/// Purity tr(Omega^2) of the uniform mixture of the prepared states.
double preparation_purity(const PreparationFamily& family,
                          const NumericPolicy& policy = {});

} // namespace qsdc

#endif // QSDC_PROTOCOL_HPP
