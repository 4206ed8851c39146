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

#ifndef QSDC_CHOI_HPP
#define QSDC_CHOI_HPP

#include "qsdc/linalg.hpp"
#include "qsdc/states.hpp"

namespace qsdc {

/// Choi operator of a channel D(H_A) -> D(H_A'), with dim(H_A') = dim(H_A)
/// = d_a.  The first tensor factor indexes the channel input, the second the
/// output: L = sum_{ij} |i><j| (x) Lambda(|i><j|).  Complete positivity is
/// L >= 0 and trace preservation is tr_{A'}(L) = I_A.
struct ChoiOperator {
    Matrix matrix;  // (d_a^2) x (d_a^2)
    int d_a = 1;
};

void validate_choi(const ChoiOperator& choi, const NumericPolicy& policy = {});

/// Choi operator of conjugation by a unitary.
ChoiOperator choi_of_unitary(const Matrix& u);

/// Choi operator of the completely depolarizing channel rho -> I/d.
ChoiOperator choi_of_depolarizing(int d);

/// Apply the channel to a d_a-dimensional state:
/// Lambda(rho) = tr_A[(rho^T (x) I_{A'}) L].  Trace preserving.
Matrix apply_choi(const ChoiOperator& choi, const Matrix& rho_a);

/// Apply the channel to the A factor of a bipartite state,
/// (Lambda (x) id_B)[rho].
Matrix apply_choi_to_alice(const ChoiOperator& choi, const Matrix& rho_ab, int d_a, int d_b);

} // namespace qsdc

#endif // QSDC_CHOI_HPP
