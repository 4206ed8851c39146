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

#ifndef QSDC_RNG_HPP
#define QSDC_RNG_HPP

#include <cstdint>
#include <random>

#include "qsdc/linalg.hpp"

namespace qsdc {

/// Deterministic random source.  Gaussian variates are produced by an
/// explicit Box-Muller transform on raw 53-bit uniforms, so streams are
/// bit-for-bit reproducible across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent stream for a sub-task (e.g. one restart of an
    /// alternating optimization), decorrelated from sibling indices.
    static Rng derived(std::uint64_t seed, std::uint64_t index);

    std::uint64_t raw() { return gen_(); }
    double uniform();                    // in [0, 1)
    double gaussian();                   // standard normal
    int uniform_int(int lo, int hi);     // inclusive bounds

    Complex complex_gaussian();          // sqrt(1/2)*(g1 + i g2)
    Matrix ginibre(int rows, int cols);  // i.i.d. complex Gaussian entries
    Matrix haar_unitary(int n);
    Vector random_pure_state(int dim);
    Matrix random_psd(int n);            // G G^dagger, full rank a.s.
    Matrix random_density(int n);        // unit-trace random PSD

  private:
    std::mt19937_64 gen_;
};

} // namespace qsdc

#endif // QSDC_RNG_HPP
