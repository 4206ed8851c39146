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

#ifndef QSDC_POLICY_HPP
#define QSDC_POLICY_HPP

#include <stdexcept>
#include <string>

namespace qsdc {

inline constexpr const char* kToolName = "qsdc";
inline constexpr const char* kToolVersion = "0.1.0";

/// Numerical tolerances shared across the library.  Every validation routine
/// takes a policy argument instead of reading hidden globals, so results are
/// reproducible and tolerances can be tightened per call site.
struct NumericPolicy {
    double symmetry_tol = 1e-10;      ///< Hermiticity check, relative to Frobenius norm
    double psd_tol = 1e-9;            ///< eigenvalue floor for positive semidefiniteness
    double trace_tol = 1e-10;         ///< unit-trace / trace-preservation checks
    double zero_tol = 1e-9;           ///< singular values below this count as rank zero
    double completeness_tol = 1e-9;   ///< operator-norm slack for POVM completeness
    int max_dim = 256;                ///< hard cap on matrix dimension
};

/// A structural invariant of a domain object failed validation.
class InvariantViolation : public std::runtime_error {
  public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

/// An optimization backend did not produce a usable certificate.
class SolverFailure : public std::runtime_error {
  public:
    explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qsdc

#endif // QSDC_POLICY_HPP
