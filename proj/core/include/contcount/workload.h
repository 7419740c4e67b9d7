//
// Copyright 2026 The contcount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef CONTCOUNT_WORKLOAD_H_
#define CONTCOUNT_WORKLOAD_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "contcount/linalg.h"
#include "contcount/privacy_budget.h"

namespace contcount {

// Dense constructors. They exist for oracle cross-checks and small runs; the
// closed-form evaluators further down never build a matrix.

// The n x n prefix-sum matrix: 1 on and below the diagonal, 0 above.
absl::StatusOr<DenseMatrix> CountingMatrix(std::int64_t n);

// Inverse of CountingMatrix(n): 1 on the diagonal, -1 on the first
// subdiagonal.
absl::StatusOr<DenseMatrix> CountingInverse(std::int64_t n);

// Sylvester Hadamard matrix of order 2^d, H[r][c] = (-1)^popcount(r & c).
absl::StatusOr<DenseMatrix> Hadamard(int d);

// The C(d, w) x 2^d parity workload. Row order is the lexicographic order of
// the weight-w subsets P of {1..d}; column c is the point x in {+-1}^d with
// x_i = -1 exactly when bit (d - i) of c is set, so x_1 is the most
// significant bit. Entry = prod_{i in P} x_i, which is a row of Hadamard(d).
absl::StatusOr<DenseMatrix> ParityWorkload(int d, int w);

std::uint64_t Binomial(int n, int k);

// sigma_i(M_count) = csc((2i - 1) pi / (4n + 2)) / 2 for 1 <= i <= n,
// non-increasing in i.
absl::StatusOr<double> CountingSingularValue(std::int64_t n, std::int64_t i);

// Sum of the closed-form singular values, O(n) time.
absl::StatusOr<double> CountingSchattenOne(std::int64_t n);

// Lower bound on gamma_F(M_count):
//   (sqrt(n) / pi) (2 + ln((2n + 1) / 5) + ln(2n + 1) / (2n)).
absl::StatusOr<double> GammaLowerBoundCount(std::int64_t n);

// Upper bound on gamma_F(M_count): sqrt(n) (1 + ln(4n / 5) / pi).
absl::StatusOr<double> GammaUpperBoundCount(std::int64_t n);

// Mean-squared error guaranteed by the square-root factorization mechanism:
// C^2 (1 + ln(4n / 5) / pi)^2.
absl::StatusOr<double> ErrUpperBound(std::int64_t n,
                                     const PrivacyBudget& budget);

// Smallest mean-squared error any matrix mechanism can reach:
// (C^2 / pi^2) (2 + ln((2n + 1) / 5) + ln(2n + 1) / (2n))^2.
absl::StatusOr<double> ErrLowerBoundMatrixMechanism(
    std::int64_t n, const PrivacyBudget& budget);

// Lower bound for every (eps, delta)-DP continual counter, with prefactor
// 1 / (e^{4 eps} - 1)^2. The bound is stated for delta < c / (2 e^eps) with
// an unspecified absolute constant c, so delta is not checked here.
absl::StatusOr<double> ErrLowerBoundAnyMechanism(std::int64_t n,
                                                 double epsilon);

// Same bound for mechanisms whose noise is independent of the input, with
// prefactor 1 / (e^{2 eps} - 1)^2.
absl::StatusOr<double> ErrLowerBoundInputObliviousMechanism(std::int64_t n,
                                                            double epsilon);

// gamma_F lower bound for the parity workload, ||S||_1 / sqrt(2^d). The value
// is computed from the spectrum of the dense workload and checked against
// the closed form C(d, w); the exact binomial is returned once they agree to
// 1e-9 relative. Dense construction limits d to 16.
absl::StatusOr<double> ParityGammaLower(int d, int w);

}  // namespace contcount

#endif  // CONTCOUNT_WORKLOAD_H_
