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

#ifndef CONTCOUNT_FACTORIZATION_H_
#define CONTCOUNT_FACTORIZATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "contcount/linalg.h"
#include "contcount/privacy_budget.h"

namespace contcount {

// Dense factorizations are refused beyond this horizon (O(n^2) memory).
inline constexpr std::int64_t kMaxDenseHorizon = 4096;

// First column f(0..n-1) of the lower-triangular Toeplitz matrix L = R with
// L * R = M_count. f(0) = 1 and f(k) = (1 - 1/(2k)) f(k-1), which equals
// (2k-1)!! / (2k)!!.
struct ToeplitzFactor {
  std::vector<double> coeffs;

  std::size_t size() const { return coeffs.size(); }
};

absl::StatusOr<ToeplitzFactor> SqrtCoefficients(std::int64_t n);

using Rational = boost::multiprecision::cpp_rational;

// Exact (2k-1)!! / (2k)!!; 1 for k = 0.
absl::StatusOr<Rational> DoubleFactorialRatio(std::int64_t k);

// ||L[t, :]||^2 = 1 + sum_{i=1}^{t-1} f(i)^2 for 1 <= t <= n. Since L is
// Toeplitz this is also ||R(t)||_{1->2}^2, the squared column norm of the
// leading t x t block.
absl::StatusOr<double> FactorRowNormSq(const ToeplitzFactor& factor,
                                       std::int64_t t);

// Prefix table of FactorRowNormSq: entry t-1 holds the value for row t.
std::vector<double> FactorRowNormSqTable(const ToeplitzFactor& factor);

// ||L||_F^2 = sum_t ||L[t, :]||^2.
double FactorFrobeniusSq(const ToeplitzFactor& factor);

enum class FactorizationKind { kSqrtToeplitz, kBinary, kHonaker };

absl::string_view FactorizationKindName(FactorizationKind kind);

// M_count(n) = left * right with left n x p and right p x n. Immutable after
// construction.
class Factorization {
 public:
  Factorization(FactorizationKind kind, DenseMatrix left, DenseMatrix right)
      : kind_(kind), left_(std::move(left)), right_(std::move(right)) {}

  FactorizationKind kind() const { return kind_; }
  const DenseMatrix& left() const { return left_; }
  const DenseMatrix& right() const { return right_; }
  std::int64_t n() const { return static_cast<std::int64_t>(left_.rows()); }

 private:
  FactorizationKind kind_;
  DenseMatrix left_;
  DenseMatrix right_;
};

// L = R = LowerToeplitz(SqrtCoefficients(n)).
absl::StatusOr<Factorization> SqrtFactorization(std::int64_t n);

// Binary tree mechanism as a factorization. For n = 2^m, right is the
// (2n - 1) x n matrix of dyadic-interval indicators with rows in post-order
// (left subtree, right subtree, node), and row t of left selects the nodes
// of the dyadic decomposition of [1, t], popcount(t) of them. Other n are
// built at the next power of two n' and truncated to the first n columns of
// right and the first n rows of left.
absl::StatusOr<Factorization> BinaryFactorization(std::int64_t n);

// Honaker's optimized reconstruction: right = R_binary,
// left = M_count * pinv(R_binary).
absl::StatusOr<Factorization> HonakerFactorization(std::int64_t n);

// max |left * right - M_count(n)|.
double Residual(const Factorization& fact);

// C^2 * ||right||_{1->2}^2 * ||left||_F^2 / n.
double ExpectedMse(const Factorization& fact, const PrivacyBudget& budget);

// Post-order index of the tree node covering the 2^level leaves that end at
// (0-based) leaf `last_leaf`: 2 * last_leaf - popcount(last_leaf) + level.
std::uint64_t PostOrderIndex(std::uint64_t last_leaf, int level);

// Smallest power of two >= n.
std::int64_t PaddedHorizon(std::int64_t n);

// ||R_binary||_{1->2}^2 = 1 + log2(n') and ||L_binary||_F^2 = sum of
// popcount(t) over t = 1..n, without building either matrix.
double BinaryRightColumnNormSq(std::int64_t n);
std::uint64_t BinaryLeftFrobeniusSq(std::int64_t n);

// Expected MSE of the binary mechanism from the two counts above; valid for
// any n, including horizons too large to build densely.
double BinaryExpectedMse(std::int64_t n, const PrivacyBudget& budget);

// Lower bound on err(binary) / err(sqrt factorization):
//   log2(n) (1 + log2(n)) / (2 (1 + ln(4n/5) / pi)^2).
absl::StatusOr<double> SuboptimalityRatio(double n);

}  // namespace contcount

#endif  // CONTCOUNT_FACTORIZATION_H_
