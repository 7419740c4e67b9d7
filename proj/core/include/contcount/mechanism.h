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

#ifndef CONTCOUNT_MECHANISM_H_
#define CONTCOUNT_MECHANISM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "contcount/factorization.h"
#include "contcount/privacy_budget.h"

namespace contcount {

// Per-round releases a_1..a_t.
using NoisyOutput = std::vector<double>;

// Streaming binary tree mechanism with Gaussian node noise.
//
// Node noise has standard deviation C * sqrt(1 + log2 n'), where n' is the
// horizon rounded up to a power of two; that is C * ||R_binary||_{1->2}.
// The 2n' - 1 node noises are drawn at construction in post-order, so the
// streaming output equals L_binary (R_binary x + node_noise()) exactly in
// distribution and, for the same draws, up to rounding. Each round touches
// O(log n) p-sums.
class BinaryMechanism {
 public:
  static absl::StatusOr<BinaryMechanism> Create(std::int64_t n,
                                                const PrivacyBudget& budget,
                                                std::uint64_t seed);

  absl::StatusOr<double> Step(int bit);

  std::int64_t horizon() const { return horizon_; }
  std::int64_t round() const { return round_; }
  // Indexed by post-order node, see PostOrderIndex().
  const std::vector<double>& node_noise() const { return node_noise_; }

 private:
  BinaryMechanism() = default;

  std::int64_t horizon_ = 0;
  std::int64_t round_ = 0;
  std::vector<double> node_noise_;
  std::vector<std::int64_t> psums_;
  std::vector<double> noisy_psums_;
};

absl::StatusOr<NoisyOutput> BinaryMechanismRun(std::span<const int> bits,
                                               const PrivacyBudget& budget,
                                               std::uint64_t seed);

absl::StatusOr<NoisyOutput> SqrtCounterRun(std::span<const int> bits,
                                           const PrivacyBudget& budget,
                                           std::uint64_t seed);

// Generic matrix mechanism L (R x + z) with z ~ N(0, C^2 ||R||_{1->2}^2 I)
// drawn in order from GaussianSampler(seed). x must have length fact.n().
absl::StatusOr<NoisyOutput> MatrixMechanismRun(const Factorization& fact,
                                               std::span<const int> bits,
                                               const PrivacyBudget& budget,
                                               std::uint64_t seed);

enum class MechanismKind { kFactorization, kBinary, kHonaker };

absl::StatusOr<MechanismKind> ParseMechanismKind(absl::string_view name);
absl::string_view MechanismKindName(MechanismKind kind);

struct MseEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo estimate of (1/n) E ||a - M_count x||^2.
//
// The noise of every mechanism here is independent of the input, so x is
// fixed to the all-zero stream. Trial i is seeded with seed + i and the
// per-trial errors are summed in trial order, so the result does not depend
// on `threads`.
absl::StatusOr<MseEstimate> MonteCarloMse(MechanismKind kind, std::int64_t n,
                                          std::int64_t trials,
                                          const PrivacyBudget& budget,
                                          std::uint64_t seed, int threads = 1);

}  // namespace contcount

#endif  // CONTCOUNT_MECHANISM_H_
