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

#ifndef CONTCOUNT_STREAMING_COUNTER_H_
#define CONTCOUNT_STREAMING_COUNTER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "contcount/privacy_budget.h"

namespace contcount {

// Horizons above this use FFT convolution for the one-off noise transform.
inline constexpr std::int64_t kDirectToeplitzMaxHorizon = 4096;

// Continual counter backed by the square-root Toeplitz factorization.
//
// All randomness is drawn once at construction: g ~ N(0, I_n) is scaled by
// C * ||R||_{1->2} and pushed through L, giving z = L g with covariance
// C^2 ||R||_{1->2}^2 L L^T. Round t then releases the running count plus
// z[t], so Step() is O(1) and the released vector equals M_count x + z.
//
// A StreamingCounter has a single owner; Step() must not be called
// concurrently. It can be moved between threads between calls.
class StreamingCounter {
 public:
  static absl::StatusOr<StreamingCounter> Create(std::int64_t n,
                                                 const PrivacyBudget& budget,
                                                 std::uint64_t seed);

  // Uses the caller's standard normals instead of sampling; n = size of g.
  static absl::StatusOr<StreamingCounter> CreateFromStandardNormals(
      const PrivacyBudget& budget, std::span<const double> standard_normals);

  // Consumes one bit and returns the noisy prefix count.
  // kFailedPrecondition once the horizon is exhausted, kInvalidArgument for a
  // value other than 0 or 1.
  absl::StatusOr<double> Step(int bit);

  std::int64_t horizon() const { return static_cast<std::int64_t>(noise_.size()); }
  std::int64_t round() const { return round_; }
  std::int64_t running_sum() const { return running_sum_; }
  const std::vector<double>& noise() const { return noise_; }
  double noise_scale() const { return noise_scale_; }

  // Multiply-adds spent on the noise transform. n(n+1)/2 on the direct path;
  // 0 when the FFT path was used.
  std::uint64_t preprocessing_multiply_adds() const {
    return preprocessing_multiply_adds_;
  }
  bool used_fft() const { return used_fft_; }

 private:
  StreamingCounter() = default;

  std::vector<double> noise_;
  std::int64_t round_ = 0;
  std::int64_t running_sum_ = 0;
  double noise_scale_ = 0.0;
  std::uint64_t preprocessing_multiply_adds_ = 0;
  bool used_fft_ = false;
};

// C * ||R(n)||_{1->2} for the square-root factorization of horizon n.
double SqrtFactorizationNoiseScale(std::int64_t n, const PrivacyBudget& budget);

}  // namespace contcount

#endif  // CONTCOUNT_STREAMING_COUNTER_H_
