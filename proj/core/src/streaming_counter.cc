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

#include "contcount/streaming_counter.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "contcount/factorization.h"
#include "contcount/gaussian_sampler.h"
#include "contcount/linalg.h"

namespace contcount {

double SqrtFactorizationNoiseScale(std::int64_t n,
                                   const PrivacyBudget& budget) {
  // ||R||_{1->2}^2 is the squared norm of the first column, sum_k f(k)^2.
  double col = 0.0;
  double f = 1.0;
  for (std::int64_t k = 0; k < n; ++k) {
    if (k > 0) f *= 1.0 - 1.0 / (2.0 * static_cast<double>(k));
    col += f * f;
  }
  return budget.noise_multiplier() * std::sqrt(col);
}

absl::StatusOr<StreamingCounter> StreamingCounter::Create(
    std::int64_t n, const PrivacyBudget& budget, std::uint64_t seed) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("horizon must be at least 1, got ", n));
  }
  GaussianSampler sampler(seed);
  std::vector<double> g = sampler.StandardNormals(n);
  return CreateFromStandardNormals(budget, g);
}

absl::StatusOr<StreamingCounter> StreamingCounter::CreateFromStandardNormals(
    const PrivacyBudget& budget, std::span<const double> standard_normals) {
  const std::int64_t n = static_cast<std::int64_t>(standard_normals.size());
  if (n < 1) return absl::InvalidArgumentError("horizon must be at least 1");

  auto factor = SqrtCoefficients(n);
  if (!factor.ok()) return factor.status();

  StreamingCounter counter;
  counter.noise_scale_ = SqrtFactorizationNoiseScale(n, budget);
  std::vector<double> scaled(standard_normals.begin(), standard_normals.end());
  for (double& v : scaled) v *= counter.noise_scale_;

  absl::StatusOr<std::vector<double>> noise;
  if (n <= kDirectToeplitzMaxHorizon) {
    noise = ToeplitzLowerMatVec(factor->coeffs, scaled);
    counter.preprocessing_multiply_adds_ =
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n + 1) / 2;
  } else {
    noise = ToeplitzLowerMatVecFft(factor->coeffs, scaled);
    counter.used_fft_ = true;
  }
  if (!noise.ok()) return noise.status();
  counter.noise_ = *std::move(noise);
  return counter;
}

absl::StatusOr<double> StreamingCounter::Step(int bit) {
  if (round_ >= horizon()) {
    return absl::FailedPreconditionError(
        absl::StrCat("horizon of ", horizon(), " rounds exhausted"));
  }
  if (bit != 0 && bit != 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("stream values must be 0 or 1, got ", bit));
  }
  running_sum_ += bit;
  return static_cast<double>(running_sum_) + noise_[round_++];
}

}  // namespace contcount
