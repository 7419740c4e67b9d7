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

#include "contcount/privacy_budget.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace contcount {

absl::StatusOr<double> NoiseMultiplier(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  const double log_term =
      std::log(std::sqrt(2.0 / std::numbers::pi) / delta);
  return (2.0 / epsilon) * std::sqrt(4.0 / 9.0 + log_term);
}

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta,
                                                    bool allow_large_epsilon) {
  if (epsilon > 1.0 && !allow_large_epsilon) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be at most 1 (got ", epsilon,
        "); pass allow_large_epsilon for exploratory runs"));
  }
  auto multiplier = NoiseMultiplier(epsilon, delta);
  if (!multiplier.ok()) return multiplier.status();
  return PrivacyBudget(epsilon, delta, *multiplier);
}

PrivacyBudget PrivacyBudget::NoiseFree() {
  return PrivacyBudget(std::numeric_limits<double>::infinity(), 0.0, 0.0);
}

}  // namespace contcount
