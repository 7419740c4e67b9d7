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

#ifndef CONTCOUNT_PRIVACY_BUDGET_H_
#define CONTCOUNT_PRIVACY_BUDGET_H_

#include "absl/status/statusor.h"

namespace contcount {

// Gaussian-mechanism noise multiplier
//   C(eps, delta) = (2 / eps) * sqrt(4/9 + ln(sqrt(2/pi) / delta)).
// Adding N(0, C^2 * s^2) noise to a query of l2-sensitivity s is
// (eps, delta)-DP. Requires eps > 0 and 0 < delta < 1.
absl::StatusOr<double> NoiseMultiplier(double epsilon, double delta);

// An (epsilon, delta) pair together with its noise multiplier.
//
// Create() enforces 0 < epsilon <= 1 and 0 < delta < 1, the range for which
// the multiplier is known to give (epsilon, delta)-DP. Exploratory runs may
// opt into epsilon > 1 with `allow_large_epsilon`.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta,
                                              bool allow_large_epsilon = false);

  // A budget whose noise multiplier is zero. Mechanisms run with it release
  // exact answers; it exists for tests and for the CLI's --no-noise mode and
  // carries no privacy guarantee.
  static PrivacyBudget NoiseFree();

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  double noise_multiplier() const { return noise_multiplier_; }
  bool is_noise_free() const { return noise_multiplier_ == 0.0; }

 private:
  PrivacyBudget(double epsilon, double delta, double noise_multiplier)
      : epsilon_(epsilon),
        delta_(delta),
        noise_multiplier_(noise_multiplier) {}

  double epsilon_;
  double delta_;
  double noise_multiplier_;
};

}  // namespace contcount

#endif  // CONTCOUNT_PRIVACY_BUDGET_H_
