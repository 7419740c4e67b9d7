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

#ifndef CONTCOUNT_FTRL_H_
#define CONTCOUNT_FTRL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "contcount/logistic_task.h"
#include "contcount/privacy_budget.h"

namespace contcount {

// g if ||g||_2 <= kappa, else g * kappa / ||g||_2.
std::vector<double> Clip(std::span<const double> g, double kappa);

// Regularization strength minimizing the regret bound, with the ball radius
// D standing in for ||theta_opt||:
//   sqrt(2 n (1 + ln(4n/5) / pi) (kappa^2 + kappa C sqrt(d))) / D.
absl::StatusOr<double> LambdaStar(std::int64_t n, double kappa, int d,
                                  const PrivacyBudget& budget, double radius);

// Expected regret bound of DP-FTRL run with LambdaStar:
//   D sqrt((1 + ln(4n/5) / pi) (kappa^2 + kappa C sqrt(d)) / (2 n)).
absl::StatusOr<double> RegretBound(std::int64_t n, double kappa, int d,
                                   const PrivacyBudget& budget, double radius);

struct FtrlConfig {
  std::int64_t horizon = 0;
  int dim = 0;
  double kappa = 1.0;
  double radius = 1.0;
  // 0 selects LambdaStar.
  double lambda = 0.0;
  std::uint64_t noise_seed = 0;
};

// Follow-the-regularized-leader with l2 regularization whose gradient prefix
// sums are released by the square-root factorization counter.
//
// The n x d noise matrix is drawn at construction. Coordinate j takes n
// standard normals g_j (coordinates in order, from one GaussianSampler) and
// row t receives C kappa ||R(t)||_{1->2} (L g_j)[t]. Step t then costs O(d).
//
// Single owner; not safe for concurrent use.
class DpFtrl {
 public:
  static absl::StatusOr<DpFtrl> Create(const FtrlConfig& config,
                                       const PrivacyBudget& budget);

  // Current iterate theta_t; theta_1 = 0.
  const std::vector<double>& Theta() const { return theta_; }

  // Takes the gradient of the round-t loss at Theta(), clips it, and moves
  // to theta_{t+1} = Proj_D(-(sum of clipped gradients + noise[t]) / lambda).
  // kFailedPrecondition past the horizon, kInvalidArgument on a wrong-sized
  // or non-finite gradient.
  absl::StatusOr<std::vector<double>> Step(std::span<const double> gradient);

  std::int64_t round() const { return round_; }
  double lambda() const { return lambda_; }
  const FtrlConfig& config() const { return config_; }
  // Row-major horizon x dim.
  const std::vector<double>& noise() const { return noise_; }
  double last_clipped_norm() const { return last_clipped_norm_; }

 private:
  DpFtrl() = default;

  FtrlConfig config_;
  double lambda_ = 0.0;
  std::int64_t round_ = 0;
  std::vector<double> grad_prefix_;
  std::vector<double> noise_;
  std::vector<double> theta_;
  double last_clipped_norm_ = 0.0;
};

struct RegretReport {
  double avg_loss = 0.0;
  double opt_loss = 0.0;
  double regret = 0.0;  // avg_loss - opt_loss
  double bound = 0.0;
};

// Average incurred loss against the average loss of the comparator over the
// same rounds. Spans must have equal, non-zero length.
absl::StatusOr<RegretReport> ComputeRegret(std::span<const double> incurred,
                                           std::span<const double> comparator,
                                           double bound);

struct FtrlRun {
  std::vector<std::vector<double>> thetas;  // theta_1 .. theta_n
  OracleResult optimum;
  RegretReport report;
};

// Plays DP-FTRL on `task` in stream order and measures regret against the
// best point of the radius-D ball. config.horizon and config.dim must match
// the task.
absl::StatusOr<FtrlRun> RunDpFtrl(const LogisticTask& task,
                                  const FtrlConfig& config,
                                  const PrivacyBudget& budget);

// Seed of the noise stream for a task generated from `task_seed`, so that
// data and noise are independent draws.
std::uint64_t NoiseSeedForTask(std::uint64_t task_seed);

}  // namespace contcount

#endif  // CONTCOUNT_FTRL_H_
