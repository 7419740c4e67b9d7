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
#ifndef CONTCOUNT_LOGISTIC_TASK_H_
#define CONTCOUNT_LOGISTIC_TASK_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace contcount {

struct LabeledPoint {
  std::vector<double> x;  // ||x||_2 <= 1
  int y = 1;              // +1 or -1
};

// Logistic loss ln(1 + exp(-y <theta, x>)). With ||x|| <= 1 it is convex and
// 1-Lipschitz in theta.
double LogisticLoss(std::span<const double> theta, const LabeledPoint& point);
std::vector<double> LogisticGradient(std::span<const double> theta,
                                     const LabeledPoint& point);

struct LogisticTaskOptions {
  // When set, labels are sign(<w, x>) for a hidden unit vector w and points
  // with |<w, x>| < margin are redrawn. Otherwise labels are drawn with
  // P(y = 1) = 1 / (1 + exp(-label_scale <w, x>)).
  bool separable = false;
  double margin = 0.1;
  double label_scale = 4.0;
};

struct OracleResult {
  std::vector<double> theta;
  double loss = 0.0;  // average loss at theta
  // ||theta - Proj(theta - grad)||_2, zero exactly at a constrained optimum.
  double projected_gradient_norm = 0.0;
  std::int64_t iterations = 0;
  bool converged = false;
};

// A stream of n labeled points in dimension d.
class LogisticTask {
 public:
  // Points are uniform in the unit ball. Deterministic in seed.
  static absl::StatusOr<LogisticTask> Generate(
      std::int64_t n, int d, std::uint64_t seed,
      const LogisticTaskOptions& options = {});
  // Rejects empty input, mixed dimensions, ||x|| > 1 and labels other than
  // +-1.
  static absl::StatusOr<LogisticTask> FromPoints(
      std::vector<LabeledPoint> points);

  std::int64_t size() const { return static_cast<std::int64_t>(points_.size()); }
  int dim() const { return dim_; }
  const LabeledPoint& point(std::int64_t t) const { return points_[t]; }
  const std::vector<LabeledPoint>& points() const { return points_; }

  double AverageLoss(std::span<const double> theta) const;
  std::vector<double> AverageGradient(std::span<const double> theta) const;

  // Minimizes AverageLoss over the radius-D ball with accelerated projected
  // gradient descent (adaptive restart) until the projected-gradient norm is
  // at most `tolerance` or `max_iterations` is reached.
  absl::StatusOr<OracleResult> Optimum(double radius,
                                       double tolerance = 1e-8,
                                       std::int64_t max_iterations =
                                           1'000'000) const;

 private:
  LogisticTask(int dim, std::vector<LabeledPoint> points)
      : dim_(dim), points_(std::move(points)) {}

  int dim_ = 0;
  std::vector<LabeledPoint> points_;
};

// Euclidean projection onto the ball of the given radius, in place.
void ProjectToBall(std::span<double> v, double radius);

}  // namespace contcount

#endif  // CONTCOUNT_LOGISTIC_TASK_H_
