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
#include "contcount/logistic_task.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "contcount/gaussian_sampler.h"

namespace contcount {
namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

// ln(1 + exp(-m)) without overflow.
double Softplus(double minus_margin) {
  if (minus_margin > 0) {
    return minus_margin + std::log1p(std::exp(-minus_margin));
  }
  return std::log1p(std::exp(minus_margin));
}

// 1 / (1 + exp(m)).
double SigmoidOfNegative(double m) {
  if (m >= 0) {
    const double e = std::exp(-m);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(m));
}

std::vector<double> UniformInBall(GaussianSampler& sampler, int d) {
  std::vector<double> v = sampler.StandardNormals(d);
  const double norm = Norm(v);
  const double radius = std::pow(sampler.NextOpenUniform(), 1.0 / d);
  for (double& c : v) c *= radius / norm;
  return v;
}

}  // namespace

void ProjectToBall(std::span<double> v, double radius) {
  const double norm = Norm(v);
  if (norm > radius) {
    for (double& c : v) c *= radius / norm;
  }
}

double LogisticLoss(std::span<const double> theta, const LabeledPoint& point) {
  return Softplus(-point.y * Dot(theta, point.x));
}

std::vector<double> LogisticGradient(std::span<const double> theta,
                                     const LabeledPoint& point) {
  const double scale = -point.y * SigmoidOfNegative(point.y * Dot(theta, point.x));
  std::vector<double> g(point.x.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = scale * point.x[i];
  return g;
}

absl::StatusOr<LogisticTask> LogisticTask::Generate(
    std::int64_t n, int d, std::uint64_t seed,
    const LogisticTaskOptions& options) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  if (d < 1) return absl::InvalidArgumentError("d must be at least 1");
  if (options.separable && !(options.margin >= 0.0 && options.margin < 0.5)) {
    return absl::InvalidArgumentError("margin must lie in [0, 0.5)");
  }
  GaussianSampler sampler(seed);
  std::vector<double> w = sampler.StandardNormals(d);
  const double w_norm = Norm(w);
  for (double& c : w) c /= w_norm;

  std::vector<LabeledPoint> points;
  points.reserve(n);
  while (static_cast<std::int64_t>(points.size()) < n) {
    LabeledPoint p;
    p.x = UniformInBall(sampler, d);
    const double score = Dot(w, p.x);
    if (options.separable) {
      if (std::abs(score) < options.margin) continue;
      p.y = score > 0 ? 1 : -1;
    } else {
      const double prob = SigmoidOfNegative(-options.label_scale * score);
      p.y = sampler.NextOpenUniform() < prob ? 1 : -1;
    }
    points.push_back(std::move(p));
  }
  return LogisticTask(d, std::move(points));
}

absl::StatusOr<LogisticTask> LogisticTask::FromPoints(
    std::vector<LabeledPoint> points) {
  if (points.empty()) return absl::InvalidArgumentError("no points");
  const std::size_t d = points.front().x.size();
  if (d == 0) return absl::InvalidArgumentError("points have dimension 0");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const LabeledPoint& p = points[i];
    if (p.x.size() != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " has dimension ", p.x.size(),
                       ", expected ", d));
    }
    if (p.y != 1 && p.y != -1) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " has label ", p.y));
    }
    const double norm = Norm(p.x);
    if (!std::isfinite(norm) || norm > 1.0 + 1e-12) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " lies outside the unit ball"));
    }
  }
  return LogisticTask(static_cast<int>(d), std::move(points));
}

double LogisticTask::AverageLoss(std::span<const double> theta) const {
  double total = 0.0;
  for (const LabeledPoint& p : points_) total += LogisticLoss(theta, p);
  return total / static_cast<double>(points_.size());
}

std::vector<double> LogisticTask::AverageGradient(
    std::span<const double> theta) const {
  std::vector<double> g(dim_, 0.0);
  for (const LabeledPoint& p : points_) {
    const double scale = -p.y * SigmoidOfNegative(p.y * Dot(theta, p.x));
    for (int i = 0; i < dim_; ++i) g[i] += scale * p.x[i];
  }
  for (double& c : g) c /= static_cast<double>(points_.size());
  return g;
}

absl::StatusOr<OracleResult> LogisticTask::Optimum(
    double radius, double tolerance, std::int64_t max_iterations) const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError("radius must be positive and finite");
  }
  // The Hessian of each loss term is bounded by x x^T / 4.
  const double step = 4.0;

  auto projected_step = [&](std::span<const double> at, double scale) {
    std::vector<double> g = AverageGradient(at);
    std::vector<double> next(at.begin(), at.end());
    for (int i = 0; i < dim_; ++i) next[i] -= scale * g[i];
    ProjectToBall(next, radius);
    return next;
  };
  auto stationarity = [&](std::span<const double> at) {
    std::vector<double> next = projected_step(at, 1.0);
    double sq = 0.0;
    for (int i = 0; i < dim_; ++i) sq += (at[i] - next[i]) * (at[i] - next[i]);
    return std::sqrt(sq);
  };

  OracleResult result;
  std::vector<double> x(dim_, 0.0);
  std::vector<double> y = x;
  double momentum = 1.0;
  double loss = AverageLoss(x);
  for (std::int64_t it = 0; it < max_iterations; ++it) {
    const double residual = stationarity(x);
    if (residual <= tolerance) {
      result.converged = true;
      result.projected_gradient_norm = residual;
      result.iterations = it;
      break;
    }
    std::vector<double> next = projected_step(y, step);
    const double next_loss = AverageLoss(next);
    if (next_loss > loss) {
      // Restart: drop momentum and take a plain step from x.
      momentum = 1.0;
      y = x;
      next = projected_step(x, step);
    }
    const double next_momentum =
        0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double beta = (momentum - 1.0) / next_momentum;
    for (int i = 0; i < dim_; ++i) y[i] = next[i] + beta * (next[i] - x[i]);
    momentum = next_momentum;
    x = std::move(next);
    loss = AverageLoss(x);
    result.iterations = it + 1;
  }
  if (!result.converged) result.projected_gradient_norm = stationarity(x);
  result.theta = std::move(x);
  result.loss = AverageLoss(result.theta);
  return result;
}

}  // namespace contcount
