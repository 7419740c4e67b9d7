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

#include "contcount/ftrl.h"

#include <cmath>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "contcount/factorization.h"
#include "contcount/gaussian_sampler.h"
#include "contcount/linalg.h"
#include "contcount/streaming_counter.h"

namespace contcount {
namespace {

absl::Status CheckBoundArgs(std::int64_t n, double kappa, int d,
                            double radius) {
  if (n < 1) return absl::InvalidArgumentError("horizon must be at least 1");
  if (d < 1) return absl::InvalidArgumentError("dimension must be at least 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    return absl::InvalidArgumentError("kappa must be positive and finite");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError("radius must be positive and finite");
  }
  return absl::OkStatus();
}

// (1 + ln(4n/5) / pi) (kappa^2 + kappa C sqrt(d)).
double BoundCore(std::int64_t n, double kappa, int d,
                 const PrivacyBudget& budget) {
  const double log_term =
      1.0 + std::log(4.0 * static_cast<double>(n) / 5.0) / std::numbers::pi;
  return log_term * (kappa * kappa + kappa * budget.noise_multiplier() *
                                         std::sqrt(static_cast<double>(d)));
}

}  // namespace

std::vector<double> Clip(std::span<const double> g, double kappa) {
  double sq = 0.0;
  for (double v : g) sq += v * v;
  const double norm = std::sqrt(sq);
  std::vector<double> out(g.begin(), g.end());
  if (norm > kappa) {
    const double scale = kappa / norm;
    for (double& v : out) v *= scale;
  }
  return out;
}

absl::StatusOr<double> LambdaStar(std::int64_t n, double kappa, int d,
                                  const PrivacyBudget& budget, double radius) {
  if (auto s = CheckBoundArgs(n, kappa, d, radius); !s.ok()) return s;
  return std::sqrt(2.0 * static_cast<double>(n) * BoundCore(n, kappa, d, budget)) /
         radius;
}

absl::StatusOr<double> RegretBound(std::int64_t n, double kappa, int d,
                                   const PrivacyBudget& budget, double radius) {
  if (auto s = CheckBoundArgs(n, kappa, d, radius); !s.ok()) return s;
  return radius *
         std::sqrt(BoundCore(n, kappa, d, budget) / (2.0 * static_cast<double>(n)));
}

absl::StatusOr<DpFtrl> DpFtrl::Create(const FtrlConfig& config,
                                      const PrivacyBudget& budget) {
  if (auto s = CheckBoundArgs(config.horizon, config.kappa, config.dim,
                              config.radius);
      !s.ok()) {
    return s;
  }
  DpFtrl ftrl;
  ftrl.config_ = config;
  if (config.lambda == 0.0) {
    auto lambda = LambdaStar(config.horizon, config.kappa, config.dim, budget,
                             config.radius);
    if (!lambda.ok()) return lambda.status();
    ftrl.lambda_ = *lambda;
  } else if (config.lambda > 0.0 && std::isfinite(config.lambda)) {
    ftrl.lambda_ = config.lambda;
  } else {
    return absl::InvalidArgumentError("lambda must be positive and finite");
  }

  const std::int64_t n = config.horizon;
  const int d = config.dim;
  ftrl.noise_.assign(n * d, 0.0);
  if (!budget.is_noise_free()) {
    auto factor = SqrtCoefficients(n);
    if (!factor.ok()) return factor.status();
    const std::vector<double> row_norm_sq = FactorRowNormSqTable(*factor);
    GaussianSampler sampler(config.noise_seed);
    for (int j = 0; j < d; ++j) {
      const std::vector<double> g = sampler.StandardNormals(n);
      auto z = n > kDirectToeplitzMaxHorizon
                   ? ToeplitzLowerMatVecFft(factor->coeffs, g)
                   : ToeplitzLowerMatVec(factor->coeffs, g);
      if (!z.ok()) return z.status();
      for (std::int64_t t = 0; t < n; ++t) {
        ftrl.noise_[t * d + j] = budget.noise_multiplier() * config.kappa *
                                 std::sqrt(row_norm_sq[t]) * (*z)[t];
      }
    }
  }
  ftrl.grad_prefix_.assign(d, 0.0);
  ftrl.theta_.assign(d, 0.0);
  return ftrl;
}

absl::StatusOr<std::vector<double>> DpFtrl::Step(
    std::span<const double> gradient) {
  if (round_ >= config_.horizon) {
    return absl::FailedPreconditionError(
        absl::StrCat("horizon ", config_.horizon, " exhausted"));
  }
  const int d = config_.dim;
  if (static_cast<int>(gradient.size()) != d) {
    return absl::InvalidArgumentError(absl::StrCat(
        "gradient has dimension ", gradient.size(), ", expected ", d));
  }
  for (double v : gradient) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("gradient is not finite");
    }
  }
  const std::vector<double> clipped = Clip(gradient, config_.kappa);
  double sq = 0.0;
  for (int j = 0; j < d; ++j) {
    grad_prefix_[j] += clipped[j];
    sq += clipped[j] * clipped[j];
  }
  last_clipped_norm_ = std::sqrt(sq);
  for (int j = 0; j < d; ++j) {
    theta_[j] = -(grad_prefix_[j] + noise_[round_ * d + j]) / lambda_;
  }
  ProjectToBall(theta_, config_.radius);
  ++round_;
  return theta_;
}

absl::StatusOr<RegretReport> ComputeRegret(std::span<const double> incurred,
                                           std::span<const double> comparator,
                                           double bound) {
  if (incurred.empty() || incurred.size() != comparator.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("loss sequences have lengths ", incurred.size(), " and ",
                     comparator.size()));
  }
  RegretReport report;
  for (double v : incurred) report.avg_loss += v;
  for (double v : comparator) report.opt_loss += v;
  report.avg_loss /= static_cast<double>(incurred.size());
  report.opt_loss /= static_cast<double>(comparator.size());
  report.regret = report.avg_loss - report.opt_loss;
  report.bound = bound;
  return report;
}

absl::StatusOr<FtrlRun> RunDpFtrl(const LogisticTask& task,
                                  const FtrlConfig& config,
                                  const PrivacyBudget& budget) {
  if (config.horizon != task.size() || config.dim != task.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "config is ", config.horizon, "x", config.dim, " but task is ",
        task.size(), "x", task.dim()));
  }
  auto ftrl = DpFtrl::Create(config, budget);
  if (!ftrl.ok()) return ftrl.status();
  auto optimum = task.Optimum(config.radius);
  if (!optimum.ok()) return optimum.status();
  auto bound = RegretBound(config.horizon, config.kappa, config.dim, budget,
                           config.radius);
  if (!bound.ok()) return bound.status();

  FtrlRun run;
  run.thetas.reserve(config.horizon);
  std::vector<double> incurred(config.horizon);
  std::vector<double> comparator(config.horizon);
  for (std::int64_t t = 0; t < config.horizon; ++t) {
    const LabeledPoint& point = task.point(t);
    run.thetas.push_back(ftrl->Theta());
    incurred[t] = LogisticLoss(ftrl->Theta(), point);
    comparator[t] = LogisticLoss(optimum->theta, point);
    auto next = ftrl->Step(LogisticGradient(ftrl->Theta(), point));
    if (!next.ok()) return next.status();
  }
  auto report = ComputeRegret(incurred, comparator, *bound);
  if (!report.ok()) return report.status();
  run.optimum = *std::move(optimum);
  run.report = *report;
  return run;
}

std::uint64_t NoiseSeedForTask(std::uint64_t task_seed) {
  return MixSeed(task_seed);
}

}  // namespace contcount
