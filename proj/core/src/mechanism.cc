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

#include "contcount/mechanism.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "contcount/gaussian_sampler.h"
#include "contcount/linalg.h"
#include "contcount/streaming_counter.h"

namespace contcount {
namespace {

absl::Status CheckBits(std::span<const int> bits) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "stream value at position ", i + 1, " is ", bits[i],
          ", expected 0 or 1"));
    }
  }
  return absl::OkStatus();
}

template <typename Counter>
absl::StatusOr<NoisyOutput> Drive(Counter& counter, std::span<const int> bits) {
  NoisyOutput out;
  out.reserve(bits.size());
  for (int bit : bits) {
    auto a = counter.Step(bit);
    if (!a.ok()) return a.status();
    out.push_back(*a);
  }
  return out;
}

double MeanSquare(std::span<const double> v) {
  double total = 0.0;
  for (double x : v) total += x * x;
  return total / static_cast<double>(v.size());
}

}  // namespace

absl::StatusOr<BinaryMechanism> BinaryMechanism::Create(
    std::int64_t n, const PrivacyBudget& budget, std::uint64_t seed) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("horizon must be at least 1, got ", n));
  }
  const std::int64_t padded = PaddedHorizon(n);
  const int levels = std::countr_zero(static_cast<std::uint64_t>(padded));
  const double stddev =
      budget.noise_multiplier() * std::sqrt(BinaryRightColumnNormSq(n));

  BinaryMechanism mech;
  mech.horizon_ = n;
  GaussianSampler sampler(seed);
  mech.node_noise_ = sampler.StandardNormals(2 * padded - 1);
  for (double& v : mech.node_noise_) v *= stddev;
  mech.psums_.assign(levels + 1, 0);
  mech.noisy_psums_.assign(levels + 1, 0.0);
  return mech;
}

absl::StatusOr<double> BinaryMechanism::Step(int bit) {
  if (round_ >= horizon_) {
    return absl::FailedPreconditionError(
        absl::StrCat("horizon of ", horizon_, " rounds exhausted"));
  }
  if (bit != 0 && bit != 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("stream values must be 0 or 1, got ", bit));
  }
  const std::uint64_t t = static_cast<std::uint64_t>(++round_);
  const int level = std::countr_zero(t);

  // The node closing at t absorbs every lower-level p-sum.
  std::int64_t psum = bit;
  for (int j = 0; j < level; ++j) {
    psum += psums_[j];
    psums_[j] = 0;
    noisy_psums_[j] = 0.0;
  }
  psums_[level] = psum;
  noisy_psums_[level] =
      static_cast<double>(psum) + node_noise_[PostOrderIndex(t - 1, level)];

  double out = 0.0;
  for (std::size_t j = 0; j < noisy_psums_.size(); ++j) {
    if ((t >> j) & 1) out += noisy_psums_[j];
  }
  return out;
}

absl::StatusOr<NoisyOutput> BinaryMechanismRun(std::span<const int> bits,
                                               const PrivacyBudget& budget,
                                               std::uint64_t seed) {
  if (auto status = CheckBits(bits); !status.ok()) return status;
  auto mech = BinaryMechanism::Create(bits.size(), budget, seed);
  if (!mech.ok()) return mech.status();
  return Drive(*mech, bits);
}

absl::StatusOr<NoisyOutput> SqrtCounterRun(std::span<const int> bits,
                                           const PrivacyBudget& budget,
                                           std::uint64_t seed) {
  if (auto status = CheckBits(bits); !status.ok()) return status;
  auto counter = StreamingCounter::Create(bits.size(), budget, seed);
  if (!counter.ok()) return counter.status();
  return Drive(*counter, bits);
}

absl::StatusOr<NoisyOutput> MatrixMechanismRun(const Factorization& fact,
                                               std::span<const int> bits,
                                               const PrivacyBudget& budget,
                                               std::uint64_t seed) {
  if (static_cast<std::int64_t>(bits.size()) != fact.n()) {
    return absl::InvalidArgumentError(
        absl::StrCat("stream has ", bits.size(), " values but the "
                     "factorization expects ", fact.n()));
  }
  if (auto status = CheckBits(bits); !status.ok()) return status;

  std::vector<double> x(bits.begin(), bits.end());
  std::vector<double> strategy = MatVec(fact.right(), x);
  const double stddev =
      budget.noise_multiplier() * ColumnNorm1To2(fact.right());
  GaussianSampler sampler(seed);
  for (double& v : strategy) v += stddev * sampler.NextStandardNormal();
  return MatVec(fact.left(), strategy);
}

absl::StatusOr<MechanismKind> ParseMechanismKind(absl::string_view name) {
  if (name == "factorization") return MechanismKind::kFactorization;
  if (name == "binary") return MechanismKind::kBinary;
  if (name == "honaker") return MechanismKind::kHonaker;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", name,
      "', expected factorization, binary or honaker"));
}

absl::string_view MechanismKindName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kFactorization:
      return "factorization";
    case MechanismKind::kBinary:
      return "binary";
    case MechanismKind::kHonaker:
      return "honaker";
  }
  return "unknown";
}

absl::StatusOr<MseEstimate> MonteCarloMse(MechanismKind kind, std::int64_t n,
                                          std::int64_t trials,
                                          const PrivacyBudget& budget,
                                          std::uint64_t seed, int threads) {
  if (n < 1) return absl::InvalidArgumentError("horizon must be at least 1");
  if (trials < 1) {
    return absl::InvalidArgumentError("need at least one Monte-Carlo trial");
  }
  std::optional<Factorization> honaker;
  if (kind == MechanismKind::kHonaker) {
    auto fact = HonakerFactorization(n);
    if (!fact.ok()) return fact.status();
    honaker = *std::move(fact);
  }
  const std::vector<int> zeros(n, 0);

  auto run_trial = [&](std::int64_t i) -> absl::StatusOr<double> {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(i);
    absl::StatusOr<NoisyOutput> out;
    switch (kind) {
      case MechanismKind::kFactorization:
        out = SqrtCounterRun(zeros, budget, trial_seed);
        break;
      case MechanismKind::kBinary:
        out = BinaryMechanismRun(zeros, budget, trial_seed);
        break;
      case MechanismKind::kHonaker:
        out = MatrixMechanismRun(*honaker, zeros, budget, trial_seed);
        break;
    }
    if (!out.ok()) return out.status();
    return MeanSquare(*out);
  };

  std::vector<double> errors(trials, 0.0);
  std::vector<absl::Status> failures(std::max(threads, 1));
  const int workers =
      static_cast<int>(std::clamp<std::int64_t>(threads, 1, trials));
  auto work = [&](int worker) {
    for (std::int64_t i = worker; i < trials; i += workers) {
      auto e = run_trial(i);
      if (!e.ok()) {
        failures[worker] = e.status();
        return;
      }
      errors[i] = *e;
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& status : failures) {
    if (!status.ok()) return status;
  }

  double mean = 0.0;
  for (double e : errors) mean += e;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  if (trials > 1) {
    for (double e : errors) var += (e - mean) * (e - mean);
    var /= static_cast<double>(trials - 1);
  }
  return MseEstimate{mean, std::sqrt(var / static_cast<double>(trials))};
}

}  // namespace contcount
