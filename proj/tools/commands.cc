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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "contcount/certificates.h"
#include "contcount/factorization.h"
#include "contcount/ftrl.h"
#include "contcount/gaussian_sampler.h"
#include "contcount/linalg.h"
#include "contcount/logistic_task.h"
#include "contcount/mechanism.h"
#include "contcount/privacy_budget.h"
#include "contcount/workload.h"

namespace contcount::cli {
namespace {

// Input-file problems are runtime failures, not usage errors.
absl::Status InputError(const absl::Status& status) {
  return absl::FailedPreconditionError(status.message());
}

absl::StatusOr<std::vector<int>> ParseBits(const std::string& text) {
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  std::vector<int> bits;
  bits.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    absl::string_view line = absl::StripSuffix(lines[i], "\r");
    if (line == "0") {
      bits.push_back(0);
    } else if (line == "1") {
      bits.push_back(1);
    } else {
      return absl::FailedPreconditionError(absl::StrCat(
          "line ", i + 1, ": expected 0 or 1, got \"", line, "\""));
    }
  }
  if (bits.empty()) return absl::FailedPreconditionError("empty bit stream");
  return bits;
}

absl::StatusOr<std::vector<int>> ReadBitsFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open ", path));
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return ParseBits(text);
}

std::vector<int> RandomBits(std::int64_t n, std::uint64_t seed) {
  GaussianSampler sampler(MixSeed(seed));
  std::vector<int> bits(n);
  for (int& b : bits) b = sampler.NextOpenUniform() < 0.5 ? 1 : 0;
  return bits;
}

absl::StatusOr<PrivacyBudget> MakeBudget(double epsilon, double delta,
                                         bool allow_large_epsilon) {
  return PrivacyBudget::Create(epsilon, delta, allow_large_epsilon);
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return 0;
  if (status.code() == absl::StatusCode::kInvalidArgument) return 2;
  return 1;
}

std::string FormatDouble(double value) {
  return absl::StrFormat("%.17g", value);
}

absl::Status RunCoeffs(const CoeffsOptions& options, std::ostream& out) {
  auto factor = SqrtCoefficients(options.n);
  if (!factor.ok()) return factor.status();
  out << "index,value\n";
  for (std::size_t k = 0; k < factor->size(); ++k) {
    out << k << ',' << FormatDouble(factor->coeffs[k]) << '\n';
  }
  return absl::OkStatus();
}

absl::Status RunCount(const CountOptions& options, std::istream& in,
                      std::ostream& out) {
  auto kind = ParseMechanismKind(options.mechanism);
  if (!kind.ok()) return kind.status();
  PrivacyBudget budget = PrivacyBudget::NoiseFree();
  if (!options.no_noise) {
    auto created = MakeBudget(options.epsilon, options.delta,
                              options.allow_large_epsilon);
    if (!created.ok()) return created.status();
    budget = *created;
  }

  std::vector<int> bits;
  if (options.input.has_value() || !options.n.has_value()) {
    absl::StatusOr<std::vector<int>> read;
    if (!options.input.has_value() || *options.input == "-") {
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      read = ParseBits(text);
    } else {
      read = ReadBitsFile(*options.input);
    }
    if (!read.ok()) return InputError(read.status());
    bits = *std::move(read);
    if (options.n.has_value() &&
        *options.n != static_cast<std::int64_t>(bits.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("--n is ", *options.n, " but the input holds ",
                       bits.size(), " bits"));
    }
  } else {
    if (*options.n < 1) {
      return absl::InvalidArgumentError("--n must be at least 1");
    }
    bits = RandomBits(*options.n, options.seed);
  }

  absl::StatusOr<NoisyOutput> noisy;
  switch (*kind) {
    case MechanismKind::kFactorization:
      noisy = SqrtCounterRun(bits, budget, options.seed);
      break;
    case MechanismKind::kBinary:
      noisy = BinaryMechanismRun(bits, budget, options.seed);
      break;
    case MechanismKind::kHonaker: {
      auto fact = HonakerFactorization(static_cast<std::int64_t>(bits.size()));
      if (!fact.ok()) return fact.status();
      noisy = MatrixMechanismRun(*fact, bits, budget, options.seed);
      break;
    }
  }
  if (!noisy.ok()) return noisy.status();

  out << "t,true_count,noisy_count\n";
  std::int64_t running = 0;
  for (std::size_t t = 0; t < bits.size(); ++t) {
    running += bits[t];
    out << t + 1 << ',' << running << ',' << FormatDouble((*noisy)[t]) << '\n';
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<ComparisonRow>> ComparisonTable(
    const CompareOptions& options) {
  if (options.n_max < 1) {
    return absl::InvalidArgumentError("--n-max must be at least 1");
  }
  if (options.epsilons.empty()) {
    return absl::InvalidArgumentError("give at least one epsilon");
  }
  std::vector<ComparisonRow> rows;
  for (double epsilon : options.epsilons) {
    auto budget =
        MakeBudget(epsilon, options.delta, options.allow_large_epsilon);
    if (!budget.ok()) return budget.status();
    for (std::int64_t n = 1; n <= options.n_max; n *= 2) {
      ComparisonRow row;
      row.n = n;
      row.epsilon = epsilon;
      row.delta = options.delta;
      auto upper = ErrUpperBound(n, *budget);
      if (!upper.ok()) return upper.status();
      auto lower = ErrLowerBoundMatrixMechanism(n, *budget);
      if (!lower.ok()) return lower.status();
      row.err_fact_upper = *upper;
      row.err_lower_matrix_mech = *lower;
      row.err_binary_expected = BinaryExpectedMse(n, *budget);
      row.ratio_binary_over_fact = row.err_binary_expected / row.err_fact_upper;
      rows.push_back(row);
      if (n > options.n_max / 2) break;
    }
  }
  return rows;
}

absl::StatusOr<std::optional<std::int64_t>> Crossover(std::int64_t n_max,
                                                      double fact_epsilon,
                                                      double binary_epsilon,
                                                      double delta) {
  auto fact_budget = MakeBudget(fact_epsilon, delta, true);
  if (!fact_budget.ok()) return fact_budget.status();
  auto binary_budget = MakeBudget(binary_epsilon, delta, true);
  if (!binary_budget.ok()) return binary_budget.status();
  for (std::int64_t n = 1; n <= n_max; n *= 2) {
    auto fact = ErrUpperBound(n, *fact_budget);
    if (!fact.ok()) return fact.status();
    if (*fact < BinaryExpectedMse(n, *binary_budget)) {
      return std::optional<std::int64_t>(n);
    }
    if (n > n_max / 2) break;
  }
  return std::optional<std::int64_t>();
}

absl::Status RunCompare(const CompareOptions& options, std::ostream& out,
                        std::ostream& diagnostics) {
  auto rows = ComparisonTable(options);
  if (!rows.ok()) return rows.status();
  out << "n,epsilon,delta,err_fact_upper,err_lower_matrix_mech,"
         "err_binary_expected,ratio_binary_over_fact\n";
  for (const ComparisonRow& row : *rows) {
    out << row.n << ',' << FormatDouble(row.epsilon) << ','
        << FormatDouble(row.delta) << ',' << FormatDouble(row.err_fact_upper)
        << ',' << FormatDouble(row.err_lower_matrix_mech) << ','
        << FormatDouble(row.err_binary_expected) << ','
        << FormatDouble(row.ratio_binary_over_fact) << '\n';
  }

  const double fact_epsilon =
      options.fact_epsilon.value_or(options.epsilons.front());
  const double binary_epsilon =
      options.binary_epsilon.value_or(options.epsilons.back());
  auto crossover =
      Crossover(options.n_max, fact_epsilon, binary_epsilon, options.delta);
  if (!crossover.ok()) return crossover.status();
  diagnostics << absl::StrFormat(
      "crossover: factorization (eps=%g) below binary (eps=%g) ", fact_epsilon,
      binary_epsilon);
  if (crossover->has_value()) {
    const std::int64_t n = **crossover;
    int k = 0;
    while ((std::int64_t{1} << k) < n) ++k;
    diagnostics << "first at n=" << n << " (2^" << k << ")\n";
  } else {
    diagnostics << "not reached for n <= " << options.n_max << "\n";
  }
  return absl::OkStatus();
}

absl::Status RunCertify(const CertifyOptions& options, std::ostream& out,
                        std::ostream& diagnostics) {
  auto matrix = ReadMatrixCsvFile(options.matrix_path);
  if (!matrix.ok()) return InputError(matrix.status());
  auto lower = GammaLower(*matrix);
  if (!lower.ok()) return lower.status();
  const double upper = GammaUpper(*matrix);

  bool feasible = false;
  double objective = 0.0;
  auto cert = BuildSvdCertificate(*matrix);
  if (cert.ok()) {
    auto check = VerifyCertificate(*matrix, *cert);
    if (!check.ok()) return check.status();
    feasible = check->feasible;
    objective = check->objective;
    diagnostics << "certificate min eigenvalue: "
                << FormatDouble(check->min_eigenvalue) << '\n';
  } else {
    diagnostics << "no certificate: " << cert.status().message() << '\n';
  }
  out << "lower,upper,feasible,objective\n"
      << FormatDouble(*lower) << ',' << FormatDouble(upper) << ','
      << (feasible ? "true" : "false") << ',' << FormatDouble(objective)
      << '\n';
  return absl::OkStatus();
}

absl::StatusOr<std::vector<FtrlRow>> FtrlExperiment(
    const FtrlOptions& options) {
  if (options.seeds_count < 1) {
    return absl::InvalidArgumentError("--seeds-count must be at least 1");
  }
  if (options.threads < 1) {
    return absl::InvalidArgumentError("--threads must be at least 1");
  }
  if (options.d < 1) {
    return absl::InvalidArgumentError("--d must be at least 1");
  }
  if (options.n < 1) {
    return absl::InvalidArgumentError("--n must be at least 1");
  }
  auto budget = MakeBudget(options.epsilon, options.delta, false);
  if (!budget.ok()) return budget.status();

  const std::int64_t count = options.seeds_count;
  std::vector<absl::StatusOr<FtrlRow>> results(
      count, absl::UnknownError("not run"));
  auto run_one = [&](std::int64_t i) {
    const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(i);
    auto task = LogisticTask::Generate(options.n, options.d, seed);
    if (!task.ok()) {
      results[i] = task.status();
      return;
    }
    FtrlConfig config;
    config.horizon = options.n;
    config.dim = options.d;
    config.kappa = options.kappa;
    config.radius = options.radius;
    config.noise_seed = NoiseSeedForTask(seed);
    auto run = RunDpFtrl(*task, config, *budget);
    if (!run.ok()) {
      results[i] = run.status();
      return;
    }
    results[i] = FtrlRow{seed, run->report.regret, run->report.bound};
  };

  const int threads =
      static_cast<int>(std::min<std::int64_t>(options.threads, count));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) run_one(i);
  } else {
    std::vector<std::thread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (std::int64_t i = w; i < count; i += threads) run_one(i);
      });
    }
    for (std::thread& worker : workers) worker.join();
  }

  std::vector<FtrlRow> rows;
  rows.reserve(count);
  for (auto& result : results) {
    if (!result.ok()) return result.status();
    rows.push_back(*result);
  }
  return rows;
}

absl::Status RunFtrl(const FtrlOptions& options, std::ostream& out,
                     std::ostream& diagnostics) {
  auto rows = FtrlExperiment(options);
  if (!rows.ok()) return rows.status();
  out << "seed,regret,bound\n";
  double total = 0.0;
  for (const FtrlRow& row : *rows) {
    out << row.seed << ',' << FormatDouble(row.regret) << ','
        << FormatDouble(row.bound) << '\n';
    total += row.regret;
  }
  diagnostics << "mean regret " << FormatDouble(total / rows->size())
              << " bound " << FormatDouble(rows->front().bound) << '\n';
  return absl::OkStatus();
}

}  // namespace contcount::cli
