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

#ifndef CONTCOUNT_TOOLS_COMMANDS_H_
#define CONTCOUNT_TOOLS_COMMANDS_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace contcount::cli {

// Commands report bad flag values with kInvalidArgument, which the binary
// maps to the usage exit code 2. Every other failure, including malformed
// input files, maps to 1.
int ExitCodeFor(const absl::Status& status);

struct CoeffsOptions {
  std::int64_t n = 0;
};
// CSV "index,value" with f(0..n-1).
absl::Status RunCoeffs(const CoeffsOptions& options, std::ostream& out);

struct CountOptions {
  // Bit stream file, one 0/1 per line; "-" reads the input stream. With
  // neither `input` nor `n` the input stream is read too. With only `n`,
  // n uniform bits are generated from a seed derived from `seed`.
  std::optional<std::string> input;
  std::optional<std::int64_t> n;
  std::string mechanism = "factorization";
  double epsilon = 1.0;
  double delta = 1e-6;
  bool allow_large_epsilon = false;
  bool no_noise = false;
  std::uint64_t seed = 0;
};
// CSV "t,true_count,noisy_count", t from 1.
absl::Status RunCount(const CountOptions& options, std::istream& in,
                      std::ostream& out);

// One row of the closed-form comparison table.
struct ComparisonRow {
  std::int64_t n = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double err_fact_upper = 0.0;
  double err_lower_matrix_mech = 0.0;
  double err_binary_expected = 0.0;
  double ratio_binary_over_fact = 0.0;
};

struct CompareOptions {
  std::int64_t n_max = std::int64_t{1} << 24;
  std::vector<double> epsilons = {0.3, 0.8};
  double delta = 1e-10;
  bool allow_large_epsilon = false;
  // Crossover reported on the diagnostic stream: the first n where the
  // factorization curve at fact_epsilon drops below the binary curve at
  // binary_epsilon. Default to the first and last entries of `epsilons`.
  std::optional<double> fact_epsilon;
  std::optional<double> binary_epsilon;
};

// Rows at n = 1, 2, 4, ..., n_max for each epsilon. The factorization curve
// is the guaranteed mean-squared error C^2 (1 + ln(4n/5) / pi)^2; the binary
// curve is the exact expected error C^2 (1 + log2 n) sum_t popcount(t) / n.
absl::StatusOr<std::vector<ComparisonRow>> ComparisonTable(
    const CompareOptions& options);

// First power of two n <= n_max with
// err_fact_upper(n, fact_epsilon) < err_binary_expected(n, binary_epsilon),
// or nullopt.
absl::StatusOr<std::optional<std::int64_t>> Crossover(std::int64_t n_max,
                                                      double fact_epsilon,
                                                      double binary_epsilon,
                                                      double delta);

absl::Status RunCompare(const CompareOptions& options, std::ostream& out,
                        std::ostream& diagnostics);

struct CertifyOptions {
  std::string matrix_path;
};
// CSV "lower,upper,feasible,objective" for the SVD certificate.
absl::Status RunCertify(const CertifyOptions& options, std::ostream& out,
                        std::ostream& diagnostics);

struct FtrlOptions {
  std::int64_t n = 2048;
  int d = 5;
  double epsilon = 1.0;
  double delta = 1e-6;
  double kappa = 1.0;
  double radius = 1.0;
  std::uint64_t seed = 0;
  std::int64_t seeds_count = 20;
  int threads = 1;
};

struct FtrlRow {
  std::uint64_t seed = 0;
  double regret = 0.0;
  double bound = 0.0;
};

// Seeds seed, seed + 1, ...; each seed generates its own logistic task and
// noise. Rows come back in seed order whatever the thread count.
absl::StatusOr<std::vector<FtrlRow>> FtrlExperiment(const FtrlOptions& options);

// CSV "seed,regret,bound"; the mean regret goes to `diagnostics`.
absl::Status RunFtrl(const FtrlOptions& options, std::ostream& out,
                     std::ostream& diagnostics);

// %.17g.
std::string FormatDouble(double value);

}  // namespace contcount::cli

#endif  // CONTCOUNT_TOOLS_COMMANDS_H_
