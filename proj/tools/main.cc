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

// contcount: private continual counting from the command line.
//
//   contcount coeffs --n 8
//   contcount count --input bits.txt --eps 0.5 --delta 1e-6 --seed 7
//   contcount compare --n-max 1073741824 --eps 0.3,0.8 --delta 1e-10
//   contcount certify --matrix a.csv
//   contcount ftrl --n 2048 --d 5 --seeds-count 20
//
// Exit status: 0 on success, 2 on usage errors, 1 on runtime failures.

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using ::contcount::cli::ExitCodeFor;

constexpr int kUsageError = 2;

// Runs `body` against --out (or stdout) and converts the status to an exit
// code, printing any error to stderr.
int Dispatch(const std::string& out_path,
             const std::function<absl::Status(std::ostream&)>& body) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      std::cerr << "error: cannot open " << out_path << " for writing\n";
      return 1;
    }
    out = &file;
  }
  absl::Status status = body(*out);
  out->flush();
  if (status.ok() && !*out) {
    status = absl::DataLossError("write failed");
  }
  if (!status.ok()) {
    std::cerr << "error: " << status.message() << '\n';
  }
  return ExitCodeFor(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private continual counting with matrix factorizations"};
  app.require_subcommand(1);
  std::string out_path;

  contcount::cli::CoeffsOptions coeffs;
  CLI::App* coeffs_cmd =
      app.add_subcommand("coeffs", "Square-root factorization coefficients");
  coeffs_cmd->add_option("--n", coeffs.n, "Number of coefficients")
      ->required();
  coeffs_cmd->add_option("--out", out_path, "Output path (default stdout)");

  contcount::cli::CountOptions count;
  std::string count_input;
  std::int64_t count_n = 0;
  CLI::App* count_cmd =
      app.add_subcommand("count", "Run a private counter over a bit stream");
  auto* input_opt = count_cmd->add_option(
      "--input", count_input,
      "Bit stream file, one 0/1 per line (\"-\" or omitted: stdin)");
  auto* n_opt = count_cmd->add_option(
      "--n", count_n, "Horizon; random bits are generated without --input");
  count_cmd
      ->add_option("--mechanism", count.mechanism,
                   "factorization, binary or honaker")
      ->capture_default_str();
  count_cmd->add_option("--eps", count.epsilon, "Epsilon")
      ->capture_default_str();
  count_cmd->add_option("--delta", count.delta, "Delta")
      ->capture_default_str();
  count_cmd->add_flag("--allow-large-epsilon", count.allow_large_epsilon,
                      "Accept epsilon > 1");
  count_cmd->add_flag("--no-noise", count.no_noise,
                      "Release exact counts (no privacy)");
  count_cmd->add_option("--seed", count.seed, "Random seed")
      ->capture_default_str();
  count_cmd->add_option("--out", out_path, "Output path (default stdout)");

  contcount::cli::CompareOptions compare;
  double fact_eps = 0.0;
  double binary_eps = 0.0;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Closed-form error of factorization vs binary mechanism");
  compare_cmd->add_option("--n-max", compare.n_max, "Largest horizon")
      ->capture_default_str();
  compare_cmd->add_option("--eps", compare.epsilons, "Comma-separated epsilons")
      ->delimiter(',')
      ->capture_default_str();
  compare_cmd->add_option("--delta", compare.delta, "Delta")
      ->capture_default_str();
  compare_cmd->add_flag("--allow-large-epsilon", compare.allow_large_epsilon,
                        "Accept epsilon > 1");
  auto* fact_eps_opt = compare_cmd->add_option(
      "--fact-eps", fact_eps, "Factorization epsilon for the crossover");
  auto* binary_eps_opt = compare_cmd->add_option(
      "--binary-eps", binary_eps, "Binary epsilon for the crossover");
  compare_cmd->add_option("--out", out_path, "Output path (default stdout)");

  contcount::cli::CertifyOptions certify;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "Bound gamma_F of a matrix");
  certify_cmd
      ->add_option("--matrix", certify.matrix_path, "Matrix CSV, no header")
      ->required();
  certify_cmd->add_option("--out", out_path, "Output path (default stdout)");

  contcount::cli::FtrlOptions ftrl;
  CLI::App* ftrl_cmd =
      app.add_subcommand("ftrl", "DP-FTRL on synthetic logistic regression");
  ftrl_cmd->add_option("--n", ftrl.n, "Rounds")->capture_default_str();
  ftrl_cmd->add_option("--d", ftrl.d, "Dimension")->capture_default_str();
  ftrl_cmd->add_option("--eps", ftrl.epsilon, "Epsilon")
      ->capture_default_str();
  ftrl_cmd->add_option("--delta", ftrl.delta, "Delta")->capture_default_str();
  ftrl_cmd->add_option("--kappa", ftrl.kappa, "Clip norm")
      ->capture_default_str();
  ftrl_cmd->add_option("--radius", ftrl.radius, "Feasible ball radius")
      ->capture_default_str();
  ftrl_cmd->add_option("--seed", ftrl.seed, "First seed")
      ->capture_default_str();
  ftrl_cmd->add_option("--seeds-count", ftrl.seeds_count, "Number of seeds")
      ->capture_default_str();
  ftrl_cmd->add_option("--threads", ftrl.threads, "Worker threads")
      ->capture_default_str();
  ftrl_cmd->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (*coeffs_cmd) {
    return Dispatch(out_path, [&](std::ostream& out) {
      return contcount::cli::RunCoeffs(coeffs, out);
    });
  }
  if (*count_cmd) {
    if (*input_opt) count.input = count_input;
    if (*n_opt) count.n = count_n;
    return Dispatch(out_path, [&](std::ostream& out) {
      return contcount::cli::RunCount(count, std::cin, out);
    });
  }
  if (*compare_cmd) {
    if (*fact_eps_opt) compare.fact_epsilon = fact_eps;
    if (*binary_eps_opt) compare.binary_epsilon = binary_eps;
    return Dispatch(out_path, [&](std::ostream& out) {
      return contcount::cli::RunCompare(compare, out, std::cerr);
    });
  }
  if (*certify_cmd) {
    return Dispatch(out_path, [&](std::ostream& out) {
      return contcount::cli::RunCertify(certify, out, std::cerr);
    });
  }
  if (*ftrl_cmd) {
    return Dispatch(out_path, [&](std::ostream& out) {
      return contcount::cli::RunFtrl(ftrl, out, std::cerr);
    });
  }
  return kUsageError;
}
