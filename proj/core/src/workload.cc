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

#include "contcount/workload.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace contcount {
namespace {

constexpr std::int64_t kMaxDenseCounting = 1 << 14;
constexpr int kMaxHadamardOrder = 16;

absl::Status CheckHorizon(std::int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("stream length must be at least 1, got ", n));
  }
  return absl::OkStatus();
}

absl::Status CheckDenseHorizon(std::int64_t n) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  if (n > kMaxDenseCounting) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "refusing to materialize a ", n, "x", n, " counting matrix"));
  }
  return absl::OkStatus();
}

// 2 + ln((2n + 1) / 5) + ln(2n + 1) / (2n), shared by the lower bounds.
double LowerBoundBracket(std::int64_t n) {
  const double two_n_plus_one = 2.0 * static_cast<double>(n) + 1.0;
  return 2.0 + std::log(two_n_plus_one / 5.0) +
         std::log(two_n_plus_one) / (2.0 * static_cast<double>(n));
}

double UpperBoundFactor(std::int64_t n) {
  return 1.0 + std::log(4.0 * static_cast<double>(n) / 5.0) / std::numbers::pi;
}

absl::StatusOr<double> AnyMechanismBound(std::int64_t n, double epsilon,
                                         double exponent_scale) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  const double denom = std::expm1(exponent_scale * epsilon);
  const double bracket = LowerBoundBracket(n);
  return bracket * bracket /
         (denom * denom * std::numbers::pi * std::numbers::pi);
}

}  // namespace

absl::StatusOr<DenseMatrix> CountingMatrix(std::int64_t n) {
  if (auto status = CheckDenseHorizon(n); !status.ok()) return status;
  DenseMatrix out(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j <= i; ++j) out(i, j) = 1.0;
  }
  return out;
}

absl::StatusOr<DenseMatrix> CountingInverse(std::int64_t n) {
  if (auto status = CheckDenseHorizon(n); !status.ok()) return status;
  DenseMatrix out(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    out(i, i) = 1.0;
    if (i > 0) out(i, i - 1) = -1.0;
  }
  return out;
}

absl::StatusOr<DenseMatrix> Hadamard(int d) {
  if (d < 0 || d > kMaxHadamardOrder) {
    return absl::InvalidArgumentError(
        absl::StrCat("Hadamard order must be in [0, ", kMaxHadamardOrder,
                     "], got ", d));
  }
  const std::size_t size = std::size_t{1} << d;
  DenseMatrix out(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      out(r, c) = (std::popcount(r & c) % 2 == 0) ? 1.0 : -1.0;
    }
  }
  return out;
}

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // Exact: result * (n - k + i) is divisible by i at every step.
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

absl::StatusOr<DenseMatrix> ParityWorkload(int d, int w) {
  if (d < 1 || d > kMaxHadamardOrder) {
    return absl::InvalidArgumentError(
        absl::StrCat("parity dimension must be in [1, ", kMaxHadamardOrder,
                     "], got ", d));
  }
  if (w < 1 || w > d) {
    return absl::InvalidArgumentError(
        absl::StrCat("parity weight must satisfy 1 <= w <= d, got w=", w,
                     ", d=", d));
  }
  const std::size_t columns = std::size_t{1} << d;
  DenseMatrix out(Binomial(d, w), columns);

  // Lexicographic enumeration of w-subsets of {1..d}.
  std::vector<int> subset(w);
  for (int i = 0; i < w; ++i) subset[i] = i + 1;
  std::size_t row = 0;
  while (true) {
    std::uint64_t mask = 0;
    for (int element : subset) mask |= std::uint64_t{1} << (d - element);
    for (std::size_t c = 0; c < columns; ++c) {
      out(row, c) = (std::popcount(mask & c) % 2 == 0) ? 1.0 : -1.0;
    }
    ++row;
    int i = w - 1;
    while (i >= 0 && subset[i] == d - (w - 1 - i)) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < w; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

absl::StatusOr<double> CountingSingularValue(std::int64_t n, std::int64_t i) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  if (i < 1 || i > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("singular value index must be in [1, ", n, "], got ", i));
  }
  const double angle = static_cast<double>(2 * i - 1) * std::numbers::pi /
                       static_cast<double>(4 * n + 2);
  return 0.5 / std::sin(angle);
}

absl::StatusOr<double> CountingSchattenOne(std::int64_t n) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  // Smallest terms first to limit round-off.
  double total = 0.0;
  for (std::int64_t i = n; i >= 1; --i) {
    const double angle = static_cast<double>(2 * i - 1) * std::numbers::pi /
                         static_cast<double>(4 * n + 2);
    total += 0.5 / std::sin(angle);
  }
  return total;
}

absl::StatusOr<double> GammaLowerBoundCount(std::int64_t n) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  return std::sqrt(static_cast<double>(n)) / std::numbers::pi *
         LowerBoundBracket(n);
}

absl::StatusOr<double> GammaUpperBoundCount(std::int64_t n) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  return std::sqrt(static_cast<double>(n)) * UpperBoundFactor(n);
}

absl::StatusOr<double> ErrUpperBound(std::int64_t n,
                                     const PrivacyBudget& budget) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  const double c = budget.noise_multiplier();
  const double factor = UpperBoundFactor(n);
  return c * c * factor * factor;
}

absl::StatusOr<double> ErrLowerBoundMatrixMechanism(
    std::int64_t n, const PrivacyBudget& budget) {
  if (auto status = CheckHorizon(n); !status.ok()) return status;
  const double c = budget.noise_multiplier();
  const double bracket = LowerBoundBracket(n);
  return c * c * bracket * bracket / (std::numbers::pi * std::numbers::pi);
}

absl::StatusOr<double> ErrLowerBoundAnyMechanism(std::int64_t n,
                                                 double epsilon) {
  return AnyMechanismBound(n, epsilon, 4.0);
}

absl::StatusOr<double> ErrLowerBoundInputObliviousMechanism(std::int64_t n,
                                                            double epsilon) {
  return AnyMechanismBound(n, epsilon, 2.0);
}

absl::StatusOr<double> ParityGammaLower(int d, int w) {
  auto workload = ParityWorkload(d, w);
  if (!workload.ok()) return workload.status();
  auto trace_norm = SchattenOne(*workload);
  if (!trace_norm.ok()) return trace_norm.status();
  const double spectral =
      *trace_norm / std::sqrt(static_cast<double>(workload->cols()));
  const double exact = static_cast<double>(Binomial(d, w));
  if (std::abs(spectral - exact) > 1e-9 * exact) {
    return absl::InternalError(absl::StrCat(
        "parity spectrum gives ", spectral, " but C(", d, ",", w, ") = ",
        exact));
  }
  return exact;
}

}  // namespace contcount
