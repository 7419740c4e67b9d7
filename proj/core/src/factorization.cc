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

#include "contcount/factorization.h"

#include <bit>
#include <cmath>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "contcount/workload.h"

namespace contcount {
namespace {

absl::Status CheckDenseHorizon(std::int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("stream length must be at least 1, got ", n));
  }
  if (n > kMaxDenseHorizon) {
    return absl::ResourceExhaustedError(
        absl::StrCat("dense factorizations are limited to n <= ",
                     kMaxDenseHorizon, ", got ", n));
  }
  return absl::OkStatus();
}

// R_binary and L_binary for a power-of-two horizon, truncated to n.
Factorization BuildBinary(std::int64_t n) {
  const std::int64_t padded = PaddedHorizon(n);
  const int levels = std::countr_zero(static_cast<std::uint64_t>(padded));
  const std::size_t nodes = 2 * static_cast<std::size_t>(padded) - 1;

  DenseMatrix right(nodes, n);
  for (int level = 0; level <= levels; ++level) {
    const std::int64_t width = std::int64_t{1} << level;
    for (std::int64_t first = 0; first < padded; first += width) {
      const std::uint64_t last = first + width - 1;
      const std::uint64_t row = PostOrderIndex(last, level);
      for (std::int64_t leaf = first; leaf <= static_cast<std::int64_t>(last) &&
                                      leaf < n;
           ++leaf) {
        right(row, leaf) = 1.0;
      }
    }
  }

  DenseMatrix left(n, nodes);
  for (std::int64_t t = 1; t <= n; ++t) {
    // Peel dyadic blocks off [1, t] from the right, largest-first by bit.
    std::uint64_t end = t;  // 1-based inclusive end of the remaining prefix
    for (int level = 0; level <= levels; ++level) {
      if ((static_cast<std::uint64_t>(t) >> level) & 1) {
        left(t - 1, PostOrderIndex(end - 1, level)) = 1.0;
        end -= std::uint64_t{1} << level;
      }
    }
  }
  return Factorization(FactorizationKind::kBinary, std::move(left),
                       std::move(right));
}

}  // namespace

absl::StatusOr<ToeplitzFactor> SqrtCoefficients(std::int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("stream length must be at least 1, got ", n));
  }
  ToeplitzFactor out;
  out.coeffs.resize(n);
  out.coeffs[0] = 1.0;
  for (std::int64_t k = 1; k < n; ++k) {
    out.coeffs[k] =
        (1.0 - 1.0 / (2.0 * static_cast<double>(k))) * out.coeffs[k - 1];
  }
  return out;
}

absl::StatusOr<Rational> DoubleFactorialRatio(std::int64_t k) {
  if (k < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("double factorial index must be >= 0, got ", k));
  }
  boost::multiprecision::cpp_int odd = 1;
  boost::multiprecision::cpp_int even = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    odd *= 2 * i - 1;
    even *= 2 * i;
  }
  return Rational(odd, even);
}

absl::StatusOr<double> FactorRowNormSq(const ToeplitzFactor& factor,
                                       std::int64_t t) {
  if (t < 1 || t > static_cast<std::int64_t>(factor.size())) {
    return absl::OutOfRangeError(absl::StrCat(
        "row index must be in [1, ", factor.size(), "], got ", t));
  }
  double total = 0.0;
  for (std::int64_t i = 0; i < t; ++i) {
    total += factor.coeffs[i] * factor.coeffs[i];
  }
  return total;
}

std::vector<double> FactorRowNormSqTable(const ToeplitzFactor& factor) {
  std::vector<double> table(factor.size());
  double total = 0.0;
  for (std::size_t i = 0; i < factor.size(); ++i) {
    total += factor.coeffs[i] * factor.coeffs[i];
    table[i] = total;
  }
  return table;
}

double FactorFrobeniusSq(const ToeplitzFactor& factor) {
  double total = 0.0;
  for (double row : FactorRowNormSqTable(factor)) total += row;
  return total;
}

absl::string_view FactorizationKindName(FactorizationKind kind) {
  switch (kind) {
    case FactorizationKind::kSqrtToeplitz:
      return "sqrt_toeplitz";
    case FactorizationKind::kBinary:
      return "binary";
    case FactorizationKind::kHonaker:
      return "honaker";
  }
  return "unknown";
}

absl::StatusOr<Factorization> SqrtFactorization(std::int64_t n) {
  if (auto status = CheckDenseHorizon(n); !status.ok()) return status;
  auto factor = SqrtCoefficients(n);
  if (!factor.ok()) return factor.status();
  DenseMatrix l = LowerToeplitz(factor->coeffs);
  DenseMatrix r = l;
  return Factorization(FactorizationKind::kSqrtToeplitz, std::move(l),
                       std::move(r));
}

absl::StatusOr<Factorization> BinaryFactorization(std::int64_t n) {
  if (auto status = CheckDenseHorizon(n); !status.ok()) return status;
  return BuildBinary(n);
}

absl::StatusOr<Factorization> HonakerFactorization(std::int64_t n) {
  if (auto status = CheckDenseHorizon(n); !status.ok()) return status;
  Factorization binary = BuildBinary(n);
  auto pinv = PseudoInverse(binary.right());
  if (!pinv.ok()) return pinv.status();
  auto counting = CountingMatrix(n);
  if (!counting.ok()) return counting.status();
  return Factorization(FactorizationKind::kHonaker, *counting * *pinv,
                       binary.right());
}

double Residual(const Factorization& fact) {
  const std::int64_t n = fact.n();
  DenseMatrix product = fact.left() * fact.right();
  double worst = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      const double target = j <= i ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(product(i, j) - target));
    }
  }
  return worst;
}

double ExpectedMse(const Factorization& fact, const PrivacyBudget& budget) {
  const double c = budget.noise_multiplier();
  const double col = ColumnNorm1To2(fact.right());
  const double fro = FrobeniusNorm(fact.left());
  return c * c * col * col * fro * fro / static_cast<double>(fact.n());
}

std::uint64_t PostOrderIndex(std::uint64_t last_leaf, int level) {
  return 2 * last_leaf - std::popcount(last_leaf) + level;
}

std::int64_t PaddedHorizon(std::int64_t n) {
  return static_cast<std::int64_t>(
      std::bit_ceil(static_cast<std::uint64_t>(std::max<std::int64_t>(n, 1))));
}

double BinaryRightColumnNormSq(std::int64_t n) {
  return 1.0 + std::countr_zero(static_cast<std::uint64_t>(PaddedHorizon(n)));
}

std::uint64_t BinaryLeftFrobeniusSq(std::int64_t n) {
  // Count, per bit position, how many t in [1, n] have that bit set.
  const std::uint64_t m = static_cast<std::uint64_t>(n);
  std::uint64_t total = 0;
  for (int bit = 0; bit < 63; ++bit) {
    const std::uint64_t period = std::uint64_t{1} << (bit + 1);
    const std::uint64_t half = std::uint64_t{1} << bit;
    if (half > m) break;
    const std::uint64_t full = (m + 1) / period;
    const std::uint64_t rest = (m + 1) % period;
    total += full * half + (rest > half ? rest - half : 0);
  }
  return total;
}

double BinaryExpectedMse(std::int64_t n, const PrivacyBudget& budget) {
  const double c = budget.noise_multiplier();
  return c * c * BinaryRightColumnNormSq(n) *
         static_cast<double>(BinaryLeftFrobeniusSq(n)) /
         static_cast<double>(n);
}

absl::StatusOr<double> SuboptimalityRatio(double n) {
  if (!(n >= 2.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("suboptimality ratio needs n >= 2, got ", n));
  }
  const double log2n = std::log2(n);
  const double factor = 1.0 + std::log(4.0 * n / 5.0) / std::numbers::pi;
  return log2n * (1.0 + log2n) / (2.0 * factor * factor);
}

}  // namespace contcount
