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

#include <cmath>
#include <numbers>
#include <vector>

#include "contcount/linalg.h"
#include "contcount/privacy_budget.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace contcount {
namespace {

using ::contcount::testing::StatusIs;

constexpr double kPi = std::numbers::pi;

DenseMatrix Mat(const std::vector<std::vector<double>>& rows) {
  return *DenseMatrix::FromRows(rows);
}

TEST(CountingMatrixTest, Examples) {
  ASSERT_OK_AND_ASSIGN(DenseMatrix m, CountingMatrix(1));
  EXPECT_EQ(m, Mat({{1}}));
  ASSERT_OK_AND_ASSIGN(m, CountingMatrix(2));
  EXPECT_EQ(m, Mat({{1, 0}, {1, 1}}));
  ASSERT_OK_AND_ASSIGN(m, CountingMatrix(3));
  EXPECT_EQ(m(2, 0), 1);
  EXPECT_EQ(m(2, 1), 1);
  EXPECT_EQ(m(2, 2), 1);
  EXPECT_EQ(m(0, 2), 0);
  EXPECT_THAT(CountingMatrix(0), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(CountingInverseTest, IsExactInverse) {
  ASSERT_OK_AND_ASSIGN(DenseMatrix inv, CountingInverse(2));
  EXPECT_EQ(inv, Mat({{1, 0}, {-1, 1}}));
  ASSERT_OK_AND_ASSIGN(inv, CountingInverse(1));
  EXPECT_EQ(inv, Mat({{1}}));
  for (std::int64_t n : {3, 10, 64}) {
    ASSERT_OK_AND_ASSIGN(DenseMatrix m, CountingMatrix(n));
    ASSERT_OK_AND_ASSIGN(inv, CountingInverse(n));
    EXPECT_EQ(m * inv, DenseMatrix::Identity(n));
    EXPECT_EQ(inv * m, DenseMatrix::Identity(n));
  }
}

TEST(CountingSingularValueTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double s, CountingSingularValue(1, 1));
  EXPECT_NEAR(s, 1.0, 1e-15);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  ASSERT_OK_AND_ASSIGN(s, CountingSingularValue(2, 1));
  EXPECT_NEAR(s, phi, 1e-14);
  ASSERT_OK_AND_ASSIGN(s, CountingSingularValue(2, 2));
  EXPECT_NEAR(s, phi - 1, 1e-14);
  EXPECT_THAT(CountingSingularValue(2, 0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(CountingSingularValue(2, 3),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(CountingSingularValueTest, MatchesNumericSvdAndDecreases) {
  for (std::int64_t n = 1; n <= 256; n += (n < 16 ? 1 : 15)) {
    ASSERT_OK_AND_ASSIGN(DenseMatrix m, CountingMatrix(n));
    ASSERT_OK_AND_ASSIGN(SingularSpectrum numeric, SingularValues(m));
    double previous = INFINITY;
    for (std::int64_t i = 1; i <= n; ++i) {
      ASSERT_OK_AND_ASSIGN(double closed, CountingSingularValue(n, i));
      EXPECT_NEAR(numeric.values[i - 1], closed, 1e-8 * closed)
          << "n=" << n << " i=" << i;
      EXPECT_LT(closed, previous);
      previous = closed;
    }
  }
}

TEST(CountingSchattenOneTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double v, CountingSchattenOne(1));
  EXPECT_NEAR(v, 1.0, 1e-15);
  ASSERT_OK_AND_ASSIGN(v, CountingSchattenOne(2));
  EXPECT_NEAR(v, std::sqrt(5.0), 1e-14);
  ASSERT_OK_AND_ASSIGN(v, CountingSchattenOne(256));
  ASSERT_OK_AND_ASSIGN(DenseMatrix m, CountingMatrix(256));
  ASSERT_OK_AND_ASSIGN(double numeric, SchattenOne(m));
  EXPECT_NEAR(v, numeric, 1e-8 * numeric);
}

TEST(GammaBoundCountTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double lower, GammaLowerBoundCount(2));
  EXPECT_NEAR(lower, std::sqrt(2.0) / kPi * (2 + std::log(5.0) / 4), 1e-14);
  EXPECT_NEAR(lower, 1.0815, 1e-4);
  EXPECT_LE(lower, std::sqrt(5.0) / std::sqrt(2.0));
  ASSERT_OK_AND_ASSIGN(lower, GammaLowerBoundCount(1));
  EXPECT_NEAR(lower, 0.6489, 1e-4);

  ASSERT_OK_AND_ASSIGN(double upper, GammaUpperBoundCount(2));
  EXPECT_NEAR(upper, 1.6258, 1e-4);
  ASSERT_OK_AND_ASSIGN(upper, GammaUpperBoundCount(5));
  EXPECT_NEAR(upper, std::sqrt(5.0) * (1 + std::log(4.0) / kPi), 1e-13);
  EXPECT_NEAR(upper, 3.2228, 1e-4);

  EXPECT_THAT(GammaLowerBoundCount(0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(GammaUpperBoundCount(0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(GammaBoundCountTest, LowerNeverExceedsUpper) {
  for (std::int64_t n = 1; n <= 4096; ++n) {
    ASSERT_OK_AND_ASSIGN(double lower, GammaLowerBoundCount(n));
    ASSERT_OK_AND_ASSIGN(double upper, GammaUpperBoundCount(n));
    EXPECT_LE(lower, upper) << n;
  }
}

TEST(GammaBoundCountTest, SchattenSandwichFromTwo) {
  for (std::int64_t n = 2; n <= 4096; ++n) {
    ASSERT_OK_AND_ASSIGN(double lower, GammaLowerBoundCount(n));
    ASSERT_OK_AND_ASSIGN(double upper, GammaUpperBoundCount(n));
    ASSERT_OK_AND_ASSIGN(double trace_norm, CountingSchattenOne(n));
    const double middle = trace_norm / std::sqrt(static_cast<double>(n));
    EXPECT_LE(lower, middle) << n;
    EXPECT_LE(middle, upper) << n;
    EXPECT_LE(trace_norm / n, 1 + std::log(4.0 * n / 5) / kPi) << n;
  }
}

// At n = 1 the upper bound 1 + ln(4/5)/pi is below gamma_F([1]) = 1.
TEST(GammaBoundCountTest, UpperBoundFailsAtOne) {
  ASSERT_OK_AND_ASSIGN(double upper, GammaUpperBoundCount(1));
  ASSERT_OK_AND_ASSIGN(double trace_norm, CountingSchattenOne(1));
  EXPECT_NEAR(upper, 1 + std::log(0.8) / kPi, 1e-15);
  EXPECT_GT(trace_norm, upper);
}

TEST(ErrorBoundTest, UpperMatchesGammaUpper) {
  ASSERT_OK_AND_ASSIGN(PrivacyBudget budget, PrivacyBudget::Create(1, 1e-10));
  const double c2 = budget.noise_multiplier() * budget.noise_multiplier();
  for (std::int64_t n : {std::int64_t{1} << 10, std::int64_t{1} << 20,
                         std::int64_t{1} << 30}) {
    ASSERT_OK_AND_ASSIGN(double err, ErrUpperBound(n, budget));
    ASSERT_OK_AND_ASSIGN(double gamma, GammaUpperBoundCount(n));
    EXPECT_NEAR(err, gamma * gamma / n * c2, 1e-12 * err);
  }
}

TEST(ErrorBoundTest, GapWithinTenCSquared) {
  ASSERT_OK_AND_ASSIGN(PrivacyBudget budget, PrivacyBudget::Create(1, 1e-10));
  const double c2 = budget.noise_multiplier() * budget.noise_multiplier();
  for (int k : {10, 20, 24, 30}) {
    const std::int64_t n = std::int64_t{1} << k;
    ASSERT_OK_AND_ASSIGN(double upper, ErrUpperBound(n, budget));
    ASSERT_OK_AND_ASSIGN(double lower, ErrLowerBoundMatrixMechanism(n, budget));
    EXPECT_LE(upper - lower, 10 * c2) << k;
  }
  ASSERT_OK_AND_ASSIGN(double upper, ErrUpperBound(1 << 20, budget));
  ASSERT_OK_AND_ASSIGN(double lower,
                       ErrLowerBoundMatrixMechanism(1 << 20, budget));
  EXPECT_NEAR((upper - lower) / c2, 5.9, 0.05);
}

TEST(ErrorBoundTest, LowerBelowUpperUpToTwoToThirty) {
  ASSERT_OK_AND_ASSIGN(PrivacyBudget budget, PrivacyBudget::Create(1, 1e-10));
  for (int k = 0; k <= 30; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    ASSERT_OK_AND_ASSIGN(double upper, ErrUpperBound(n, budget));
    ASSERT_OK_AND_ASSIGN(double lower, ErrLowerBoundMatrixMechanism(n, budget));
    EXPECT_LE(lower, upper) << k;
  }
}

TEST(ErrorBoundTest, AnyMechanismPrefactors) {
  ASSERT_OK_AND_ASSIGN(double any, ErrLowerBoundAnyMechanism(64, 0.5));
  ASSERT_OK_AND_ASSIGN(double oblivious,
                       ErrLowerBoundInputObliviousMechanism(64, 0.5));
  const double core = 2 + std::log(129.0 / 5) + std::log(129.0) / 128;
  EXPECT_NEAR(any, core * core / (kPi * kPi * std::pow(std::expm1(2.0), 2)),
              1e-12);
  EXPECT_NEAR(oblivious,
              core * core / (kPi * kPi * std::pow(std::expm1(1.0), 2)), 1e-12);
  EXPECT_GT(oblivious, any);
  EXPECT_THAT(ErrLowerBoundAnyMechanism(64, 0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(HadamardTest, Examples) {
  ASSERT_OK_AND_ASSIGN(DenseMatrix h, Hadamard(0));
  EXPECT_EQ(h, Mat({{1}}));
  ASSERT_OK_AND_ASSIGN(h, Hadamard(1));
  EXPECT_EQ(h, Mat({{1, 1}, {1, -1}}));
  ASSERT_OK_AND_ASSIGN(h, Hadamard(3));
  EXPECT_EQ(h * h.Transpose(), DenseMatrix::Identity(8).Scaled(8));
  EXPECT_THAT(Hadamard(-1), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ParityWorkloadTest, Examples) {
  ASSERT_OK_AND_ASSIGN(DenseMatrix s, ParityWorkload(2, 1));
  EXPECT_EQ(s.rows(), 2u);
  EXPECT_EQ(s.cols(), 4u);
  ASSERT_OK_AND_ASSIGN(SingularSpectrum spectrum, SingularValues(s));
  EXPECT_NEAR(spectrum.values[0], 2, 1e-12);
  EXPECT_NEAR(spectrum.values[1], 2, 1e-12);

  // Column c encodes x with x_1 the most significant bit (set bit = -1).
  EXPECT_EQ(s, Mat({{1, 1, -1, -1}, {1, -1, 1, -1}}));

  ASSERT_OK_AND_ASSIGN(s, ParityWorkload(2, 2));
  EXPECT_EQ(s, Mat({{1, -1, -1, 1}}));

  EXPECT_THAT(ParityWorkload(2, 3),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(ParityWorkload(2, 0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ParityWorkloadTest, RowsArePointwiseProducts) {
  const int d = 4;
  ASSERT_OK_AND_ASSIGN(DenseMatrix s, ParityWorkload(d, 2));
  // Lexicographic subsets of {1..4} of size 2.
  const std::vector<std::vector<int>> subsets = {{1, 2}, {1, 3}, {1, 4},
                                                 {2, 3}, {2, 4}, {3, 4}};
  ASSERT_EQ(s.rows(), subsets.size());
  for (std::size_t r = 0; r < subsets.size(); ++r) {
    for (std::size_t c = 0; c < 16; ++c) {
      double expected = 1;
      for (int i : subsets[r]) {
        if ((c >> (d - i)) & 1) expected = -expected;
      }
      EXPECT_EQ(s(r, c), expected) << r << "," << c;
    }
  }
}

TEST(ParityWorkloadTest, FlatSpectrum) {
  for (int d = 1; d <= 10; ++d) {
    for (int w = 1; w <= d; ++w) {
      ASSERT_OK_AND_ASSIGN(DenseMatrix s, ParityWorkload(d, w));
      ASSERT_OK_AND_ASSIGN(SingularSpectrum spectrum, SingularValues(s));
      ASSERT_EQ(spectrum.values.size(), Binomial(d, w));
      const double expected = std::pow(2.0, d / 2.0);
      for (double v : spectrum.values) {
        EXPECT_NEAR(v, expected, 1e-9 * expected) << d << "," << w;
      }
    }
  }
}

TEST(ParityGammaLowerTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double v, ParityGammaLower(2, 1));
  EXPECT_EQ(v, 2);
  ASSERT_OK_AND_ASSIGN(v, ParityGammaLower(1, 1));
  EXPECT_EQ(v, 1);
  ASSERT_OK_AND_ASSIGN(v, ParityGammaLower(8, 4));
  EXPECT_EQ(v, 70);
}

TEST(BinomialTest, Values) {
  EXPECT_EQ(Binomial(10, 3), 120u);
  EXPECT_EQ(Binomial(8, 4), 70u);
  EXPECT_EQ(Binomial(5, 0), 1u);
  EXPECT_EQ(Binomial(5, 6), 0u);
}

}  // namespace
}  // namespace contcount
