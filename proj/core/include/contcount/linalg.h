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

#ifndef CONTCOUNT_LINALG_H_
#define CONTCOUNT_LINALG_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace contcount {

// Dense real matrix stored row-major. Every entry is finite when the matrix
// was produced by one of the validating factories; the element accessors do
// not re-check.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  // Zero-filled rows x cols matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);

  static absl::StatusOr<DenseMatrix> FromRowMajor(std::size_t rows,
                                                  std::size_t cols,
                                                  std::vector<double> values);
  static absl::StatusOr<DenseMatrix> FromRows(
      const std::vector<std::vector<double>>& rows);
  static DenseMatrix Identity(std::size_t n);
  static DenseMatrix Diagonal(std::span<const double> diagonal);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return values_.empty(); }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return values_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<const double> values() const { return values_; }

  DenseMatrix Transpose() const;
  DenseMatrix Scaled(double factor) const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// Requires a.cols() == b.rows().
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
// Requires a.cols() == x.size().
std::vector<double> MatVec(const DenseMatrix& a, std::span<const double> x);

// Largest |a(i,j) - b(i,j)|. Requires equal shapes.
double MaxAbsDifference(const DenseMatrix& a, const DenseMatrix& b);

// Singular values sorted in non-increasing order.
struct SingularSpectrum {
  std::vector<double> values;

  double Sum() const;
  double SumOfSquares() const;
};

// Thin SVD: a = u * diag(singular_values) * v^T with u rows x r, v cols x r,
// r = min(rows, cols).
struct ThinSvd {
  DenseMatrix u;
  std::vector<double> singular_values;
  DenseMatrix v;
};

double FrobeniusNorm(const DenseMatrix& a);

// ||A||_{1->2}: the largest Euclidean norm of a column.
double ColumnNorm1To2(const DenseMatrix& a);

// ||A||_{2->inf}: the largest Euclidean norm of a row.
double RowNorm2ToInf(const DenseMatrix& a);

// Full spectrum of min(rows, cols) values, zeros included. Returns
// kInternal if the underlying SVD does not converge.
absl::StatusOr<SingularSpectrum> SingularValues(const DenseMatrix& a);

absl::StatusOr<ThinSvd> ComputeThinSvd(const DenseMatrix& a);

// Trace norm, the sum of singular values.
absl::StatusOr<double> SchattenOne(const DenseMatrix& a);

// Moore-Penrose pseudoinverse. Singular values below
// relative_tolerance * sigma_max are treated as zero.
absl::StatusOr<DenseMatrix> PseudoInverse(const DenseMatrix& a,
                                          double relative_tolerance = 1e-12);

// Smallest eigenvalue of a symmetric matrix. Rejects non-square input and
// input whose asymmetry max|h - h^T| exceeds symmetry_tolerance.
absl::StatusOr<double> MinEigenvalueSymmetric(
    const DenseMatrix& h, double symmetry_tolerance = 1e-10);

// y[t] = sum_{j <= t} coeffs[t - j] * x[j]. The summation runs j = 0..t in
// order, which makes the result bit-identical to multiplying x by the
// materialized lower-triangular Toeplitz matrix with the same loop order.
absl::StatusOr<std::vector<double>> ToeplitzLowerMatVec(
    std::span<const double> coeffs, std::span<const double> x);

// Same product computed by zero-padded FFT convolution in O(n log n).
// Agrees with ToeplitzLowerMatVec up to floating-point rounding.
absl::StatusOr<std::vector<double>> ToeplitzLowerMatVecFft(
    std::span<const double> coeffs, std::span<const double> x);

// Lower-triangular Toeplitz matrix with first column `coeffs`.
DenseMatrix LowerToeplitz(std::span<const double> coeffs);

// Matrix CSV: one row per line, comma-separated decimal floats, no header.
// Blank trailing lines are ignored; ragged rows, empty input and non-finite
// or unparsable entries are rejected with kInvalidArgument.
absl::StatusOr<DenseMatrix> ParseMatrixCsv(absl::string_view text);
absl::StatusOr<DenseMatrix> ReadMatrixCsv(std::istream& in);
absl::StatusOr<DenseMatrix> ReadMatrixCsvFile(const std::string& path);
// Writes with 17 significant digits so values round-trip.
void WriteMatrixCsv(std::ostream& out, const DenseMatrix& a);

}  // namespace contcount

#endif  // CONTCOUNT_LINALG_H_
