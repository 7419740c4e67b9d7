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

#include "contcount/linalg.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <lapacke.h>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace contcount {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMajorMatrix> AsEigen(const DenseMatrix& a) {
  return {a.values().data(), static_cast<Eigen::Index>(a.rows()),
          static_cast<Eigen::Index>(a.cols())};
}

DenseMatrix FromEigen(const Eigen::MatrixXd& m) {
  DenseMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  }
  return out;
}

// LAPACK divide-and-conquer SVD, falling back to the QR-iteration driver if
// it does not converge. Eigen 3.4.0's BDCSVD is not used: it returns wrong
// singular values for matrices with many repeated ones (e.g. R_binary).
struct SvdFactors {
  std::vector<double> s;
  RowMajorMatrix u;   // rows x k
  RowMajorMatrix vt;  // k x cols
};

absl::StatusOr<SvdFactors> RunSvd(const DenseMatrix& a, bool vectors) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  SvdFactors out;
  out.s.assign(k, 0.0);
  if (k == 0) {
    out.u.resize(m, 0);
    out.vt.resize(0, n);
    return out;
  }
  if (vectors) {
    out.u.resize(m, k);
    out.vt.resize(k, n);
  }
  double unused = 0.0;
  double* u = vectors ? out.u.data() : &unused;
  double* vt = vectors ? out.vt.data() : &unused;
  const char job = vectors ? 'S' : 'N';

  std::vector<double> work(a.values().begin(), a.values().end());
  lapack_int info = LAPACKE_dgesdd(LAPACK_ROW_MAJOR, job, m, n, work.data(), n,
                                   out.s.data(), u, k, vt, n);
  if (info > 0) {
    work.assign(a.values().begin(), a.values().end());
    std::vector<double> superb(std::max<lapack_int>(k - 1, 1));
    info = LAPACKE_dgesvd(LAPACK_ROW_MAJOR, job, job, m, n, work.data(), n,
                          out.s.data(), u, k, vt, n, superb.data());
  }
  if (info != 0) {
    return absl::InternalError(absl::StrCat("SVD failed on a ", a.rows(), "x",
                                            a.cols(), " matrix (info ", info,
                                            ")"));
  }
  for (double v : out.s) {
    if (!std::isfinite(v)) {
      return absl::InternalError("SVD produced non-finite singular values");
    }
  }
  return out;
}

absl::Status CheckSameLength(std::span<const double> coeffs,
                             std::span<const double> x) {
  if (coeffs.empty() || coeffs.size() != x.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Toeplitz product needs equal non-zero lengths, got ",
                     coeffs.size(), " coefficients and ", x.size(),
                     " inputs"));
  }
  return absl::OkStatus();
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

absl::StatusOr<DenseMatrix> DenseMatrix::FromRowMajor(
    std::size_t rows, std::size_t cols, std::vector<double> values) {
  if (rows == 0 || cols == 0) {
    return absl::InvalidArgumentError("matrix dimensions must be positive");
  }
  if (values.size() != rows * cols) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", rows * cols, " values for a ", rows, "x",
                     cols, " matrix, got ", values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("matrix entries must be finite");
    }
  }
  DenseMatrix out;
  out.rows_ = rows;
  out.cols_ = cols;
  out.values_ = std::move(values);
  return out;
}

absl::StatusOr<DenseMatrix> DenseMatrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    return absl::InvalidArgumentError("matrix must have at least one row");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i + 1, " has ", rows[i].size(),
                       " entries, expected ", cols));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return FromRowMajor(rows.size(), cols, std::move(values));
}

DenseMatrix DenseMatrix::Identity(std::size_t n) {
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

DenseMatrix DenseMatrix::Diagonal(std::span<const double> diagonal) {
  DenseMatrix out(diagonal.size(), diagonal.size());
  for (std::size_t i = 0; i < diagonal.size(); ++i) out(i, i) = diagonal[i];
  return out;
}

DenseMatrix DenseMatrix::Transpose() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

DenseMatrix DenseMatrix::Scaled(double factor) const {
  DenseMatrix out = *this;
  for (double& v : out.values_) v *= factor;
  return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.cols() == b.rows());
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  DenseMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

std::vector<double> MatVec(const DenseMatrix& a, std::span<const double> x) {
  assert(a.cols() == x.size());
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double MaxAbsDifference(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  double worst = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    worst = std::max(worst, std::abs(a.values()[k] - b.values()[k]));
  }
  return worst;
}

double SingularSpectrum::Sum() const {
  double total = 0.0;
  for (double s : values) total += s;
  return total;
}

double SingularSpectrum::SumOfSquares() const {
  double total = 0.0;
  for (double s : values) total += s * s;
  return total;
}

double FrobeniusNorm(const DenseMatrix& a) {
  double total = 0.0;
  for (double v : a.values()) total += v * v;
  return std::sqrt(total);
}

double ColumnNorm1To2(const DenseMatrix& a) {
  std::vector<double> sums(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) sums[j] += a(i, j) * a(i, j);
  }
  double best = 0.0;
  for (double s : sums) best = std::max(best, s);
  return std::sqrt(best);
}

double RowNorm2ToInf(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += v * v;
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

absl::StatusOr<SingularSpectrum> SingularValues(const DenseMatrix& a) {
  auto svd = RunSvd(a, /*vectors=*/false);
  if (!svd.ok()) return svd.status();
  SingularSpectrum out;
  out.values = std::move(svd->s);
  // LAPACK already sorts; clamp and re-sort so the invariant holds
  // unconditionally.
  for (double& v : out.values) v = std::max(v, 0.0);
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

absl::StatusOr<ThinSvd> ComputeThinSvd(const DenseMatrix& a) {
  auto svd = RunSvd(a, /*vectors=*/true);
  if (!svd.ok()) return svd.status();
  ThinSvd out;
  out.u = FromEigen(svd->u);
  out.v = FromEigen(svd->vt.transpose());
  out.singular_values = std::move(svd->s);
  return out;
}

absl::StatusOr<double> SchattenOne(const DenseMatrix& a) {
  auto spectrum = SingularValues(a);
  if (!spectrum.ok()) return spectrum.status();
  return spectrum->Sum();
}

absl::StatusOr<DenseMatrix> PseudoInverse(const DenseMatrix& a,
                                          double relative_tolerance) {
  auto svd = RunSvd(a, /*vectors=*/true);
  if (!svd.ok()) return svd.status();
  const std::vector<double>& s = svd->s;
  const double cutoff = s.empty() ? 0.0 : relative_tolerance * s.front();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > cutoff) inv(i) = 1.0 / s[i];
  }
  Eigen::MatrixXd pinv =
      svd->vt.transpose() * inv.asDiagonal() * svd->u.transpose();
  return FromEigen(pinv);
}

absl::StatusOr<double> MinEigenvalueSymmetric(const DenseMatrix& h,
                                              double symmetry_tolerance) {
  if (h.rows() != h.cols() || h.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("eigenvalues need a non-empty square matrix, got ",
                     h.rows(), "x", h.cols()));
  }
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = i + 1; j < h.cols(); ++j) {
      if (std::abs(h(i, j) - h(j, i)) > symmetry_tolerance) {
        return absl::InvalidArgumentError(
            absl::StrCat("matrix is not symmetric at (", i, ",", j, ")"));
      }
    }
  }
  Eigen::MatrixXd m = AsEigen(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("symmetric eigensolver failed to converge");
  }
  return solver.eigenvalues().minCoeff();
}

absl::StatusOr<std::vector<double>> ToeplitzLowerMatVec(
    std::span<const double> coeffs, std::span<const double> x) {
  if (auto status = CheckSameLength(coeffs, x); !status.ok()) return status;
  const std::size_t n = x.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= t; ++j) acc += coeffs[t - j] * x[j];
    y[t] = acc;
  }
  return y;
}

absl::StatusOr<std::vector<double>> ToeplitzLowerMatVecFft(
    std::span<const double> coeffs, std::span<const double> x) {
  if (auto status = CheckSameLength(coeffs, x); !status.ok()) return status;
  const std::size_t n = x.size();
  std::size_t size = 1;
  while (size < 2 * n) size <<= 1;

  std::vector<double> a(size, 0.0);
  std::vector<double> b(size, 0.0);
  std::copy(coeffs.begin(), coeffs.end(), a.begin());
  std::copy(x.begin(), x.end(), b.begin());

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> fa;
  std::vector<std::complex<double>> fb;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  std::vector<double> full;
  fft.inv(full, fa);
  full.resize(n);
  return full;
}

DenseMatrix LowerToeplitz(std::span<const double> coeffs) {
  const std::size_t n = coeffs.size();
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) out(i, j) = coeffs[i - j];
  }
  return out;
}

absl::StatusOr<DenseMatrix> ParseMatrixCsv(absl::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t line_number = 0;
  std::size_t pending_blank = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    line = absl::StripAsciiWhitespace(line);
    if (line.empty()) {
      ++pending_blank;
      continue;
    }
    if (pending_blank > 0 && !rows.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("blank line inside matrix before line ", line_number));
    }
    pending_blank = 0;
    std::vector<double> row;
    for (absl::string_view field : absl::StrSplit(line, ',')) {
      double value = 0.0;
      if (!absl::SimpleAtod(field, &value) || !std::isfinite(value)) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_number, ": cannot parse '", field,
                         "' as a finite number"));
      }
      row.push_back(value);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, " has ", row.size(),
                       " fields, expected ", rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return absl::InvalidArgumentError("matrix CSV is empty");
  return DenseMatrix::FromRows(rows);
}

absl::StatusOr<DenseMatrix> ReadMatrixCsv(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError("failed reading matrix stream");
  return ParseMatrixCsv(buffer.str());
}

absl::StatusOr<DenseMatrix> ReadMatrixCsvFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return ReadMatrixCsv(in);
}

void WriteMatrixCsv(std::ostream& out, const DenseMatrix& a) {
  char buf[32];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace contcount
