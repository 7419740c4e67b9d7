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

#include "contcount/certificates.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace contcount {
namespace {

constexpr double kMinWeight = 1e-12;

bool IsZero(const DenseMatrix& a) {
  for (double v : a.values()) {
    if (v != 0.0) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<double> GammaLower(const DenseMatrix& a) {
  auto trace_norm = SchattenOne(a);
  if (!trace_norm.ok()) return trace_norm.status();
  return *trace_norm / std::sqrt(static_cast<double>(a.cols()));
}

double GammaUpper(const DenseMatrix& a) { return FrobeniusNorm(a); }

absl::StatusOr<DualCertificate> BuildSvdCertificate(const DenseMatrix& a) {
  if (a.empty() || IsZero(a)) {
    return absl::InvalidArgumentError(
        "SVD certificate needs a non-zero matrix");
  }
  auto svd = ComputeThinSvd(a);
  if (!svd.ok()) return svd.status();
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();

  DualCertificate cert;
  cert.z = (svd->u * svd->v.Transpose()).Scaled(std::sqrt(double(n)));
  cert.weights.resize(n + m);
  for (std::size_t i = 0; i < n; ++i) {
    cert.weights[i] = 1.0 / std::sqrt(2.0 * double(n));
  }
  for (std::size_t j = 0; j < m; ++j) {
    cert.weights[n + j] = 1.0 / std::sqrt(2.0 * double(m));
  }
  double trace = 0.0;
  for (double s : svd->singular_values) trace += s;
  cert.claimed_objective = trace / std::sqrt(double(m));
  return cert;
}

absl::StatusOr<CertificateCheck> VerifyCertificate(const DenseMatrix& a,
                                                   const DualCertificate& cert,
                                                   double tolerance) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (cert.z.rows() != n || cert.z.cols() != m ||
      cert.weights.size() != n + m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "certificate shape (Z ", cert.z.rows(), "x", cert.z.cols(), ", w ",
        cert.weights.size(), ") does not match a ", n, "x", m, " matrix"));
  }

  CertificateCheck check;
  bool weights_ok = true;
  double norm_sq = 0.0;
  for (std::size_t k = 0; k < n + m; ++k) {
    if (!(cert.weights[k] >= kMinWeight)) weights_ok = false;
    norm_sq += cert.weights[k] * cert.weights[k];
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(cert.weights[i] - cert.weights[0]) > tolerance) {
      weights_ok = false;
    }
  }
  if (std::abs(norm_sq - 1.0) > tolerance) weights_ok = false;

  DenseMatrix slack(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i) slack(i, i) = static_cast<double>(n);
  for (std::size_t j = 0; j < m; ++j) slack(n + j, n + j) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      slack(i, n + j) = -cert.z(i, j);
      slack(n + j, i) = -cert.z(i, j);
    }
  }
  auto min_eig = MinEigenvalueSymmetric(slack);
  if (!min_eig.ok()) return min_eig.status();
  check.min_eigenvalue = *min_eig;

  const double scale = 1.0 + FrobeniusNorm(cert.z);
  check.feasible = weights_ok && *min_eig >= -tolerance * scale;

  double objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      row += a(i, j) * cert.z(i, j) * cert.weights[n + j];
    }
    objective += cert.weights[i] * row;
  }
  check.objective = 2.0 * objective;
  return check;
}

double TraceObjective(const DenseMatrix& a, const DenseMatrix& z) {
  // Tr(A Z^T) = Tr(A^T Z) = sum_ij A_ij Z_ij for real matrices.
  double inner = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    inner += a.values()[k] * z.values()[k];
  }
  return 2.0 * inner /
         (2.0 * std::sqrt(static_cast<double>(a.rows() * a.cols())));
}

absl::StatusOr<DiagonalCertificate> BuildDiagonalCertificate(
    const DenseMatrix& a) {
  if (a.rows() != a.cols() || a.empty()) {
    return absl::InvalidArgumentError("diagonal certificate needs a square "
                                      "matrix");
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j && a(i, j) != 0.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("matrix has off-diagonal entry at (", i, ",", j,
                         ")"));
      }
    }
  }
  const double fro = FrobeniusNorm(a);
  if (fro == 0.0) {
    return absl::InvalidArgumentError("diagonal certificate needs a non-zero "
                                      "matrix");
  }
  DiagonalCertificate cert;
  cert.beta = 0.5;
  cert.y_matrix = a.Scaled(1.0 / (2.0 * fro));
  cert.y.resize(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cert.y[i] = a(i, i) * a(i, i) / (2.0 * fro * fro);
  }
  cert.claimed_objective = fro;
  return cert;
}

absl::StatusOr<CertificateCheck> VerifyDiagonalCertificate(
    const DenseMatrix& a, const DiagonalCertificate& cert, double tolerance) {
  const std::size_t n = a.rows();
  if (cert.y_matrix.rows() != n || cert.y_matrix.cols() != a.cols() ||
      cert.y.size() != a.cols()) {
    return absl::InvalidArgumentError("certificate shape does not match A");
  }
  CertificateCheck check;
  bool scalars_ok = cert.beta > 0.0;
  double total = cert.beta;
  for (double v : cert.y) {
    if (v < 0.0) scalars_ok = false;
    total += v;
  }
  if (std::abs(total - 1.0) > tolerance) scalars_ok = false;

  // diag(y) - Y^T Y / beta.
  const std::size_t m = a.cols();
  DenseMatrix schur(m, m);
  if (cert.beta > 0.0) {
    schur = (cert.y_matrix.Transpose() * cert.y_matrix)
                .Scaled(-1.0 / cert.beta);
  }
  for (std::size_t j = 0; j < m; ++j) schur(j, j) += cert.y[j];
  auto min_eig = MinEigenvalueSymmetric(schur);
  if (!min_eig.ok()) return min_eig.status();
  check.min_eigenvalue = *min_eig;
  check.feasible = scalars_ok && *min_eig >= -tolerance;

  double inner = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    inner += a.values()[k] * cert.y_matrix.values()[k];
  }
  check.objective = 2.0 * inner;
  return check;
}

}  // namespace contcount
