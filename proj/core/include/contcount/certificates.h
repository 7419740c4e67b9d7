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

#ifndef CONTCOUNT_CERTIFICATES_H_
#define CONTCOUNT_CERTIFICATES_H_

#include <vector>

#include "absl/status/statusor.h"
#include "contcount/linalg.h"

namespace contcount {

// gamma_F(A) = min over A = L R of ||L||_F ||R||_{1->2}. For A of size n x m,
//   ||A||_1 / sqrt(m) <= gamma_F(A) <= ||A||_F.
absl::StatusOr<double> GammaLower(const DenseMatrix& a);
double GammaUpper(const DenseMatrix& a);

// A point of the dual gamma_F program
//   max  w^T (A^ o Z^) w
//   s.t. diag(n I_n, I_m) >= Z^,  w > 0,  ||w||_2 = 1,  w_1 = alpha 1_n,
// where X^ denotes the symmetric block matrix [[0, X], [X^T, 0]]. Only the
// off-diagonal block `z` (n x m) is stored.
struct DualCertificate {
  std::vector<double> weights;  // length n + m
  DenseMatrix z;
  double claimed_objective = 0.0;
};

struct CertificateCheck {
  bool feasible = false;
  double objective = 0.0;
  // Smallest eigenvalue of the slack matrix that must be PSD.
  double min_eigenvalue = 0.0;
};

// w = (1_n / sqrt(n), 1_m / sqrt(m)) / sqrt(2) and Z = sqrt(n) U V^T for the
// thin SVD A = U S V^T. Its objective is ||A||_1 / sqrt(m).
absl::StatusOr<DualCertificate> BuildSvdCertificate(const DenseMatrix& a);

// Feasible when
//  * every weight is >= 1e-12, the first n are equal and ||w||_2 = 1
//    (to `tolerance`), and
//  * [[n I, -Z], [-Z^T, I]] has smallest eigenvalue >= -tolerance (1 + ||Z||_F).
// The objective 2 w_1^T (A o Z) w_2 is reported whether or not the point is
// feasible. kInvalidArgument on shape mismatch.
absl::StatusOr<CertificateCheck> VerifyCertificate(
    const DenseMatrix& a, const DualCertificate& cert,
    double tolerance = 1e-9);

// (1 / (2 sqrt(n m))) Tr(A Z^T + A^T Z); equals the verified objective of a
// certificate with the uniform weights above.
double TraceObjective(const DenseMatrix& a, const DenseMatrix& z);

// Certificate for a square diagonal A in the (beta, Y, y) form of the dual:
//   beta + sum(y) = 1,  [[beta I, -Y], [-Y^T, diag(y)]] PSD,
// objective Tr(A Y^T) + Tr(A^T Y). The construction beta = 1/2,
// Y = A / (2 ||A||_F), y_i = A_ii^2 / (2 ||A||_F^2) reaches ||A||_F.
struct DiagonalCertificate {
  double beta = 0.0;
  DenseMatrix y_matrix;
  std::vector<double> y;
  double claimed_objective = 0.0;
};

absl::StatusOr<DiagonalCertificate> BuildDiagonalCertificate(
    const DenseMatrix& a);

// Checks beta + sum(y) = 1, y >= 0, beta > 0 and the Schur complement
// diag(y) - Y^T Y / beta >= -tolerance.
absl::StatusOr<CertificateCheck> VerifyDiagonalCertificate(
    const DenseMatrix& a, const DiagonalCertificate& cert,
    double tolerance = 1e-9);

}  // namespace contcount

#endif  // CONTCOUNT_CERTIFICATES_H_
