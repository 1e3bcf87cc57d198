// Copyright 2026 The combcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "combcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace combcert {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kUnknownLabel: return "unknown_label";
    case ErrorCode::kDuplicateLabel: return "duplicate_label";
    case ErrorCode::kNotHermitian: return "not_hermitian";
    case ErrorCode::kNotPositive: return "not_positive";
    case ErrorCode::kNotIsometry: return "not_isometry";
    case ErrorCode::kNotUnitary: return "not_unitary";
    case ErrorCode::kNotConverged: return "not_converged";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kRegimeViolation: return "regime_violation";
    case ErrorCode::kCapExceeded: return "cap_exceeded";
    case ErrorCode::kSingular: return "singular";
    case ErrorCode::kBudgetExceeded: return "budget_exceeded";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d),
                                 static_cast<Eigen::Index>(d));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index rb = b.rows();
  const Eigen::Index cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

ComplexVector vectorize(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix devectorize(const ComplexVector& v, std::size_t rows,
                          std::size_t cols) {
  if (static_cast<std::size_t>(v.size()) != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch,
                "devectorize: vector of length " + std::to_string(v.size()) +
                    " cannot fill " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
  return Eigen::Map<const ComplexMatrix>(v.data(),
                                         static_cast<Eigen::Index>(rows),
                                         static_cast<Eigen::Index>(cols));
}

bool all_finite(const ComplexMatrix& x) {
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const Complex z = x.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double hermiticity_residual(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) return INFINITY;
  return (x - x.adjoint()).norm();
}

bool is_hermitian(const ComplexMatrix& x, double rel_tol) {
  return hermiticity_residual(x) <= rel_tol * std::max(1.0, x.norm());
}

ComplexMatrix hermitian_part(const ComplexMatrix& x) {
  return 0.5 * (x + x.adjoint());
}

namespace {

void require_hermitian(const ComplexMatrix& x, const char* who) {
  if (x.rows() != x.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(who) + ": matrix is not square");
  }
  if (!is_hermitian(x, 1e-8)) {
    throw Error(ErrorCode::kNotHermitian,
                std::string(who) + ": residual ‖X−X†‖_F = " +
                    std::to_string(hermiticity_residual(x)));
  }
}

}  // namespace

EigDecomposition herm_eig(const ComplexMatrix& x, EigMethod method) {
  require_hermitian(x, "herm_eig");
  if (method == EigMethod::kJacobi) return jacobi_eig(x);
  if (x.rows() == 0) return {RealVector(0), ComplexMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitian_part(x)));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotConverged, "herm_eig: QR iteration failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& x) {
  require_hermitian(x, "min_eigenvalue");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitian_part(x)), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double operator_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  const RealVector s = singular_values(x);
  return s(0);
}

RealVector singular_values(const ComplexMatrix& x) {
  if (x.size() == 0) return RealVector(0);
  // Direct SVD: the X†X route squares the condition number and turns
  // round-off zeros into ~1e-8 singular values.
  const Eigen::MatrixXcd m = x;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

double trace_norm(const ComplexMatrix& x) {
  if (x.size() == 0) return 0.0;
  // Hermitian inputs (Choi differences) take the more accurate |λ| route.
  if (x.rows() == x.cols() &&
      hermiticity_residual(x) <= 1e-14 * std::max(1.0, x.norm())) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        Eigen::MatrixXcd(hermitian_part(x)), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  return singular_values(x).sum();
}

bool is_psd(const ComplexMatrix& x, double tol) {
  require_hermitian(x, "psd_check");
  if (x.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd(hermitian_part(x)), Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  const double scale = std::max(1.0, std::max(std::abs(ev(0)),
                                              std::abs(ev(ev.size() - 1))));
  return ev(0) >= -tol * scale;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& x, double rank_tol) {
  const EigDecomposition eig = herm_eig(x);
  const Eigen::Index n = eig.values.size();
  if (n == 0) return x;
  const double lmax = std::max(0.0, eig.values(n - 1));
  const double cut = rank_tol * lmax;
  if (eig.values(0) < -1e-8 * std::max(1.0, lmax)) {
    throw Error(ErrorCode::kNotPositive,
                "pseudo_inverse: eigenvalue " + std::to_string(eig.values(0)) +
                    " is negative beyond tolerance");
  }
  RealVector inv = RealVector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.values(k) > cut && lmax > 0) inv(k) = 1.0 / eig.values(k);
  }
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix support_projector(const ComplexMatrix& x, double rank_tol) {
  const EigDecomposition eig = herm_eig(x);
  const Eigen::Index n = eig.values.size();
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  if (n == 0) return p;
  const double cut = rank_tol * std::max(0.0, eig.values(n - 1));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.values(k) > cut) {
      p += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    }
  }
  return p;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& x) {
  const EigDecomposition eig = herm_eig(x);
  RealVector s = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * s.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix nullspace(const ComplexMatrix& m, double tol) {
  const Eigen::Index n = m.cols();
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix gram = hermitian_part(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver{Eigen::MatrixXcd(gram)};
  const RealVector& ev = solver.eigenvalues();
  const double op2 = std::max(0.0, ev(n - 1));
  const double cut = tol * tol * op2;
  Eigen::Index count = 0;
  while (count < n && ev(count) <= cut) ++count;
  // An all-zero M has op2 = 0 and every vector is null.
  if (op2 == 0.0) count = n;
  return solver.eigenvectors().leftCols(count);
}

std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd{Eigen::MatrixXcd(m)};
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta) {
  const EigDecomposition eig = herm_eig(h);
  ComplexVector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    phases(k) = std::polar(1.0, theta * eig.values(k));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

double isometry_residual(const ComplexMatrix& v) {
  return (v.adjoint() * v - identity(static_cast<std::size_t>(v.cols())))
      .norm();
}

}  // namespace combcert
