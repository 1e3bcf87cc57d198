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

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "combcert/error.hpp"

namespace combcert {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major so that vectorization is a plain view of
/// the storage.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance used for exact-algebra identities unless a check says
/// otherwise.
inline constexpr double kDefaultRelTol = 1e-9;

/// Spectral decomposition X = V diag(values) V^dagger of a Hermitian matrix.
/// Eigenvalues are ascending, eigenvectors are the columns of `vectors`.
struct EigDecomposition {
  RealVector values;
  ComplexMatrix vectors;
};

enum class EigMethod {
  kHouseholderQR,  // tridiagonalization + implicit QR
  kJacobi,         // cyclic complex Jacobi rotations
};

ComplexMatrix identity(std::size_t d);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Row-major flattening |X>> on (output ⊗ input).
ComplexVector vectorize(const ComplexMatrix& x);
ComplexMatrix devectorize(const ComplexVector& v, std::size_t rows,
                          std::size_t cols);

bool all_finite(const ComplexMatrix& x);
double hermiticity_residual(const ComplexMatrix& x);
bool is_hermitian(const ComplexMatrix& x, double rel_tol = 1e-8);
ComplexMatrix hermitian_part(const ComplexMatrix& x);

/// Throws kNotHermitian when ‖X − X†‖_F > 1e-8·max(1, ‖X‖_F).
EigDecomposition herm_eig(const ComplexMatrix& x,
                          EigMethod method = EigMethod::kHouseholderQR);

/// Cyclic Jacobi eigensolver; converges when the off-diagonal Frobenius mass
/// drops below 1e-13·‖X‖_F, gives up after `max_sweeps`.
EigDecomposition jacobi_eig(const ComplexMatrix& x, int max_sweeps = 100);

double min_eigenvalue(const ComplexMatrix& x);
double operator_norm(const ComplexMatrix& x);

/// Singular values from the spectrum of X†X, clipped at zero, descending.
RealVector singular_values(const ComplexMatrix& x);
double trace_norm(const ComplexMatrix& x);

/// Accepts X when λ_min(X) ≥ −tol·max(1, ‖X‖_op).
bool is_psd(const ComplexMatrix& x, double tol);

/// Inverts eigenvalues above rank_tol·λ_max and zeroes the rest.
ComplexMatrix pseudo_inverse(const ComplexMatrix& x, double rank_tol = 1e-8);

/// Orthogonal projector onto the span of eigenvectors with eigenvalue above
/// rank_tol·λ_max.
ComplexMatrix support_projector(const ComplexMatrix& x,
                                double rank_tol = 1e-8);

/// Matrix square root of a Hermitian PSD matrix (negative noise clipped).
ComplexMatrix psd_sqrt(const ComplexMatrix& x);

/// Orthonormal columns spanning {v : ‖Mv‖ ≤ tol·‖M‖_op·‖v‖}.
ComplexMatrix nullspace(const ComplexMatrix& m, double tol);

/// Numerical rank from singular values above rel_tol·σ_max.
std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol);

/// exp(iθH) for Hermitian H.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta);

/// ‖U†U − I‖_F.
double isometry_residual(const ComplexMatrix& v);

}  // namespace combcert
