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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "combcert/linalg.hpp"

namespace combcert {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigDecomposition jacobi_eig(const ComplexMatrix& x, int max_sweeps) {
  if (x.rows() != x.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "jacobi_eig: not square");
  }
  if (!is_hermitian(x, 1e-8)) {
    throw Error(ErrorCode::kNotHermitian, "jacobi_eig: input not Hermitian");
  }
  const Eigen::Index n = x.rows();
  ComplexMatrix a = hermitian_part(x);
  ComplexMatrix v = identity(static_cast<std::size_t>(n));
  const double target = 1e-13 * a.norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > max_sweeps) {
      throw Error(ErrorCode::kNotConverged,
                  "jacobi_eig: no convergence after " +
                      std::to_string(max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Phase e^{-iφ} on column q makes a(p,q) real; then a real rotation
        // annihilates it.
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * mag);
        const double t = (zeta >= 0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Rotation W acting on columns (p, q):
        //   W = [[c, s], [-s·conj(phase), c·conj(phase)]]
        const Complex w00 = c;
        const Complex w01 = s;
        const Complex w10 = -s * std::conj(phase);
        const Complex w11 = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * w00 + akq * w10;
          a(k, q) = akp * w01 + akq * w11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(w00) * apk + std::conj(w10) * aqk;
          a(q, k) = std::conj(w01) * apk + std::conj(w11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * w00 + vkq * w10;
          v(k, q) = vkp * w01 + vkq * w11;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });
  EigDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

}  // namespace combcert
