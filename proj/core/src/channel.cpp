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

#include "combcert/channel.hpp"

#include <cmath>
#include <string>

namespace combcert {

double Channel::trace_preservation_residual() const {
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(d_in),
                                        static_cast<Eigen::Index>(d_in));
  for (const auto& e : kraus) s += e.adjoint() * e;
  return (s - identity(d_in)).norm();
}

void Channel::validate() const {
  if (kraus.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "channel has no Kraus operators");
  }
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    const auto& e = kraus[k];
    if (static_cast<std::size_t>(e.rows()) != d_out ||
        static_cast<std::size_t>(e.cols()) != d_in) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "Kraus operator " + std::to_string(k) + " is " +
                      std::to_string(e.rows()) + "x" + std::to_string(e.cols()) +
                      ", expected " + std::to_string(d_out) + "x" +
                      std::to_string(d_in));
    }
    if (!all_finite(e)) {
      throw Error(ErrorCode::kInvalidArgument, "Kraus operator is not finite");
    }
    if (e.norm() == 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "Kraus operator " + std::to_string(k) + " is zero");
    }
  }
  const double res = trace_preservation_residual();
  if (res > 1e-9 * static_cast<double>(d_in)) {
    throw Error(ErrorCode::kNotIsometry,
                "not trace preserving: ‖ΣE†E − I‖_F = " + std::to_string(res));
  }
}

Channel make_channel(std::vector<ComplexMatrix> kraus) {
  if (kraus.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "channel has no Kraus operators");
  }
  Channel ch{static_cast<std::size_t>(kraus.front().cols()),
             static_cast<std::size_t>(kraus.front().rows()), std::move(kraus)};
  ch.validate();
  return ch;
}

Channel identity_channel(std::size_t d) { return make_channel({identity(d)}); }

Channel unitary_channel(const ComplexMatrix& u) { return make_channel({u}); }

Channel completely_depolarizing(std::size_t d) {
  std::vector<ComplexMatrix> ops;
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                            static_cast<Eigen::Index>(d));
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
      ops.push_back(std::move(e));
    }
  }
  return make_channel(std::move(ops));
}

Channel random_channel(std::size_t d_in, std::size_t d_out, std::size_t rank,
                       Rng& rng) {
  return channel_from_isometry(haar_isometry(d_in, rank * d_out, rng), rank);
}

LabeledOperator choi_from_kraus(const Channel& ch, const std::string& out,
                                const std::string& in) {
  const auto n = static_cast<Eigen::Index>(ch.d_in * ch.d_out);
  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  for (const auto& e : ch.kraus) {
    const ComplexVector v = vectorize(e);
    c.noalias() += v * v.adjoint();
  }
  return LabeledOperator(std::move(c), {{out, ch.d_out}, {in, ch.d_in}});
}

namespace {

// Largest-modulus entry made real positive; ties go to the first index.
void fix_phase(ComplexMatrix& e) {
  Eigen::Index best = 0;
  double mag = -1.0;
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const double a = std::abs(e.data()[k]);
    if (a > mag * (1.0 + 1e-12)) {
      mag = a;
      best = k;
    }
  }
  if (mag > 0.0) e *= std::conj(e.data()[best]) / mag;
}

}  // namespace

Channel kraus_from_choi(const LabeledOperator& choi, double rank_tol) {
  if (choi.spaces().size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Choi operator must carry exactly (output, input) spaces");
  }
  const std::size_t d_out = choi.spaces()[0].dim;
  const std::size_t d_in = choi.spaces()[1].dim;
  const EigDecomposition eig = herm_eig(choi.matrix());
  const Eigen::Index n = eig.values.size();
  const double lmax = eig.values(n - 1);
  if (eig.values(0) < -1e-9 * std::max(1.0, lmax)) {
    throw Error(ErrorCode::kNotPositive,
                "Choi has eigenvalue " + std::to_string(eig.values(0)));
  }
  const LabeledOperator marg = partial_trace(choi, {choi.spaces()[0].label});
  const double tp = (marg.matrix() - identity(d_in)).norm();
  if (tp > 1e-9 * static_cast<double>(d_in)) {
    throw Error(ErrorCode::kNotIsometry,
                "Choi marginal differs from identity by " + std::to_string(tp));
  }
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = n; k-- > 0;) {
    if (eig.values(k) <= rank_tol * lmax) break;
    ComplexVector v = std::sqrt(eig.values(k)) * eig.vectors.col(k);
    ComplexMatrix e = devectorize(v, d_out, d_in);
    fix_phase(e);
    ops.push_back(std::move(e));
  }
  return make_channel(std::move(ops));
}

StinespringIsometry stinespring(const Channel& ch) {
  const auto r = ch.kraus.size();
  const auto dout = static_cast<Eigen::Index>(ch.d_out);
  ComplexMatrix v(static_cast<Eigen::Index>(r) * dout,
                  static_cast<Eigen::Index>(ch.d_in));
  for (std::size_t i = 0; i < r; ++i) {
    v.middleRows(static_cast<Eigen::Index>(i) * dout, dout) = ch.kraus[i];
  }
  return {std::move(v), r};
}

Channel channel_from_isometry(const ComplexMatrix& v, std::size_t anc_dim) {
  if (anc_dim == 0 || static_cast<std::size_t>(v.rows()) % anc_dim != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "isometry rows " + std::to_string(v.rows()) +
                    " not divisible by ancilla dimension " +
                    std::to_string(anc_dim));
  }
  const double res = isometry_residual(v);
  if (res > 1e-8) {
    throw Error(ErrorCode::kNotIsometry,
                "‖V†V − I‖_F = " + std::to_string(res));
  }
  const auto dout = v.rows() / static_cast<Eigen::Index>(anc_dim);
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < anc_dim; ++i) {
    ComplexMatrix e = v.middleRows(static_cast<Eigen::Index>(i) * dout, dout);
    // A block that is identically zero contributes nothing to the channel.
    if (e.norm() > 0.0) ops.push_back(std::move(e));
  }
  return make_channel(std::move(ops));
}

std::size_t kraus_rank(const Channel& ch, double rank_tol) {
  const LabeledOperator c = choi_from_kraus(ch);
  const EigDecomposition eig = herm_eig(c.matrix());
  const double lmax = eig.values(eig.values.size() - 1);
  std::size_t r = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > rank_tol * lmax) ++r;
  }
  return r;
}

ComplexMatrix apply_channel(const Channel& ch, const ComplexMatrix& rho) {
  if (static_cast<std::size_t>(rho.rows()) != ch.d_in ||
      static_cast<std::size_t>(rho.cols()) != ch.d_in) {
    throw Error(ErrorCode::kDimensionMismatch,
                "apply_channel: input is " + std::to_string(rho.rows()) + "x" +
                    std::to_string(rho.cols()) + ", channel takes " +
                    std::to_string(ch.d_in));
  }
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(ch.d_out),
                                          static_cast<Eigen::Index>(ch.d_out));
  for (const auto& e : ch.kraus) out.noalias() += e * rho * e.adjoint();
  return out;
}

Channel compose(const Channel& second, const Channel& first) {
  if (second.d_in != first.d_out) {
    throw Error(ErrorCode::kDimensionMismatch, "compose: dimension mismatch");
  }
  std::vector<ComplexMatrix> ops;
  for (const auto& b : second.kraus) {
    for (const auto& a : first.kraus) {
      ComplexMatrix e = b * a;
      if (e.norm() > 0.0) ops.push_back(std::move(e));
    }
  }
  return make_channel(std::move(ops));
}

double choi_distance_lb(const Channel& ch1, const Channel& ch2) {
  if (ch1.d_in != ch2.d_in || ch1.d_out != ch2.d_out) {
    throw Error(ErrorCode::kDimensionMismatch,
                "choi_distance_lb: channels act on different spaces");
  }
  const ComplexMatrix diff =
      choi_from_kraus(ch1).matrix() - choi_from_kraus(ch2).matrix();
  return trace_norm(diff) / static_cast<double>(ch1.d_in);
}

}  // namespace combcert
