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

#include "combcert/net.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "combcert/error.hpp"
#include "combcert/labeled_operator.hpp"
#include "combcert/parallel.hpp"

namespace combcert {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t v) { return static_cast<Idx>(v); }

bool even_ok(const NetParams& p) {
  return p.d1 >= 1 && p.d2 >= 1 && p.r >= 1 && p.r * p.d2 >= p.d1 &&
         p.r <= p.d1 * p.d2;
}

bool odd_ok(const NetParams& p, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (p.d2 < 3 || p.d2 % 2 == 0) return fail("odd mode needs odd d2 >= 3");
  if (p.r < 2) return fail("odd mode needs r >= 2");
  if (p.r * (p.d2 - 1) >= 2 * p.d1) return fail("odd mode needs r(d2-1) < 2d1");
  if (p.r * p.d2 < 2 * p.d1) return fail("odd mode needs r*d2 >= 2d1");
  const std::size_t a = p.r * (p.d2 - 1) / 2;
  const std::size_t eta = p.d1 - a;
  if (eta < 1 || eta > p.r / 2) {
    return fail("odd mode needs 1 <= d1 - r(d2-1)/2 <= floor(r/2)");
  }
  return true;
}

// Stack the r blocks K_i of an (r·d2) × d1 matrix.
std::vector<ComplexMatrix> blocks_of(const ComplexMatrix& v, std::size_t r,
                                     std::size_t d2) {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(v.middleRows(ix(i * d2), ix(d2)));
  return out;
}

ComplexMatrix gram_of(const std::vector<ComplexMatrix>& k) {
  const Idx r = ix(k.size());
  ComplexMatrix g(r, r);
  for (Idx i = 0; i < r; ++i) {
    for (Idx j = 0; j < r; ++j) g(i, j) = (k[i].adjoint() * k[j]).trace();
  }
  return g;
}

double trace_norm_of(const ComplexMatrix& x) { return trace_norm(x); }

}  // namespace

std::string_view to_string(NetMode m) {
  switch (m) {
    case NetMode::kAuto: return "auto";
    case NetMode::kEven: return "even";
    case NetMode::kOdd: return "odd";
  }
  return "?";
}

NetMode parse_net_mode(std::string_view s) {
  if (s == "auto") return NetMode::kAuto;
  if (s == "even") return NetMode::kEven;
  if (s == "odd") return NetMode::kOdd;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown net mode '" + std::string(s) + "' (auto|even|odd)");
}

NetMode resolve_mode(const NetParams& p) {
  if (p.mode != NetMode::kAuto) return p.mode;
  if (p.d2 % 2 == 1 && p.r * (p.d2 - 1) < 2 * p.d1) return NetMode::kOdd;
  return NetMode::kEven;
}

NetMode validate(const NetParams& p) {
  if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0,1]");
  }
  const NetMode m = resolve_mode(p);
  if (m == NetMode::kEven) {
    if (!even_ok(p)) {
      throw Error(ErrorCode::kRegimeViolation,
                  "even mode needs d1/d2 <= r <= d1*d2");
    }
  } else {
    std::string why;
    if (!odd_ok(p, &why)) throw Error(ErrorCode::kRegimeViolation, why);
  }
  return m;
}

EpsilonRegime epsilon_regime(double epsilon) {
  return {epsilon < 1e-4, epsilon <= 1e-2};
}

OddDims odd_dims(std::size_t d1, std::size_t d2, std::size_t r) {
  NetParams p;
  p.d1 = d1;
  p.d2 = d2;
  p.r = r;
  std::string why;
  if (!odd_ok(p, &why)) throw Error(ErrorCode::kRegimeViolation, why);
  OddDims o;
  o.a = r * (d2 - 1) / 2;
  o.a_prime = d1 - o.a;
  o.b0 = (d2 - 1) / 2;
  o.b1 = (d2 - 1) / 2;
  o.b_prime = 1;
  o.b0_prime = r / 2;
  o.b1_prime = r - r / 2;
  return o;
}

double BlockIsometry::gram_excess() const {
  double worst = -INFINITY;
  for (Idx i = 0; i < gram.rows(); ++i) {
    for (Idx j = 0; j < gram.cols(); ++j) {
      const double e = std::abs(gram(i, j)) - (i == j ? gram_bound : 0.0);
      worst = std::max(worst, e);
    }
  }
  return worst;
}

BlockIsometry build_block_isometry(const NetParams& p, Rng& rng) {
  const NetMode mode = validate(p);
  BlockIsometry b;
  b.mode = mode;
  b.d1 = p.d1;
  b.d2 = p.d2;
  b.r = p.r;
  const std::size_t big = p.r * p.d2;
  b.delta_prime = ComplexMatrix::Zero(ix(big), ix(p.d1));

  if (mode == NetMode::kEven) {
    b.gram_bound = 2.0 * static_cast<double>(p.d1) / static_cast<double>(p.r);
    // Haar isometry, then an ancilla rotation that diagonalizes the Gram
    // matrix; resample until its largest eigenvalue fits the bound.
    for (b.attempts = 1; b.attempts <= p.budget; ++b.attempts) {
      const ComplexMatrix v = haar_isometry(p.d1, big, rng);
      const ComplexMatrix g = gram_of(blocks_of(v, p.r, p.d2));
      const EigDecomposition eig = herm_eig(hermitian_part(g));
      if (eig.values.maxCoeff() > b.gram_bound * (1.0 + 1e-12)) continue;
      const ComplexMatrix w = eig.vectors.transpose();
      b.v0hat = kron(w, identity(p.d2)) * v;
      break;
    }
    if (b.attempts > p.budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "no block isometry met the Gram bound within " +
                      std::to_string(p.budget) + " attempts");
    }
    for (std::size_t q = 0; q < big; ++q) b.twirl_rows.push_back(q);
    b.delta_local = ComplexMatrix::Zero(ix(big), ix(p.d1));
    for (std::size_t a = 0; a < p.d1; ++a) b.delta_local(ix(a), ix(a)) = 1.0;
  } else {
    const OddDims o = odd_dims(p.d1, p.d2, p.r);
    b.dims = o;
    b.gram_bound = 3.0 * static_cast<double>(p.d1) / static_cast<double>(p.r);
    b.attempts = 1;
    const std::size_t b_prime = o.b0;  // B index of |b′⟩
    // V₀: H_a onto H_b0 ⊗ anc (unitary, so the Gram is ((d2−1)/2)·I).
    const ComplexMatrix u0 = haar_unitary(o.a, rng);
    b.v0hat = ComplexMatrix::Zero(ix(big), ix(p.d1));
    for (std::size_t anc = 0; anc < p.r; ++anc) {
      for (std::size_t bb = 0; bb < o.b0; ++bb) {
        const std::size_t local = anc * o.b0 + bb;
        b.v0hat.row(ix(anc * p.d2 + bb)).head(ix(o.a)) = u0.row(ix(local));
      }
    }
    // V₀′: z_i ↦ |b′⟩|i⟩_anc; Δ′: z_i ↦ |b′⟩|⌊r/2⌋+i⟩_anc.
    for (std::size_t i = 0; i < o.a_prime; ++i) {
      b.v0hat(ix(i * p.d2 + b_prime), ix(o.a + i)) = 1.0;
      b.delta_prime(ix((o.b0_prime + i) * p.d2 + b_prime), ix(o.a + i)) = 1.0;
    }
    // Δ: H_a onto H_b1 ⊗ anc, where U acts.
    for (std::size_t anc = 0; anc < p.r; ++anc) {
      for (std::size_t bb = 0; bb < o.b1; ++bb) {
        b.twirl_rows.push_back(anc * p.d2 + b_prime + 1 + bb);
      }
    }
    b.delta_local = ComplexMatrix::Zero(ix(o.a), ix(p.d1));
    for (std::size_t a = 0; a < o.a; ++a) b.delta_local(ix(a), ix(a)) = 1.0;
  }
  b.kraus = blocks_of(b.v0hat, p.r, p.d2);
  b.gram = gram_of(b.kraus);
  return b;
}

ComplexMatrix rotated_delta(const BlockIsometry& b, const ComplexMatrix& u) {
  if (static_cast<std::size_t>(u.rows()) != b.twirl_dim() || u.rows() != u.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "U must be square of size " + std::to_string(b.twirl_dim()));
  }
  const ComplexMatrix local = u * b.delta_local;
  ComplexMatrix out = ComplexMatrix::Zero(ix(b.r * b.d2), ix(b.d1));
  for (std::size_t q = 0; q < b.twirl_rows.size(); ++q) {
    out.row(ix(b.twirl_rows[q])) = local.row(ix(q));
  }
  return out;
}

NetIsometry build_net_isometry(const NetParams& p, const ComplexMatrix& u,
                               const BlockIsometry& blocks) {
  const double a0 = std::sqrt(1.0 - p.epsilon * p.epsilon);
  const double a1 = p.epsilon;
  const ComplexMatrix ud = rotated_delta(blocks, u) + blocks.delta_prime;
  NetIsometry out;
  out.anc_dim = blocks.r;
  ComplexMatrix head, tail;  // the two parts in the final layout
  if (blocks.mode == NetMode::kEven) {
    // anc ⊗ flag ⊗ B, flag 0 carrying V₀ and flag 1 carrying UΔ.
    out.out_dim = 2 * blocks.d2;
    const Idx rows = ix(blocks.r * out.out_dim);
    head = ComplexMatrix::Zero(rows, ix(blocks.d1));
    tail = ComplexMatrix::Zero(rows, ix(blocks.d1));
    for (std::size_t anc = 0; anc < blocks.r; ++anc) {
      const Idx src = ix(anc * blocks.d2), n = ix(blocks.d2);
      head.middleRows(ix(anc * out.out_dim), n) = blocks.v0hat.middleRows(src, n);
      tail.middleRows(ix(anc * out.out_dim + blocks.d2), n) = ud.middleRows(src, n);
    }
  } else {
    out.out_dim = blocks.d2;
    head = blocks.v0hat;
    tail = ud;
  }
  out.orthogonality_residual = (head.adjoint() * tail).norm();
  out.v = a0 * head + a1 * tail;
  out.isometry_residual = isometry_residual(out.v);
  out.channel = channel_from_isometry(out.v, out.anc_dim);
  out.kraus_rank = kraus_rank(out.channel);
  return out;
}

ComplexMatrix f_operator(const BlockIsometry& b, const ComplexMatrix& ux,
                         const ComplexMatrix& uy) {
  const ComplexVector left = vectorize(b.v0hat);
  const ComplexVector right = vectorize(rotated_delta(b, ux) - rotated_delta(b, uy));
  const LabeledOperator full(left * right.adjoint(),
                             {{"anc", b.r}, {"B", b.d2}, {"A", b.d1}});
  return partial_trace(full, {"anc"}).matrix() / static_cast<double>(b.d1);
}

ComplexMatrix f_operator_blockwise(const BlockIsometry& b,
                                   const ComplexMatrix& ux,
                                   const ComplexMatrix& uy) {
  const auto kx = blocks_of(rotated_delta(b, ux), b.r, b.d2);
  const auto ky = blocks_of(rotated_delta(b, uy), b.r, b.d2);
  const Idx n = ix(b.d1 * b.d2);
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < b.r; ++i) {
    f.noalias() += vectorize(b.kraus[i]) * vectorize(kx[i] - ky[i]).adjoint();
  }
  return f / static_cast<double>(b.d1);
}

MomentReport moment_audit(const BlockIsometry& b, std::size_t samples,
                          std::uint64_t seed, std::size_t jobs) {
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "need >= 2 samples");
  std::vector<double> m2(samples), m4(samples);
  parallel_for(samples, jobs, [&](std::size_t s) {
    Rng rng(derive_seed(seed, s));
    const ComplexMatrix ux = haar_unitary(b.twirl_dim(), rng);
    const ComplexMatrix uy = haar_unitary(b.twirl_dim(), rng);
    const ComplexMatrix f = f_operator_blockwise(b, ux, uy);
    const ComplexMatrix ff = f.adjoint() * f;
    m2[s] = ff.trace().real();
    m4[s] = ff.squaredNorm();
  });
  auto stats = [&](const std::vector<double>& x, double& mean, double& se) {
    double s = 0.0;
    for (double v : x) s += v;
    mean = s / static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size() - 1);
    se = std::sqrt(var / static_cast<double>(x.size()));
  };
  MomentReport rep;
  rep.samples = samples;
  stats(m2, rep.mean2, rep.stderr2);
  stats(m4, rep.mean4, rep.stderr4);
  const double d1 = static_cast<double>(b.d1), r = static_cast<double>(b.r);
  // With a diagonal Gram, E tr|F|² = (1/d1²)·Σ_i g_i·2E‖K_{x,i}‖², and
  // E‖K_{x,i}‖² = ‖Δ‖²/r since each ancilla owns 1/r of the U rows.
  double kk = 0.0;
  for (const auto& k : b.kraus) kk += k.squaredNorm();
  rep.expected2 = 2.0 * kk * b.delta_local.squaredNorm() / (d1 * d1 * r);
  rep.bound4 = 288.0 / (r * r * r);
  rep.pass2 = std::abs(rep.mean2 - rep.expected2) <= 4.0 * rep.stderr2;
  rep.pass4 = rep.mean4 <= rep.bound4 + 4.0 * rep.stderr4;
  return rep;
}

LipschitzReport lipschitz_audit(const BlockIsometry& b, std::size_t trials,
                                std::uint64_t seed, std::size_t jobs) {
  LipschitzReport rep;
  rep.trials = trials;
  rep.constant = std::sqrt(2.0 / static_cast<double>(b.d1));
  std::vector<double> ratio(trials, 0.0);
  std::vector<char> bad(trials, 0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const std::size_t k = b.twirl_dim();
    const ComplexMatrix ux = haar_unitary(k, rng);
    const ComplexMatrix uy = haar_unitary(k, rng);
    // θ log-uniform on [1e-3, 0.3].
    const double theta = 1e-3 * std::pow(300.0, rng.uniform());
    ComplexMatrix hx = random_hermitian(k, rng), hy = random_hermitian(k, rng);
    hx /= hx.norm();
    hy /= hy.norm();
    const ComplexMatrix vx = ux * unitary_exp(hx, theta);
    const ComplexMatrix vy = uy * unitary_exp(hy, theta);
    const double f0 = trace_norm_of(f_operator_blockwise(b, ux, uy));
    const double f1 = trace_norm_of(f_operator_blockwise(b, vx, vy));
    const double dist =
        std::sqrt((ux - vx).squaredNorm() + (uy - vy).squaredNorm());
    const double gap = std::abs(f1 - f0);
    ratio[t] = dist > 0.0 ? gap / dist : 0.0;
    bad[t] = gap > rep.constant * dist + 1e-10;
  });
  for (std::size_t t = 0; t < trials; ++t) {
    rep.max_ratio = std::max(rep.max_ratio, ratio[t]);
    rep.violations += bad[t] ? 1 : 0;
  }
  return rep;
}

SeparationReport separation_audit(const NetParams& p, const BlockIsometry& b,
                                  std::size_t pairs, std::uint64_t seed,
                                  std::size_t jobs) {
  SeparationReport rep;
  rep.pairs = pairs;
  rep.choi_threshold = 0.07 * p.epsilon;
  if (pairs == 0) return rep;
  struct One {
    double choi, f, inter, iso, orth, dtr, cross;
    std::size_t rank;
    bool chain_bad, out_ok;
  };
  std::vector<One> res(pairs);
  const double eps = p.epsilon;
  const double d1 = static_cast<double>(b.d1);
  parallel_for(pairs, jobs, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const ComplexMatrix u1 = haar_unitary(b.twirl_dim(), rng);
    const ComplexMatrix u2 = haar_unitary(b.twirl_dim(), rng);
    const NetIsometry n1 = build_net_isometry(p, u1, b);
    const NetIsometry n2 = build_net_isometry(p, u2, b);
    One o{};
    o.choi = choi_distance_lb(n1.channel, n2.channel);
    const ComplexMatrix f = f_operator_blockwise(b, u1, u2);
    o.f = trace_norm_of(f);
    o.inter = 2.0 * eps * std::sqrt(1.0 - eps * eps) * o.f - 2.0 * eps * eps;
    o.chain_bad = o.choi < o.inter - 1e-10;
    o.iso = std::max(n1.isometry_residual, n2.isometry_residual);
    o.orth = std::max(n1.orthogonality_residual, n2.orthogonality_residual);
    o.rank = std::max(n1.kraus_rank, n2.kraus_rank);
    o.out_ok = n1.channel.d_out == n1.out_dim && n1.channel.d_in == b.d1;
    // ‖tr_anc|Δ_U⟩⟩⟨⟨Δ_U|‖₁ = d1 and ‖X + X†‖₁ = 2‖X‖₁ for X = d1·F.
    const ComplexVector du = vectorize(rotated_delta(b, u1) + b.delta_prime);
    const LabeledOperator dd(du * du.adjoint(),
                             {{"anc", b.r}, {"B", b.d2}, {"A", b.d1}});
    o.dtr = std::abs(trace_norm_of(partial_trace(dd, {"anc"}).matrix()) - d1);
    // In even mode the flag qubit separates the two images, so X sits in
    // the off-diagonal flag block.
    ComplexMatrix x = d1 * f;
    if (b.mode == NetMode::kEven) {
      ComplexMatrix xf = ComplexMatrix::Zero(2 * x.rows(), 2 * x.cols());
      xf.topRightCorner(x.rows(), x.cols()) = x;
      x = xf;
    }
    o.cross = std::abs(trace_norm_of(x + x.adjoint()) - 2.0 * trace_norm_of(x));
    res[t] = o;
  });
  rep.min_choi = rep.min_f = rep.min_intermediate = INFINITY;
  for (const One& o : res) {
    rep.min_choi = std::min(rep.min_choi, o.choi);
    rep.min_f = std::min(rep.min_f, o.f);
    rep.min_intermediate = std::min(rep.min_intermediate, o.inter);
    rep.chain_violations += o.chain_bad ? 1 : 0;
    rep.max_kraus_rank = std::max(rep.max_kraus_rank, o.rank);
    rep.max_isometry_residual = std::max(rep.max_isometry_residual, o.iso);
    rep.max_orthogonality_residual = std::max(rep.max_orthogonality_residual, o.orth);
    rep.max_delta_trace_residual = std::max(rep.max_delta_trace_residual, o.dtr);
    rep.max_cross_residual = std::max(rep.max_cross_residual, o.cross);
    rep.outputs_ok = rep.outputs_ok && o.out_ok;
  }
  return rep;
}

}  // namespace combcert
