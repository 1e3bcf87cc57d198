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

#include "combcert/comb.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace combcert {

namespace {

SpaceList pick(const SpaceList& spaces, const std::vector<std::string>& labels) {
  SpaceList out;
  for (const auto& l : labels) {
    for (const auto& s : spaces) {
      if (s.label == l) out.push_back(s);
    }
  }
  return out;
}

LabeledOperator with_trivial_ends(const LabeledOperator& x) {
  return tensor(tensor(LabeledOperator::identity({{kTesterStart, 1}}), x),
                LabeledOperator::identity({{kTesterEnd, 1}}));
}

std::vector<std::string> tester_sequence(const Tester& t) {
  std::vector<std::string> seq{kTesterStart};
  seq.insert(seq.end(), t.uses.begin(), t.uses.end());
  seq.push_back(kTesterEnd);
  return seq;
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& s) {
  const EigDecomposition eig = herm_eig(s);
  RealVector w(eig.values.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (eig.values(k) <= 0.0) {
      throw Error(ErrorCode::kSingular, "inverse_sqrt: singular input");
    }
    w(k) = 1.0 / std::sqrt(eig.values(k));
  }
  return eig.vectors * w.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

LabeledOperator link_product(const LabeledOperator& x, const LabeledOperator& y) {
  std::vector<std::string> x_only, shared, y_only;
  for (const auto& s : x.spaces()) {
    if (y.has_label(s.label)) {
      if (y.dim_of(s.label) != s.dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "link_product: label '" + s.label + "' has dimension " +
                        std::to_string(s.dim) + " vs " +
                        std::to_string(y.dim_of(s.label)));
      }
      shared.push_back(s.label);
    } else {
      x_only.push_back(s.label);
    }
  }
  for (const auto& s : y.spaces()) {
    if (!x.has_label(s.label)) y_only.push_back(s.label);
  }
  if (shared.empty()) return tensor(x, y);

  std::vector<std::string> xo = x_only;
  xo.insert(xo.end(), shared.begin(), shared.end());
  std::vector<std::string> yo = shared;
  yo.insert(yo.end(), y_only.begin(), y_only.end());
  const LabeledOperator xp = x.permuted(xo);
  const LabeledOperator yp = y.permuted(yo);

  const auto dx = static_cast<Eigen::Index>(total_dim(pick(x.spaces(), x_only)));
  const auto ds = static_cast<Eigen::Index>(total_dim(pick(x.spaces(), shared)));
  const auto dy = static_cast<Eigen::Index>(total_dim(pick(y.spaces(), y_only)));

  // Xm[(x,x'),(b,a)] = X[(x,b),(x',a)],  Ym[(b,a),(y,y')] = Y[(b,y),(a,y')].
  ComplexMatrix xm(dx * dx, ds * ds);
  for (Eigen::Index i = 0; i < dx; ++i) {
    for (Eigen::Index b = 0; b < ds; ++b) {
      for (Eigen::Index ip = 0; ip < dx; ++ip) {
        for (Eigen::Index a = 0; a < ds; ++a) {
          xm(i * dx + ip, b * ds + a) = xp.matrix()(i * ds + b, ip * ds + a);
        }
      }
    }
  }
  ComplexMatrix ym(ds * ds, dy * dy);
  for (Eigen::Index b = 0; b < ds; ++b) {
    for (Eigen::Index j = 0; j < dy; ++j) {
      for (Eigen::Index a = 0; a < ds; ++a) {
        for (Eigen::Index jp = 0; jp < dy; ++jp) {
          ym(b * ds + a, j * dy + jp) = yp.matrix()(b * dy + j, a * dy + jp);
        }
      }
    }
  }
  const ComplexMatrix rm = xm * ym;
  ComplexMatrix r(dx * dy, dx * dy);
  for (Eigen::Index i = 0; i < dx; ++i) {
    for (Eigen::Index ip = 0; ip < dx; ++ip) {
      for (Eigen::Index j = 0; j < dy; ++j) {
        for (Eigen::Index jp = 0; jp < dy; ++jp) {
          r(i * dy + j, ip * dy + jp) = rm(i * dx + ip, j * dy + jp);
        }
      }
    }
  }
  SpaceList spaces = pick(x.spaces(), x_only);
  const SpaceList ys = pick(y.spaces(), y_only);
  spaces.insert(spaces.end(), ys.begin(), ys.end());
  return LabeledOperator(std::move(r), std::move(spaces));
}

CombCheck certify_comb(const LabeledOperator& x,
                       const std::vector<std::string>& sequence, double tol) {
  CombCheck out;
  if (sequence.size() % 2 != 0 || sequence.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "comb sequence must have even, non-zero length");
  }
  const std::set<std::string> seq_set(sequence.begin(), sequence.end());
  if (seq_set.size() != sequence.size() || sequence.size() != x.spaces().size()) {
    throw Error(ErrorCode::kUnknownLabel,
                "comb sequence must list every subsystem exactly once");
  }
  for (const auto& l : sequence) x.dim_of(l);

  if (!is_hermitian(x.matrix(), 1e-8)) {
    out.level = -1;
    out.message = "operator is not Hermitian";
    out.min_eigenvalue = NAN;
    return out;
  }
  const EigDecomposition eig = herm_eig(x.matrix());
  out.min_eigenvalue = eig.values(0);
  const double scale = std::max({1.0, std::abs(eig.values(0)),
                                 std::abs(eig.values(eig.values.size() - 1))});
  if (eig.values(0) < -kPsdTol * scale) {
    out.level = -1;
    out.message = "not positive semidefinite: min eigenvalue " +
                  std::to_string(eig.values(0));
    return out;
  }

  const std::size_t n = sequence.size() / 2;
  LabeledOperator cur = x;
  out.chain.push_back(cur);
  for (std::size_t j = n; j >= 1; --j) {
    const std::string& out_label = sequence[2 * j - 1];
    const std::string& in_label = sequence[2 * j - 2];
    const LabeledOperator y = partial_trace(cur, {out_label});
    const double din = static_cast<double>(y.dim_of(in_label));
    const LabeledOperator z =
        (Complex(1.0 / din, 0.0)) * partial_trace(y, {in_label});
    const LabeledOperator iz =
        tensor(LabeledOperator::identity({{in_label, y.dim_of(in_label)}}), z);
    const double res = frobenius_distance(y, iz);
    const double bound = tol * std::max(1.0, y.matrix().norm());
    out.residual = std::max(out.residual, res);
    if (res > bound) {
      out.level = static_cast<int>(j);
      out.message = "level " + std::to_string(j) + ": tr_" + out_label +
                    " X is not I_" + in_label + " ⊗ X^(" +
                    std::to_string(j - 1) + "), residual " + std::to_string(res);
      out.chain.clear();
      return out;
    }
    cur = z;
    if (j > 1) out.chain.push_back(cur);
  }
  const double last = std::abs(cur.matrix()(0, 0) - 1.0);
  out.residual = std::max(out.residual, last);
  if (last > tol) {
    out.level = 0;
    out.message = "final scalar X^(0) = " + std::to_string(cur.matrix()(0, 0).real()) +
                  " differs from 1";
    out.chain.clear();
    return out;
  }
  out.ok = true;
  out.level = -2;
  return out;
}

Comb make_comb(LabeledOperator x, std::vector<std::string> sequence,
               double tol) {
  CombCheck check = certify_comb(x, sequence, tol);
  if (!check.ok) {
    throw Error(check.level == -1 ? ErrorCode::kNotPositive
                                  : ErrorCode::kInvalidArgument,
                "not a comb: " + check.message);
  }
  return {std::move(x), std::move(sequence), std::move(check.chain)};
}

TesterCheck validate_tester(const Tester& t, double tol) {
  TesterCheck out;
  if (t.outcomes.empty()) {
    out.message = "tester has no outcomes";
    return out;
  }
  out.min_eigenvalue = INFINITY;
  for (std::size_t i = 0; i < t.outcomes.size(); ++i) {
    const auto& m = t.outcomes[i].matrix();
    if (!is_hermitian(m, 1e-8)) {
      out.failing_outcome = i;
      out.message = "outcome " + std::to_string(i) + " is not Hermitian";
      return out;
    }
    const double lmin = min_eigenvalue(m);
    out.min_eigenvalue = std::min(out.min_eigenvalue, lmin);
    if (!is_psd(m, kPsdTol)) {
      out.failing_outcome = i;
      out.message = "outcome " + std::to_string(i) +
                    " is not PSD: min eigenvalue " + std::to_string(lmin);
      return out;
    }
  }
  LabeledOperator sum = t.outcomes.front();
  for (std::size_t i = 1; i < t.outcomes.size(); ++i) sum = sum + t.outcomes[i];
  out.comb = certify_comb(with_trivial_ends(sum), tester_sequence(t), tol);
  out.ok = out.comb.ok;
  out.message = out.ok ? "" : "outcome sum is not a comb: " + out.comb.message;
  return out;
}

std::vector<double> success_probability(const Tester& t,
                                        const LabeledOperator& network) {
  std::vector<double> p;
  p.reserve(t.outcomes.size());
  for (const auto& ti : t.outcomes) {
    const LabeledOperator r = link_product(ti, network);
    if (r.dim() != 1) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "tester and network do not contract to a scalar");
    }
    p.push_back(r.matrix()(0, 0).real());
  }
  return p;
}

std::vector<std::string> use_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= n; ++j) {
    out.push_back("A" + std::to_string(j));
    out.push_back("B" + std::to_string(j));
  }
  return out;
}

LabeledOperator choi_power(const Channel& ch, const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "choi_power: label count mismatch");
  }
  LabeledOperator out = LabeledOperator::scalar(1.0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    out = tensor(out, choi_from_kraus(ch, b[j], a[j]));
  }
  return out;
}

std::vector<double> success_probability(const Tester& t, const Channel& ch) {
  std::vector<std::string> a, b;
  for (std::size_t j = 0; j < t.n(); ++j) {
    a.push_back(t.uses[2 * j]);
    b.push_back(t.uses[2 * j + 1]);
  }
  for (std::size_t j = 0; j < t.n(); ++j) {
    const auto& o = t.outcomes.front();
    if (o.dim_of(a[j]) != ch.d_in || o.dim_of(b[j]) != ch.d_out) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "tester use " + std::to_string(j + 1) +
                      " does not match the channel dimensions");
    }
  }
  return success_probability(t, choi_power(ch, a, b));
}

Comb random_comb(const SpaceList& sequence, std::size_t mem_dim, Rng& rng) {
  if (sequence.size() % 2 != 0 || sequence.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "random_comb: sequence length must be even and non-zero");
  }
  const std::size_t n = sequence.size() / 2;
  auto mem = [](std::size_t j) { return "#m" + std::to_string(j); };
  LabeledOperator acc = LabeledOperator::scalar(1.0);
  for (std::size_t j = 1; j <= n; ++j) {
    const Space& in = sequence[2 * j - 2];
    const Space& out = sequence[2 * j - 1];
    const std::size_t m_in = (j == 1) ? 1 : mem_dim;
    const std::size_t m_out = (j == n) ? 1 : mem_dim;
    const std::size_t d_in = in.dim * m_in;
    const std::size_t d_out = out.dim * m_out;
    const std::size_t rank = std::max<std::size_t>(2, (d_in + d_out - 1) / d_out);
    const Channel ch = random_channel(d_in, d_out, rank, rng);
    const LabeledOperator c = choi_from_kraus(ch);
    LabeledOperator labeled(c.matrix(), {{out.label, out.dim},
                                         {mem(j), m_out},
                                         {in.label, in.dim},
                                         {mem(j - 1), m_in}});
    // Dimension-1 memory ends carry no information; drop them.
    LabelSet trivial;
    if (j == 1) trivial.insert(mem(0));
    if (j == n) trivial.insert(mem(j));
    if (!trivial.empty()) labeled = partial_trace(labeled, trivial);
    acc = link_product(acc, labeled);
  }
  std::vector<std::string> labels = labels_of(sequence);
  LabeledOperator op = acc.permuted(labels);
  op.matrix() = hermitian_part(op.matrix());
  return make_comb(std::move(op), std::move(labels));
}

std::vector<ComplexMatrix> random_povm(std::size_t d, std::size_t outcomes,
                                       Rng& rng) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(d),
                                        static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < outcomes; ++k) {
    const ComplexMatrix a = ginibre(d, d, rng);
    g.push_back(a * a.adjoint());
    s += g.back();
  }
  const ComplexMatrix w = inverse_sqrt(hermitian_part(s));
  for (auto& e : g) e = hermitian_part(w * e * w);
  return g;
}

Tester prepare_measure_tester(const ComplexMatrix& rho_ar,
                              const std::vector<ComplexMatrix>& povm_br,
                              std::size_t d_a, std::size_t d_b, std::size_t d_r,
                              const std::string& a_label,
                              const std::string& b_label) {
  const std::string r_label = "#R";
  const LabeledOperator rho(rho_ar, {{a_label, d_a}, {r_label, d_r}});
  Tester t;
  t.uses = {a_label, b_label};
  for (const auto& m : povm_br) {
    const LabeledOperator mt(m.transpose(), {{b_label, d_b}, {r_label, d_r}});
    t.outcomes.push_back(link_product(rho, mt).permuted({a_label, b_label}));
  }
  return t;
}

Tester random_tester(std::size_t n, std::size_t d_a, std::size_t d_b,
                     std::size_t outcomes, Rng& rng) {
  SpaceList seq{{kTesterStart, 1}};
  const auto uses = use_labels(n);
  for (std::size_t j = 0; j < n; ++j) {
    seq.push_back({uses[2 * j], d_a});
    seq.push_back({uses[2 * j + 1], d_b});
  }
  seq.push_back({kTesterEnd, 1});
  const Comb y = random_comb(seq, std::max(d_a, d_b), rng);
  const LabeledOperator core = partial_trace(y.op, {kTesterStart, kTesterEnd});
  const ComplexMatrix root = psd_sqrt(core.matrix());
  Tester t;
  t.uses = uses;
  for (const auto& e : random_povm(core.dim(), outcomes, rng)) {
    t.outcomes.emplace_back(hermitian_part(root * e * root), core.spaces());
  }
  return t;
}

}  // namespace combcert
