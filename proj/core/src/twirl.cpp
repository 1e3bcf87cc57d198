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

#include "combcert/twirl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "combcert/parallel.hpp"

namespace combcert {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < e; ++k) r *= b;
  return r;
}

std::vector<std::string> group_first_order(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= n; ++j) out.push_back("B" + std::to_string(j));
  for (std::size_t j = 1; j <= n; ++j) out.push_back("A" + std::to_string(j));
  return out;
}

// (Q ⊗ I_A)^{⊗n} on hard_spaces order.
ComplexMatrix frame_power(const HardInstanceSpec& spec, std::size_t n) {
  const ComplexMatrix one = kron(spec.frame, identity(spec.d1));
  ComplexMatrix out = ComplexMatrix::Ones(1, 1);
  for (std::size_t j = 0; j < n; ++j) out = kron(out, one);
  return out;
}

bool frame_is_identity(const HardInstanceSpec& spec) {
  return (spec.frame - identity(spec.d2)).norm() == 0.0;
}

}  // namespace

std::string_view to_string(TwirlMethod m) {
  switch (m) {
    case TwirlMethod::kExactCommutant: return "exact-commutant";
    case TwirlMethod::kWeingarten: return "weingarten";
    case TwirlMethod::kMonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

TwirlMethod parse_twirl_method(std::string_view s) {
  if (s == "exact" || s == "exact-commutant") return TwirlMethod::kExactCommutant;
  if (s == "weingarten") return TwirlMethod::kWeingarten;
  if (s == "mc" || s == "monte-carlo") return TwirlMethod::kMonteCarlo;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown twirl method '" + std::string(s) +
                  "' (expected exact|weingarten|mc)");
}

CommutantProjector::CommutantProjector(
    const std::vector<ComplexMatrix>& generators, double tol) {
  if (generators.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "commutant needs generators");
  }
  dim_ = static_cast<std::size_t>(generators.front().rows());
  const auto d2 = static_cast<Eigen::Index>(dim_ * dim_);
  ComplexMatrix h = ComplexMatrix::Zero(d2, d2);
  for (const auto& g : generators) {
    if (static_cast<std::size_t>(g.rows()) != dim_ ||
        static_cast<std::size_t>(g.cols()) != dim_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "commutant generators have inconsistent dimensions");
    }
    // vec(gXg†) = (g ⊗ ḡ) vec(X) for row-major vec.
    const ComplexMatrix t = kron(g, ComplexMatrix(g.conjugate()));
    h -= t + t.adjoint();
    h.diagonal().array() += 2.0;
  }
  const EigDecomposition eig = herm_eig(hermitian_part(h));
  const double lmax = std::max(0.0, eig.values(eig.values.size() - 1));
  const double cut = tol * tol * lmax;
  Eigen::Index count = 0;
  while (count < eig.values.size() && (lmax == 0.0 || eig.values(count) <= cut)) {
    ++count;
  }
  basis_ = eig.vectors.leftCols(count);
}

ComplexMatrix CommutantProjector::apply(const ComplexMatrix& x) const {
  const auto g = static_cast<Eigen::Index>(dim_);
  if (x.rows() != x.cols() || x.rows() % g != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "commutant projection: operator side " + std::to_string(x.rows()) +
                    " is not a multiple of " + std::to_string(g));
  }
  const Eigen::Index s = x.rows() / g;
  // R[(b,b'),(a,a')] = X[(b,a),(b',a')]
  ComplexMatrix r(g * g, s * s);
  for (Eigen::Index b = 0; b < g; ++b)
    for (Eigen::Index bp = 0; bp < g; ++bp)
      for (Eigen::Index a = 0; a < s; ++a)
        for (Eigen::Index ap = 0; ap < s; ++ap)
          r(b * g + bp, a * s + ap) = x(b * s + a, bp * s + ap);
  const ComplexMatrix p = basis_ * (basis_.adjoint() * r);
  ComplexMatrix out(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < g; ++b)
    for (Eigen::Index bp = 0; bp < g; ++bp)
      for (Eigen::Index a = 0; a < s; ++a)
        for (Eigen::Index ap = 0; ap < s; ++ap)
          out(b * s + a, bp * s + ap) = p(b * g + bp, a * s + ap);
  return out;
}

std::vector<ComplexMatrix> hard_action_generators(const HardInstanceSpec& spec,
                                                  std::size_t n,
                                                  std::size_t count, Rng& rng) {
  std::vector<ComplexMatrix> out;
  for (std::size_t c = 0; c < count; ++c) {
    const ComplexMatrix r = spec.rotation(haar_unitary(spec.k(), rng));
    ComplexMatrix g = ComplexMatrix::Ones(1, 1);
    for (std::size_t j = 0; j < n; ++j) g = kron(g, r);
    out.push_back(std::move(g));
  }
  return out;
}

bool exact_commutant_fits(std::size_t n, std::size_t d2) {
  std::size_t d = 1;
  for (std::size_t j = 0; j < n; ++j) {
    d *= d2;
    if (d > kCommutantCap) return false;
  }
  return true;
}

CommutantProjector hard_commutant(const HardInstanceSpec& spec, std::size_t n,
                                  std::uint64_t seed) {
  if (!exact_commutant_fits(n, spec.d2)) {
    throw Error(ErrorCode::kCapExceeded,
                "exact commutant needs d2^n <= " + std::to_string(kCommutantCap) +
                    " (d2=" + std::to_string(spec.d2) + ", n=" +
                    std::to_string(n) + "); use weingarten or mc");
  }
  Rng rng(seed);
  return CommutantProjector(hard_action_generators(spec, n, 4, rng));
}

ComplexMatrix commutant_twirl(const CommutantProjector& proj,
                              const ComplexMatrix& x, std::size_t n,
                              std::size_t d1, std::size_t d2) {
  const LabeledOperator lx(x, hard_spaces(n, d1, d2));
  const LabeledOperator gf = lx.permuted(group_first_order(n));
  const LabeledOperator tw(proj.apply(gf.matrix()), gf.spaces());
  return tw.permuted(labels_of(lx.spaces())).matrix();
}

std::vector<std::vector<std::size_t>> permutations(std::size_t i) {
  std::vector<std::size_t> p(i);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

ComplexMatrix permutation_gram(std::size_t i, std::size_t k) {
  const auto perms = permutations(i);
  const auto m = static_cast<Eigen::Index>(perms.size());
  ComplexMatrix g(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto& s = perms[static_cast<std::size_t>(a)];
    std::vector<std::size_t> sinv(i);
    for (std::size_t q = 0; q < i; ++q) sinv[s[q]] = q;
    for (Eigen::Index b = 0; b < m; ++b) {
      const auto& t = perms[static_cast<std::size_t>(b)];
      std::vector<bool> seen(i, false);
      std::size_t cycles = 0;
      for (std::size_t q = 0; q < i; ++q) {
        if (seen[q]) continue;
        ++cycles;
        for (std::size_t x = q; !seen[x]; x = sinv[t[x]]) seen[x] = true;
      }
      g(a, b) = std::pow(static_cast<double>(k), static_cast<double>(cycles));
    }
  }
  return g;
}

ComplexMatrix weingarten_twirl(std::size_t n, std::size_t i,
                               const HardInstanceSpec& spec) {
  if (i > n) {
    throw Error(ErrorCode::kInvalidArgument, "weingarten_twirl: i > n");
  }
  if (i > kWeingartenCap) {
    throw Error(ErrorCode::kCapExceeded,
                "weingarten_twirl enumerates S_i only for i <= " +
                    std::to_string(kWeingartenCap) + "; use exact or mc");
  }
  const std::size_t d1 = spec.d1, d2 = spec.d2, k = spec.k();
  const std::size_t pair = d1 * d2;
  const auto full = static_cast<Eigen::Index>(ipow(pair, n));

  // Work in the frame where V₀ and Δ are basis-aligned.
  HardInstanceSpec local = build_hard_isometry(d1, d2, 0.0, identity(k));
  const ComplexVector gam = gamma_state(n, i, local);
  ComplexMatrix out;
  if (i == 0) {
    out = gam * gam.adjoint();
  } else {
    const auto perms = permutations(i);
    const ComplexMatrix gp = pseudo_inverse(permutation_gram(i, k), 1e-10);
    const std::size_t nc = ipow(k, i);
    const std::size_t ny = ipow(d1, 2 * n - i);

    // act[τ][c'] = index of the tuple c with c_m = c'_{τ(m)}.
    std::vector<std::vector<std::size_t>> act(perms.size(),
                                              std::vector<std::size_t>(nc));
    for (std::size_t t = 0; t < perms.size(); ++t) {
      for (std::size_t c = 0; c < nc; ++c) {
        std::vector<std::size_t> dig(i);
        for (std::size_t m = i, x = c; m-- > 0; x /= k) dig[m] = x % k;
        std::size_t idx = 0;
        for (std::size_t m = 0; m < i; ++m) idx = idx * k + dig[perms[t][m]];
        act[t][c] = idx;
      }
    }

    const auto subs = subsets(n, i);
    const ComplexVector va = vectorize(local.v0);
    const ComplexVector vb = vectorize(local.delta);
    std::vector<std::vector<std::size_t>> jmap(subs.size());
    std::vector<ComplexMatrix> w(subs.size());
    for (std::size_t si = 0; si < subs.size(); ++si) {
      const auto& s = subs[si];
      std::vector<bool> in(n, false);
      std::vector<std::size_t> pos(n, 0);
      for (std::size_t m = 0; m < i; ++m) {
        in[s[m]] = true;
        pos[s[m]] = m;
      }
      ComplexVector ws = ComplexVector::Ones(1);
      for (std::size_t j = 0; j < n; ++j) ws = kron(ws, in[j] ? vb : va);
      jmap[si].resize(nc * ny);
      w[si] = ComplexMatrix(static_cast<Eigen::Index>(nc),
                            static_cast<Eigen::Index>(ny));
      for (std::size_t c = 0; c < nc; ++c) {
        std::vector<std::size_t> cd(i);
        for (std::size_t m = i, x = c; m-- > 0; x /= k) cd[m] = x % k;
        for (std::size_t y = 0; y < ny; ++y) {
          // y = (A_1..A_n, first-block B_j for j ∉ S), most significant first.
          std::vector<std::size_t> yd(2 * n - i);
          for (std::size_t m = yd.size(), x = y; m-- > 0; x /= d1) yd[m] = x % d1;
          std::size_t idx = 0, nb = n;
          for (std::size_t j = 0; j < n; ++j) {
            const std::size_t a = yd[j];
            const std::size_t b = in[j] ? d1 + cd[pos[j]] : yd[nb++];
            idx = idx * pair + b * d1 + a;
          }
          jmap[si][c * ny + y] = idx;
          w[si](static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(y)) =
              ws(static_cast<Eigen::Index>(idx));
        }
      }
    }

    out = ComplexMatrix::Zero(full, full);
    const double norm = 1.0 / binomial(n, i);
    std::vector<ComplexMatrix> z(perms.size());
    for (std::size_t s1 = 0; s1 < subs.size(); ++s1) {
      for (std::size_t s2 = 0; s2 < subs.size(); ++s2) {
        const ComplexMatrix wconj = w[s2].conjugate();
        for (std::size_t t = 0; t < perms.size(); ++t) {
          ComplexMatrix wp(static_cast<Eigen::Index>(nc),
                           static_cast<Eigen::Index>(ny));
          for (std::size_t c = 0; c < nc; ++c) {
            wp.row(static_cast<Eigen::Index>(c)) =
                w[s1].row(static_cast<Eigen::Index>(act[t][c]));
          }
          z[t] = wp.transpose() * wconj;
        }
        for (std::size_t sg = 0; sg < perms.size(); ++sg) {
          ComplexMatrix csig = ComplexMatrix::Zero(static_cast<Eigen::Index>(ny),
                                                   static_cast<Eigen::Index>(ny));
          for (std::size_t t = 0; t < perms.size(); ++t) {
            const Complex coef = gp(static_cast<Eigen::Index>(sg),
                                    static_cast<Eigen::Index>(t));
            if (coef != 0.0) csig += coef * z[t];
          }
          csig *= norm;
          for (std::size_t cp = 0; cp < nc; ++cp) {
            const std::size_t c = act[sg][cp];
            for (std::size_t y = 0; y < ny; ++y) {
              const auto row = static_cast<Eigen::Index>(jmap[s1][c * ny + y]);
              for (std::size_t yp = 0; yp < ny; ++yp) {
                const auto col = static_cast<Eigen::Index>(jmap[s2][cp * ny + yp]);
                out(row, col) += csig(static_cast<Eigen::Index>(y),
                                      static_cast<Eigen::Index>(yp));
              }
            }
          }
        }
      }
    }
  }
  if (!frame_is_identity(spec)) {
    const ComplexMatrix f = frame_power(spec, n);
    out = f * out * f.adjoint();
  }
  return hermitian_part(out);
}

ComplexMatrix monte_carlo_twirl(const HardInstanceSpec& spec, std::size_t n,
                                const ComplexVector& v, std::size_t samples,
                                std::uint64_t seed, std::size_t jobs) {
  if (samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "monte_carlo_twirl: zero samples");
  }
  const std::size_t chunks = std::min<std::size_t>(64, samples);
  const auto d = v.size();
  std::vector<ComplexMatrix> acc(chunks);
  parallel_for(chunks, jobs, [&](std::size_t c) {
    const std::size_t count =
        samples / chunks + (c < samples % chunks ? 1 : 0);
    Rng rng(derive_seed(seed, c));
    ComplexMatrix a = ComplexMatrix::Zero(d, d);
    for (std::size_t s = 0; s < count; ++s) {
      const ComplexMatrix r = spec.rotation(haar_unitary(spec.k(), rng));
      const ComplexVector x = apply_rotation(r, v, n, spec.d1);
      a.noalias() += x * x.adjoint();
    }
    acc[c] = std::move(a);
  });
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& a : acc) out += a;
  return hermitian_part(out / static_cast<double>(samples));
}

GammaFamily gamma_family(const HardInstanceSpec& spec, std::size_t n,
                         const TwirlOptions& opt) {
  GammaFamily fam;
  fam.n = n;
  fam.method = opt.method;
  fam.seed = opt.seed;
  fam.spaces = hard_spaces(n, spec.d1, spec.d2);
  for (std::size_t i = 0; i <= n; ++i) fam.gamma.push_back(gamma_state(n, i, spec));

  switch (opt.method) {
    case TwirlMethod::kExactCommutant: {
      const CommutantProjector proj = hard_commutant(spec, n, opt.seed);
      fam.commutant_dim = proj.commutant_dim();
      for (const auto& g : fam.gamma) {
        fam.twirled.push_back(hermitian_part(
            commutant_twirl(proj, g * g.adjoint(), n, spec.d1, spec.d2)));
      }
      break;
    }
    case TwirlMethod::kWeingarten:
      for (std::size_t i = 0; i <= n; ++i) {
        fam.twirled.push_back(weingarten_twirl(n, i, spec));
      }
      break;
    case TwirlMethod::kMonteCarlo:
      fam.samples = opt.samples;
      fam.standard_error = std::pow(static_cast<double>(spec.d1),
                                    static_cast<double>(n)) /
                           std::sqrt(static_cast<double>(opt.samples));
      for (std::size_t i = 0; i <= n; ++i) {
        fam.twirled.push_back(monte_carlo_twirl(
            spec, n, fam.gamma[i], opt.samples, derive_seed(opt.seed, i + 1),
            opt.jobs));
      }
      break;
  }
  return fam;
}

ComplexMatrix gamma_twirl(std::size_t n, std::size_t i,
                          const HardInstanceSpec& spec, const TwirlOptions& opt) {
  const ComplexVector g = gamma_state(n, i, spec);
  switch (opt.method) {
    case TwirlMethod::kExactCommutant:
      return hermitian_part(commutant_twirl(hard_commutant(spec, n, opt.seed),
                                            g * g.adjoint(), n, spec.d1, spec.d2));
    case TwirlMethod::kWeingarten:
      return weingarten_twirl(n, i, spec);
    case TwirlMethod::kMonteCarlo:
      return monte_carlo_twirl(spec, n, g, opt.samples,
                               derive_seed(opt.seed, i + 1), opt.jobs);
  }
  return {};
}

}  // namespace combcert
