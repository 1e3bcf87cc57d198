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

#include "combcert/labeled_operator.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace combcert {

std::size_t total_dim(const SpaceList& spaces) {
  std::size_t d = 1;
  for (const auto& s : spaces) d *= s.dim;
  return d;
}

std::vector<std::string> labels_of(const SpaceList& spaces) {
  std::vector<std::string> out;
  out.reserve(spaces.size());
  for (const auto& s : spaces) out.push_back(s.label);
  return out;
}

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ",";
    out += x;
  }
  return out;
}

std::size_t index_of(const SpaceList& spaces, const std::string& label) {
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    if (spaces[k].label == label) return k;
  }
  throw Error(ErrorCode::kUnknownLabel, "no subsystem labeled '" + label + "'");
}

void check_labels_known(const SpaceList& spaces, const LabelSet& labels) {
  for (const auto& l : labels) index_of(spaces, l);
}

// Strides of each subsystem in the row-major mixed-radix index.
std::vector<std::size_t> strides(const SpaceList& spaces) {
  std::vector<std::size_t> st(spaces.size(), 1);
  for (std::size_t k = spaces.size(); k-- > 1;) {
    st[k - 1] = st[k] * spaces[k].dim;
  }
  return st;
}

// For each index over the sub-list `which` (in order), the offset it
// contributes to the full index of `spaces`.
std::vector<std::size_t> offsets(const SpaceList& spaces,
                                 const std::vector<std::size_t>& which) {
  const auto st = strides(spaces);
  std::size_t count = 1;
  for (auto w : which) count *= spaces[w].dim;
  std::vector<std::size_t> out(count, 0);
  std::vector<std::size_t> digit(which.size(), 0);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < which.size(); ++k) off += digit[k] * st[which[k]];
    out[idx] = off;
    for (std::size_t k = which.size(); k-- > 0;) {
      if (++digit[k] < spaces[which[k]].dim) break;
      digit[k] = 0;
    }
  }
  return out;
}

}  // namespace

LabeledOperator::LabeledOperator(ComplexMatrix matrix, SpaceList spaces)
    : matrix_(std::move(matrix)), spaces_(std::move(spaces)) {
  validate();
}

void LabeledOperator::validate() const {
  if (matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "labeled operator must be square");
  }
  if (total_dim(spaces_) != static_cast<std::size_t>(matrix_.rows())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "subsystem dimensions multiply to " +
                    std::to_string(total_dim(spaces_)) + " but matrix side is " +
                    std::to_string(matrix_.rows()));
  }
  for (std::size_t i = 0; i < spaces_.size(); ++i) {
    for (std::size_t j = i + 1; j < spaces_.size(); ++j) {
      if (spaces_[i].label == spaces_[j].label) {
        throw Error(ErrorCode::kDuplicateLabel,
                    "label '" + spaces_[i].label + "' appears twice");
      }
    }
  }
}

LabeledOperator LabeledOperator::identity(const SpaceList& spaces) {
  return LabeledOperator(combcert::identity(total_dim(spaces)), spaces);
}

LabeledOperator LabeledOperator::scalar(Complex value) {
  ComplexMatrix m(1, 1);
  m(0, 0) = value;
  return LabeledOperator(std::move(m), {});
}

LabeledOperator LabeledOperator::projector(const ComplexVector& v,
                                           const SpaceList& spaces) {
  return LabeledOperator(v * v.adjoint(), spaces);
}

bool LabeledOperator::has_label(const std::string& label) const {
  return std::any_of(spaces_.begin(), spaces_.end(),
                     [&](const Space& s) { return s.label == label; });
}

std::size_t LabeledOperator::dim_of(const std::string& label) const {
  return spaces_[index_of(spaces_, label)].dim;
}

std::vector<std::size_t> subsystem_permutation(
    const SpaceList& from, const std::vector<std::string>& to) {
  if (to.size() != from.size()) {
    throw Error(ErrorCode::kUnknownLabel,
                "permutation [" + join(to) + "] does not match subsystems [" +
                    join(labels_of(from)) + "]");
  }
  std::vector<std::size_t> which;
  which.reserve(to.size());
  for (const auto& l : to) which.push_back(index_of(from, l));
  std::vector<std::size_t> sorted = which;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kDuplicateLabel, "permutation repeats a label");
  }
  return offsets(from, which);
}

LabeledOperator LabeledOperator::permuted(
    const std::vector<std::string>& order) const {
  const auto perm = subsystem_permutation(spaces_, order);
  SpaceList new_spaces;
  for (const auto& l : order) new_spaces.push_back(spaces_[index_of(spaces_, l)]);
  const auto n = static_cast<Eigen::Index>(perm.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto pi = static_cast<Eigen::Index>(perm[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = matrix_(pi, static_cast<Eigen::Index>(
                                  perm[static_cast<std::size_t>(j)]));
    }
  }
  return LabeledOperator(std::move(out), std::move(new_spaces));
}

LabeledOperator LabeledOperator::aligned_to(const SpaceList& order) const {
  for (const auto& s : order) {
    if (dim_of(s.label) != s.dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "label '" + s.label + "' has mismatched dimensions");
    }
  }
  return permuted(labels_of(order));
}

LabeledOperator partial_trace(const LabeledOperator& x,
                              const LabelSet& traced) {
  const SpaceList& spaces = x.spaces();
  check_labels_known(spaces, traced);
  std::vector<std::size_t> keep, drop;
  SpaceList kept_spaces;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    if (traced.count(spaces[k].label)) {
      drop.push_back(k);
    } else {
      keep.push_back(k);
      kept_spaces.push_back(spaces[k]);
    }
  }
  const auto keep_off = offsets(spaces, keep);
  const auto drop_off = offsets(spaces, drop);
  const auto nk = static_cast<Eigen::Index>(keep_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(nk, nk);
  const ComplexMatrix& m = x.matrix();
  for (Eigen::Index r = 0; r < nk; ++r) {
    const auto br = keep_off[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < nk; ++c) {
      const auto bc = keep_off[static_cast<std::size_t>(c)];
      Complex s = 0.0;
      for (auto t : drop_off) {
        s += m(static_cast<Eigen::Index>(br + t), static_cast<Eigen::Index>(bc + t));
      }
      out(r, c) = s;
    }
  }
  return LabeledOperator(std::move(out), std::move(kept_spaces));
}

LabeledOperator partial_transpose(const LabeledOperator& x,
                                  const LabelSet& subset) {
  const SpaceList& spaces = x.spaces();
  check_labels_known(spaces, subset);
  std::vector<std::size_t> in, out_idx;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    (subset.count(spaces[k].label) ? in : out_idx).push_back(k);
  }
  const auto sub_off = offsets(spaces, in);
  const auto rest_off = offsets(spaces, out_idx);
  const ComplexMatrix& m = x.matrix();
  ComplexMatrix res(m.rows(), m.cols());
  for (auto ri : rest_off) {
    for (auto rj : rest_off) {
      for (auto si : sub_off) {
        for (auto sj : sub_off) {
          res(static_cast<Eigen::Index>(ri + si), static_cast<Eigen::Index>(rj + sj)) =
              m(static_cast<Eigen::Index>(ri + sj), static_cast<Eigen::Index>(rj + si));
        }
      }
    }
  }
  return LabeledOperator(std::move(res), spaces);
}

LabeledOperator tensor(const LabeledOperator& x, const LabeledOperator& y) {
  SpaceList spaces = x.spaces();
  for (const auto& s : y.spaces()) {
    if (x.has_label(s.label)) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "tensor: label '" + s.label + "' present on both sides");
    }
    spaces.push_back(s);
  }
  return LabeledOperator(kron(x.matrix(), y.matrix()), std::move(spaces));
}

LabeledOperator operator+(const LabeledOperator& x, const LabeledOperator& y) {
  const LabeledOperator ya = y.aligned_to(x.spaces());
  return LabeledOperator(x.matrix() + ya.matrix(), x.spaces());
}

LabeledOperator operator-(const LabeledOperator& x, const LabeledOperator& y) {
  const LabeledOperator ya = y.aligned_to(x.spaces());
  return LabeledOperator(x.matrix() - ya.matrix(), x.spaces());
}

LabeledOperator operator*(Complex s, const LabeledOperator& x) {
  return LabeledOperator(s * x.matrix(), x.spaces());
}

double frobenius_distance(const LabeledOperator& x, const LabeledOperator& y) {
  if (x.spaces().size() != y.spaces().size()) {
    throw Error(ErrorCode::kUnknownLabel, "label sets differ");
  }
  return (x.matrix() - y.aligned_to(x.spaces()).matrix()).norm();
}

ComplexVector permute_vector(const ComplexVector& v, const SpaceList& from,
                             const std::vector<std::string>& to) {
  if (static_cast<std::size_t>(v.size()) != total_dim(from)) {
    throw Error(ErrorCode::kDimensionMismatch, "permute_vector: size mismatch");
  }
  const auto perm = subsystem_permutation(from, to);
  ComplexVector out(v.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(perm[i]));
  }
  return out;
}

}  // namespace combcert
