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

#include <cstddef>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "combcert/linalg.hpp"

namespace combcert {

struct Space {
  std::string label;
  std::size_t dim = 1;

  friend bool operator==(const Space&, const Space&) = default;
};

using SpaceList = std::vector<Space>;
using LabelSet = std::set<std::string>;

std::size_t total_dim(const SpaceList& spaces);
std::vector<std::string> labels_of(const SpaceList& spaces);

/// A square operator on an ordered tensor product of named subsystems. The
/// first space is the most significant digit of the row/column index.
class LabeledOperator {
 public:
  LabeledOperator() = default;
  LabeledOperator(ComplexMatrix matrix, SpaceList spaces);

  static LabeledOperator identity(const SpaceList& spaces);
  static LabeledOperator scalar(Complex value);
  /// |v><v| on the given spaces.
  static LabeledOperator projector(const ComplexVector& v,
                                   const SpaceList& spaces);

  const ComplexMatrix& matrix() const { return matrix_; }
  ComplexMatrix& matrix() { return matrix_; }
  const SpaceList& spaces() const { return spaces_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  bool has_label(const std::string& label) const;
  std::size_t dim_of(const std::string& label) const;
  std::vector<std::string> labels() const { return labels_of(spaces_); }

  /// Reorders subsystems; `order` must be a permutation of labels().
  LabeledOperator permuted(const std::vector<std::string>& order) const;
  /// Permutes `other` into this operator's label order.
  LabeledOperator aligned_to(const SpaceList& order) const;

  Complex trace() const { return matrix_.trace(); }

 private:
  void validate() const;

  ComplexMatrix matrix_ = ComplexMatrix::Ones(1, 1);
  SpaceList spaces_;
};

LabeledOperator partial_trace(const LabeledOperator& x, const LabelSet& traced);
LabeledOperator partial_transpose(const LabeledOperator& x,
                                  const LabelSet& subset);
/// Tensor product on disjoint label sets; x's spaces come first.
LabeledOperator tensor(const LabeledOperator& x, const LabeledOperator& y);

/// Sum after aligning y to x's label order.
LabeledOperator operator+(const LabeledOperator& x, const LabeledOperator& y);
LabeledOperator operator-(const LabeledOperator& x, const LabeledOperator& y);
LabeledOperator operator*(Complex s, const LabeledOperator& x);

/// ‖x − y‖_F after alignment; throws if the label sets differ.
double frobenius_distance(const LabeledOperator& x, const LabeledOperator& y);

/// Index permutation taking a basis index in `to` ordering to the index in
/// `from` ordering. Exposed for vector reshuffles.
std::vector<std::size_t> subsystem_permutation(const SpaceList& from,
                                               const std::vector<std::string>& to);

/// Reorders the tensor factors of a vector.
ComplexVector permute_vector(const ComplexVector& v, const SpaceList& from,
                             const std::vector<std::string>& to);

}  // namespace combcert
