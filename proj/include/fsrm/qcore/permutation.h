// Copyright 2026 The fsrm Authors
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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fsrm/qcore/matrix.h"

namespace fsrm {

/// Permutation of {0..k-1} in image form: slot i is sent to images[i].
///
/// Acting on k tensor copies, the operator W_perm places the i-th input
/// factor in output slot images[i], i.e. W|x_0 ... x_{k-1}> = |y> with
/// y[images[i]] = x[i]. Under this rule the clockwise shift (0 1 2) -> (1 2 0)
/// maps |a b c> to |c a b>.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int k);
  static Permutation swap();             // (1 0)
  static Permutation cyclic_forward();   // |a b c> -> |c a b>
  static Permutation cyclic_backward();  // |a b c> -> |b c a>

  // Every permutation of k elements, identity first, lexicographic otherwise.
  static std::vector<Permutation> all(int k);

  int size() const { return static_cast<int>(images_.size()); }
  int operator[](int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  // (this ∘ other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  int cycle_count() const;

  bool operator==(const Permutation& other) const { return images_ == other.images_; }

 private:
  std::vector<int> images_;
};

/// Basis-index map of W_perm on (d^k)-dim space: W|x> = |map[x]>.
std::vector<std::size_t> permutation_index_map(const Permutation& perm, std::size_t d);

/// Basis-index map of a product of per-site permutations on k copies of an
/// n-site register with local dimension d. The k-copy space is copy-major:
/// copy 0's sites occupy the most significant digits. site_perms[j] permutes
/// the k copies of site j. All permutations must have the same size k.
std::vector<std::size_t> local_permutation_index_map(std::span<const Permutation> site_perms,
                                                     std::size_t d);

struct PermutationOperator {
  int k = 0;
  std::size_t d = 0;
  Permutation perm = Permutation::identity(1);
  ComplexMatrix mat;
};

/// W_perm on (C^d)^{⊗k}. Throws std::invalid_argument on d == 0.
PermutationOperator permutation_matrix(const Permutation& perm, std::size_t d);

ComplexMatrix matrix_from_index_map(std::span<const std::size_t> map);

// Tr(A W) where W|x> = |map[x]>: sum_x A[x, map[x]].
Complex trace_with_permutation(const ComplexMatrix& a, std::span<const std::size_t> map);

}  // namespace fsrm
