// Copyright 2026 The caustyk Authors
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

#include <span>
#include <vector>

#include "caustyk/herm.hpp"
#include "caustyk/types.hpp"

namespace caustyk {

/// Singular-value cutoff used for every rank decision: `rel` times the
/// largest singular value, floored at 1.
inline double rank_threshold(double sigma_max, double rel = kDefaultTolerances.sub) {
  return rel * std::max(sigma_max, 1.0);
}

/// Real linear subspace of R^N.
///
/// Stored through an orthonormal basis either of the subspace itself or of
/// its orthogonal complement; constructors keep whichever side is smaller
/// when it is cheap to do so. Higher-order types over composite systems
/// routinely have subspaces of codimension a few dozen inside R^4096, which
/// is why the complement form exists at all.
class LinearSubspace {
 public:
  LinearSubspace() = default;

  static LinearSubspace zero(Index ambient);
  static LinearSubspace full(Index ambient);
  /// Columns of `q` must already be orthonormal.
  static LinearSubspace from_orthonormal(RMatrix q);
  /// The orthogonal complement of the span of orthonormal columns `c`.
  static LinearSubspace orthogonal_to(RMatrix c);
  /// Span of arbitrary columns; rank decided by rank_threshold(rel).
  static LinearSubspace spanned_by(const RMatrix& vectors,
                                   double rel = kDefaultTolerances.sub);

  Index ambient() const { return ambient_; }
  Index rank() const { return complement_ ? ambient_ - q_.cols() : q_.cols(); }
  bool is_complement_form() const { return complement_; }
  /// The stored orthonormal columns (of the subspace or of its complement).
  const RMatrix& stored() const { return q_; }

  /// Orthonormal basis of the subspace (materialized if needed).
  RMatrix basis() const;
  /// Orthonormal basis of the orthogonal complement.
  RMatrix complement_basis() const;

  LinearSubspace complement() const;

  RVector project(const RVector& x) const;
  RMatrix project(const RMatrix& x) const;
  double distance(const RVector& x) const;
  /// Largest distance of any column of `x` from the subspace.
  double max_distance(const RMatrix& x) const;

  /// Same subspace, re-stored on the smaller side.
  LinearSubspace compacted() const;

 private:
  LinearSubspace(Index ambient, RMatrix q, bool complement)
      : ambient_(ambient), q_(std::move(q)), complement_(complement) {}

  Index ambient_ = 0;
  RMatrix q_;
  bool complement_ = false;
};

/// Orthonormal basis of the span of the columns of `vectors`.
RMatrix orthonormalize(const RMatrix& vectors, double rel = kDefaultTolerances.sub);

/// Orthonormal basis of the null space of `m` (columns of the result live in
/// R^{m.cols()}).
RMatrix null_space(const RMatrix& m, double rel = kDefaultTolerances.sub);

/// Largest entry of |Q^T Q - I|.
double gram_deviation(const RMatrix& q);

LinearSubspace intersect(const LinearSubspace& a, const LinearSubspace& b);
LinearSubspace sum(const LinearSubspace& a, const LinearSubspace& b);
bool is_subspace_of(const LinearSubspace& a, const LinearSubspace& b,
                    double tol = kDefaultTolerances.sub);
bool approx_equal(const LinearSubspace& a, const LinearSubspace& b,
                  double tol = kDefaultTolerances.sub);

/// s + span(v) for v orthogonal to s.
LinearSubspace with_vector(const LinearSubspace& s, const RVector& v);
/// s minus span(v) for v inside s.
LinearSubspace without_vector(const LinearSubspace& s, const RVector& v);

/// Tensor product of subspaces of Herm(na) and Herm(nb), expressed in the
/// coordinates of Herm(na * nb).
LinearSubspace kron(const LinearSubspace& a, Index na, const LinearSubspace& b, Index nb);

/// Apply a tensor-factor permutation to every vector of the subspace.
LinearSubspace permute(const LinearSubspace& s, const Dims& dims,
                       std::span<const std::size_t> perm);

/// Real span of Hermitian matrices (all of one dimension).
LinearSubspace span(const std::vector<CMatrix>& vectors,
                    double rel = kDefaultTolerances.sub);

/// Affine subspace base + span(directions) of real coordinate space, kept in
/// canonical form: `base` is the minimum-norm point, hence orthogonal to the
/// directions.
class AffineSubspace {
 public:
  AffineSubspace() = default;
  AffineSubspace(const RVector& base, LinearSubspace directions);

  static AffineSubspace point(const RVector& p);
  /// {x in s : <x, normal> = 1}; `normal` must lie in `s` and be non-zero.
  static AffineSubspace hyperplane_in(LinearSubspace s, const RVector& normal);

  Index ambient() const { return directions_.ambient(); }
  Index direction_rank() const { return directions_.rank(); }
  const RVector& base() const { return base_; }
  const LinearSubspace& directions() const { return directions_; }

  /// Linear span of the affine set (directions plus the base point).
  LinearSubspace linear_span() const;
  /// The functional that is identically 1 on the set: base / |base|^2.
  RVector normal() const;

  RVector project(const RVector& x) const;
  double distance(const RVector& x) const;
  bool contains(const RVector& x, double tol) const { return distance(x) <= tol; }

 private:
  RVector base_;
  LinearSubspace directions_;
};

/// {rho : <w, rho> = 1 for every w in W}. Throws EmptyDual when W contains 0.
AffineSubspace affine_dual(const AffineSubspace& w);

bool is_subset(const AffineSubspace& a, const AffineSubspace& b,
               double tol = kDefaultTolerances.sub);
bool approx_equal(const AffineSubspace& a, const AffineSubspace& b,
                  double tol = kDefaultTolerances.sub);

/// Affine hull of {x (x) y : x in a, y in b} for sets not through the origin.
AffineSubspace tensor(const AffineSubspace& a, Index na, const AffineSubspace& b, Index nb);

AffineSubspace permute(const AffineSubspace& w, const Dims& dims,
                       std::span<const std::size_t> perm);

/// W intersected with a linear subspace that contains W's base point.
AffineSubspace intersect(const AffineSubspace& w, const LinearSubspace& s);

/// Hermitian-matrix front ends.
bool subspace_contains(const AffineSubspace& w, const CMatrix& m, double tol);

}  // namespace caustyk
