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

#include "caustyk/subspace.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace caustyk {

namespace {

// Numerical rank from a column-pivoted QR: diagonal entries of R above
// rel * max(|R_00|, 1). BDCSVD in Eigen 3.4.0 was seen to return wrong
// singular values on the structured inputs produced here, so pivoted QR does
// the rank revealing.
Index pivoted_rank(const Eigen::ColPivHouseholderQR<RMatrix>& qr, double rel) {
  const auto& r = qr.matrixQR();
  const Index m = std::min(r.rows(), r.cols());
  if (m == 0) return 0;
  const double thr = rank_threshold(std::abs(r(0, 0)), rel);
  Index k = 0;
  while (k < m && std::abs(r(k, k)) > thr) ++k;
  return k;
}

// Orthonormal basis of span(q) minus the unit vector v (v must lie in
// span(q)), via one Householder reflection inside the column space.
RMatrix drop_direction(const RMatrix& q, const RVector& v) {
  const Index k = q.cols();
  if (k <= 1) return RMatrix(q.rows(), 0);
  RVector w = q.transpose() * v;
  const double wn = w.norm();
  if (wn == 0.0) return q;
  w /= wn;
  RVector u = w;
  u(0) += (w(0) >= 0.0 ? 1.0 : -1.0);
  const double un = u.norm();
  if (un == 0.0) return q.rightCols(k - 1);
  u /= un;
  RMatrix reflected = q - 2.0 * (q * u) * u.transpose();
  return reflected.rightCols(k - 1);
}

RMatrix hstack(const RMatrix& a, const RMatrix& b) {
  RMatrix out(a.rows() == 0 ? b.rows() : a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

RMatrix full_complement(const RMatrix& q, Index ambient) {
  if (q.cols() == 0) return RMatrix::Identity(ambient, ambient);
  if (q.cols() >= ambient) return RMatrix(ambient, 0);
  Eigen::HouseholderQR<RMatrix> qr(q);
  RMatrix full = qr.householderQ() * RMatrix::Identity(ambient, ambient);
  return full.rightCols(ambient - q.cols());
}

RMatrix kron_columns(const RMatrix& a, Index na, const RMatrix& b, Index nb) {
  std::vector<CMatrix> bm;
  bm.reserve(static_cast<std::size_t>(b.cols()));
  for (Index j = 0; j < b.cols(); ++j) bm.push_back(from_coords(b.col(j), nb));
  const Index n = na * nb;
  RMatrix out(n * n, a.cols() * b.cols());
  Index col = 0;
  for (Index i = 0; i < a.cols(); ++i) {
    const CMatrix am = from_coords(a.col(i), na);
    for (Index j = 0; j < b.cols(); ++j) {
      out.col(col++) = to_coords(kron(am, bm[static_cast<std::size_t>(j)]));
    }
  }
  return out;
}

}  // namespace

RMatrix orthonormalize(const RMatrix& vectors, double rel) {
  if (vectors.cols() == 0 || vectors.rows() == 0) return RMatrix(vectors.rows(), 0);
  const Eigen::ColPivHouseholderQR<RMatrix> qr(vectors);
  const Index r = pivoted_rank(qr, rel);
  return qr.householderQ() * RMatrix::Identity(vectors.rows(), r);
}

RMatrix null_space(const RMatrix& m, double rel) {
  const Index k = m.cols();
  if (k == 0) return RMatrix(0, 0);
  if (m.rows() == 0) return RMatrix::Identity(k, k);
  // Null space of m is the orthogonal complement of its row space.
  const RMatrix mt = m.transpose();
  const Eigen::ColPivHouseholderQR<RMatrix> qr(mt);
  const Index r = pivoted_rank(qr, rel);
  const RMatrix q = qr.householderQ() * RMatrix::Identity(k, k);
  return q.rightCols(k - r);
}

double gram_deviation(const RMatrix& q) {
  if (q.cols() == 0) return 0.0;
  const RMatrix g = q.transpose() * q - RMatrix::Identity(q.cols(), q.cols());
  return g.cwiseAbs().maxCoeff();
}

LinearSubspace LinearSubspace::zero(Index ambient) {
  return LinearSubspace(ambient, RMatrix(ambient, 0), false);
}

LinearSubspace LinearSubspace::full(Index ambient) {
  return LinearSubspace(ambient, RMatrix(ambient, 0), true);
}

LinearSubspace LinearSubspace::from_orthonormal(RMatrix q) {
  const Index n = q.rows();
  return LinearSubspace(n, std::move(q), false);
}

LinearSubspace LinearSubspace::orthogonal_to(RMatrix c) {
  const Index n = c.rows();
  return LinearSubspace(n, std::move(c), true);
}

LinearSubspace LinearSubspace::spanned_by(const RMatrix& vectors, double rel) {
  return from_orthonormal(orthonormalize(vectors, rel));
}

RMatrix LinearSubspace::basis() const {
  return complement_ ? full_complement(q_, ambient_) : q_;
}

RMatrix LinearSubspace::complement_basis() const {
  return complement_ ? q_ : full_complement(q_, ambient_);
}

LinearSubspace LinearSubspace::complement() const {
  return LinearSubspace(ambient_, q_, !complement_);
}

RVector LinearSubspace::project(const RVector& x) const {
  if (q_.cols() == 0) return complement_ ? x : RVector::Zero(x.size());
  const RVector c = q_ * (q_.transpose() * x);
  return complement_ ? RVector(x - c) : c;
}

RMatrix LinearSubspace::project(const RMatrix& x) const {
  if (q_.cols() == 0) return complement_ ? x : RMatrix::Zero(x.rows(), x.cols());
  const RMatrix c = q_ * (q_.transpose() * x);
  return complement_ ? RMatrix(x - c) : c;
}

double LinearSubspace::distance(const RVector& x) const {
  if (complement_) return q_.cols() == 0 ? 0.0 : (q_.transpose() * x).norm();
  if (q_.cols() == 0) return x.norm();
  return (x - q_ * (q_.transpose() * x)).norm();
}

double LinearSubspace::max_distance(const RMatrix& x) const {
  if (x.cols() == 0) return 0.0;
  RMatrix r;
  if (complement_) {
    if (q_.cols() == 0) return 0.0;
    r = q_.transpose() * x;
  } else {
    r = q_.cols() == 0 ? x : RMatrix(x - q_ * (q_.transpose() * x));
  }
  return r.colwise().norm().maxCoeff();
}

LinearSubspace LinearSubspace::compacted() const {
  // Converting costs a full QR in the ambient space; only worth it when the
  // ambient space is moderate.
  constexpr Index kMaxAmbient = 1024;
  if (ambient_ > kMaxAmbient || 2 * q_.cols() <= ambient_) return *this;
  return LinearSubspace(ambient_, full_complement(q_, ambient_), !complement_);
}

LinearSubspace intersect(const LinearSubspace& a, const LinearSubspace& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorKind::ShapeMismatch, "intersect: ambient mismatch");
  const Index n = a.ambient();
  if (a.rank() == 0 || b.rank() == 0) return LinearSubspace::zero(n);
  if (a.rank() == n) return b;
  if (b.rank() == n) return a;
  if (a.is_complement_form() && b.is_complement_form()) {
    return LinearSubspace::orthogonal_to(orthonormalize(hstack(a.stored(), b.stored())));
  }
  const LinearSubspace* d = &a;
  const LinearSubspace* o = &b;
  if (a.is_complement_form() || (!b.is_complement_form() && b.rank() < a.rank())) std::swap(d, o);
  const RMatrix& q = d->stored();
  RMatrix m;
  if (o->is_complement_form()) {
    m = o->stored().transpose() * q;
  } else {
    m = q - o->stored() * (o->stored().transpose() * q);
  }
  return LinearSubspace::from_orthonormal(q * null_space(m)).compacted();
}

LinearSubspace sum(const LinearSubspace& a, const LinearSubspace& b) {
  if (a.ambient() != b.ambient()) throw Error(ErrorKind::ShapeMismatch, "sum: ambient mismatch");
  const Index n = a.ambient();
  if (a.rank() == n || b.rank() == n) return LinearSubspace::full(n);
  if (a.rank() == 0) return b;
  if (b.rank() == 0) return a;
  if (!a.is_complement_form() && !b.is_complement_form()) {
    return LinearSubspace::spanned_by(hstack(a.stored(), b.stored())).compacted();
  }
  if (a.is_complement_form() && b.is_complement_form()) {
    const LinearSubspace meet = intersect(LinearSubspace::from_orthonormal(a.stored()),
                                          LinearSubspace::from_orthonormal(b.stored()));
    return LinearSubspace::orthogonal_to(meet.basis());
  }
  const LinearSubspace& d = a.is_complement_form() ? b : a;
  const LinearSubspace& c = a.is_complement_form() ? a : b;
  const RMatrix& cs = c.stored();
  return LinearSubspace::orthogonal_to(cs * null_space(d.stored().transpose() * cs));
}

bool is_subspace_of(const LinearSubspace& a, const LinearSubspace& b, double tol) {
  if (a.ambient() != b.ambient()) return false;
  const Index n = a.ambient();
  if (a.rank() == 0 || b.rank() == n) return true;
  if (a.rank() > b.rank()) return false;
  if (!a.is_complement_form()) return b.max_distance(a.stored()) <= tol;
  // a is the complement of span(Ca): a inside b iff b's complement lies in span(Ca).
  const RMatrix& ca = a.stored();
  if (b.is_complement_form()) {
    return LinearSubspace::from_orthonormal(ca).max_distance(b.stored()) <= tol;
  }
  const RMatrix& qb = b.stored();
  const RMatrix m = qb.transpose() * ca;
  Index small = 0;
  if (m.rows() > 0 && m.cols() > 0) {
    const Eigen::JacobiSVD<RMatrix> svd(m);
    const RVector& s = svd.singularValues();
    for (Index i = 0; i < s.size(); ++i) small += s(i) <= tol ? 1 : 0;
    small += ca.cols() - s.size();
  } else {
    small = ca.cols();
  }
  return small >= n - qb.cols();
}

bool approx_equal(const LinearSubspace& a, const LinearSubspace& b, double tol) {
  return a.rank() == b.rank() && is_subspace_of(a, b, tol) && is_subspace_of(b, a, tol);
}

LinearSubspace with_vector(const LinearSubspace& s, const RVector& v) {
  RVector r = v - s.project(v);
  const double rn = r.norm();
  if (rn <= rank_threshold(v.norm())) return s;
  r /= rn;
  if (s.is_complement_form()) {
    return LinearSubspace::orthogonal_to(drop_direction(s.stored(), r));
  }
  const RMatrix& q = s.stored();
  if (q.cols() > 0) {
    r -= q * (q.transpose() * r);
    r.normalize();
  }
  return LinearSubspace::from_orthonormal(hstack(q, r));
}

LinearSubspace without_vector(const LinearSubspace& s, const RVector& v) {
  RVector p = s.project(v);
  const double pn = p.norm();
  if (pn == 0.0) return s;
  p /= pn;
  if (s.is_complement_form()) {
    const RMatrix& c = s.stored();
    if (c.cols() > 0) {
      p -= c * (c.transpose() * p);
      p.normalize();
    }
    return LinearSubspace::orthogonal_to(hstack(c, p));
  }
  return LinearSubspace::from_orthonormal(drop_direction(s.stored(), p));
}

LinearSubspace kron(const LinearSubspace& a, Index na, const LinearSubspace& b, Index nb) {
  const Index big_a = na * na;
  const Index big_b = nb * nb;
  if (a.ambient() != big_a || b.ambient() != big_b) {
    throw Error(ErrorKind::ShapeMismatch, "kron: ambient does not match side lengths");
  }
  const Index n = big_a * big_b;
  if (a.rank() == 0 || b.rank() == 0) return LinearSubspace::zero(n);
  if (a.rank() == big_a && b.rank() == big_b) return LinearSubspace::full(n);
  if (big_a == 1) return b;
  if (big_b == 1) return a;

  const Index ka = a.rank(), kb = b.rank();
  const Index ca = big_a - ka, cb = big_b - kb;
  const Index direct = ka * kb;
  const Index comp_a = ca * big_b + ka * cb;  // [Ca (x) E, Qa (x) Cb]
  const Index comp_b = big_a * cb + ca * kb;  // [E (x) Cb, Ca (x) Qb]
  if (direct <= comp_a && direct <= comp_b) {
    return LinearSubspace::from_orthonormal(kron_columns(a.basis(), na, b.basis(), nb));
  }
  if (comp_a <= comp_b) {
    const RMatrix c = hstack(kron_columns(a.complement_basis(), na, RMatrix::Identity(big_b, big_b), nb),
                             kron_columns(a.basis(), na, b.complement_basis(), nb));
    return LinearSubspace::orthogonal_to(c);
  }
  const RMatrix c = hstack(kron_columns(RMatrix::Identity(big_a, big_a), na, b.complement_basis(), nb),
                           kron_columns(a.complement_basis(), na, b.basis(), nb));
  return LinearSubspace::orthogonal_to(c);
}

LinearSubspace permute(const LinearSubspace& s, const Dims& dims,
                       std::span<const std::size_t> perm) {
  RMatrix q = permute_coords(s.stored(), dims, perm);
  return s.is_complement_form() ? LinearSubspace::orthogonal_to(std::move(q))
                                : LinearSubspace::from_orthonormal(std::move(q));
}

LinearSubspace span(const std::vector<CMatrix>& vectors, double rel) {
  if (vectors.empty()) return LinearSubspace::zero(0);
  const Index n = vectors.front().rows();
  RMatrix coords(n * n, static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].rows() != n || vectors[i].cols() != n) {
      throw Error(ErrorKind::ShapeMismatch, "span: mixed dimensions");
    }
    coords.col(static_cast<Index>(i)) = to_coords(vectors[i]);
  }
  return LinearSubspace::spanned_by(coords, rel);
}

AffineSubspace::AffineSubspace(const RVector& base, LinearSubspace directions)
    : base_(base - directions.project(base)), directions_(std::move(directions)) {
  if (base.size() != directions_.ambient()) {
    throw Error(ErrorKind::ShapeMismatch, "affine subspace: base and directions differ in dimension");
  }
}

AffineSubspace AffineSubspace::point(const RVector& p) {
  return AffineSubspace(p, LinearSubspace::zero(p.size()));
}

AffineSubspace AffineSubspace::hyperplane_in(LinearSubspace s, const RVector& normal) {
  const RVector n = s.project(normal);
  const double nn = n.squaredNorm();
  if (nn == 0.0) throw Error(ErrorKind::EmptyDual, "hyperplane_in: normal orthogonal to subspace");
  AffineSubspace w;
  w.base_ = n / nn;
  w.directions_ = without_vector(s, n);
  return w;
}

LinearSubspace AffineSubspace::linear_span() const {
  if (base_.norm() == 0.0) return directions_;
  return with_vector(directions_, base_);
}

RVector AffineSubspace::normal() const {
  const double nn = base_.squaredNorm();
  if (nn == 0.0) throw Error(ErrorKind::EmptyDual, "affine set contains the origin");
  return base_ / nn;
}

RVector AffineSubspace::project(const RVector& x) const {
  return base_ + directions_.project(RVector(x - base_));
}

double AffineSubspace::distance(const RVector& x) const {
  if (x.size() != base_.size()) throw Error(ErrorKind::ShapeMismatch, "affine distance: dimension mismatch");
  return directions_.distance(x - base_);
}

AffineSubspace affine_dual(const AffineSubspace& w) {
  const double bn = w.base().norm();
  if (bn <= 1e-12) {
    throw Error(ErrorKind::EmptyDual, "affine_dual: the set contains 0, so no functional is 1 on it");
  }
  return AffineSubspace(w.base() / (bn * bn), with_vector(w.directions(), w.base()).complement());
}

bool is_subset(const AffineSubspace& a, const AffineSubspace& b, double tol) {
  if (a.ambient() != b.ambient()) return false;
  return b.contains(a.base(), tol) && is_subspace_of(a.directions(), b.directions(), tol);
}

bool approx_equal(const AffineSubspace& a, const AffineSubspace& b, double tol) {
  return a.direction_rank() == b.direction_rank() && is_subset(a, b, tol) && is_subset(b, a, tol);
}

AffineSubspace tensor(const AffineSubspace& a, Index na, const AffineSubspace& b, Index nb) {
  const LinearSubspace s = kron(a.linear_span(), na, b.linear_span(), nb);
  return AffineSubspace::hyperplane_in(s, kron_coords(a.normal(), na, b.normal(), nb));
}

AffineSubspace permute(const AffineSubspace& w, const Dims& dims,
                       std::span<const std::size_t> perm) {
  const RMatrix b = permute_coords(w.base(), dims, perm);
  return AffineSubspace(b.col(0), permute(w.directions(), dims, perm));
}

AffineSubspace intersect(const AffineSubspace& w, const LinearSubspace& s) {
  if (s.distance(w.base()) > rank_threshold(w.base().norm())) {
    throw Error(ErrorKind::Inconsistency, "intersect: base point outside the constraint subspace");
  }
  return AffineSubspace(w.base(), intersect(w.directions(), s));
}

bool subspace_contains(const AffineSubspace& w, const CMatrix& m, double tol) {
  return w.contains(to_coords(m), tol);
}

}  // namespace caustyk
