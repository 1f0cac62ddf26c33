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

#include "caustyk/caus.hpp"

#include <cmath>
#include <sstream>

namespace caustyk {

namespace {

double trace_of(const RVector& coords, Index n) { return coords.head(n).sum(); }

std::vector<bool> flipped(const std::vector<bool>& tags) {
  std::vector<bool> out(tags.size());
  for (std::size_t k = 0; k < tags.size(); ++k) out[k] = !tags[k];
  return out;
}

std::vector<bool> concat_tags(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Factor lists with unit factors dropped; tags follow their factors.
void drop_units(Dims& dims, std::vector<bool>& tags) {
  Dims d;
  std::vector<bool> t;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] != 1) {
      d.push_back(dims[k]);
      t.push_back(tags[k]);
    }
  }
  if (d.empty()) {
    d.push_back(1);
    t.push_back(false);
  }
  dims = std::move(d);
  tags = std::move(t);
}

}  // namespace

Dims normalize_dims(const Dims& dims) {
  Dims d;
  for (Index x : dims) {
    if (x < 1) throw Error(ErrorKind::InvalidDimension, "factor dimension < 1");
    if (x != 1) d.push_back(x);
  }
  if (d.empty()) d.push_back(1);
  return d;
}

RVector trace_functional(Index n) {
  RVector t = RVector::Zero(n * n);
  t.head(n).setOnes();
  return t;
}

CausObject CausObject::from_pair(Dims dims, std::vector<bool> dual_tags, AffineSubspace states,
                                 AffineSubspace effects) {
  if (dual_tags.size() != dims.size()) dual_tags.assign(dims.size(), false);
  drop_units(dims, dual_tags);
  const Index n = product(dims);
  if (states.ambient() != n * n || effects.ambient() != n * n) {
    throw Error(ErrorKind::ShapeMismatch, "CausObject: hulls do not match the factor list");
  }
  CausObject o;
  o.dims_ = std::move(dims);
  o.tags_ = std::move(dual_tags);
  o.states_ = std::move(states);
  o.effects_ = std::move(effects);
  // Every effect pairs to 1 with lambda * I, so lambda = 1 / Tr(effect).
  const double tr = trace_of(o.effects_.base(), n);
  if (!(tr > 0.0)) throw Error(ErrorKind::NotFlat, "CausObject: effects have non-positive trace");
  o.lambda_ = 1.0 / tr;
  const RVector li = o.lambda_ * trace_functional(n);
  const double gap = o.states_.distance(li);
  if (gap > kDefaultTolerances.member * std::max(1.0, li.norm())) {
    std::ostringstream os;
    os << "CausObject: lambda * I is not a state (distance " << gap << ")";
    throw Error(ErrorKind::NotFlat, os.str());
  }
  return o;
}

CausObject CausObject::from_states(Dims dims, std::vector<bool> dual_tags, AffineSubspace states) {
  AffineSubspace effects = affine_dual(states);
  return from_pair(std::move(dims), std::move(dual_tags), std::move(states), std::move(effects));
}

CausObject first_order(Index d) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "first_order: dimension < 1");
  const RVector tr = trace_functional(d);
  return CausObject::from_pair({d}, {false},
                               AffineSubspace::hyperplane_in(LinearSubspace::full(d * d), tr),
                               AffineSubspace::point(tr));
}

CausObject unit() { return first_order(1); }

CausObject all_states(const CausObject& a) {
  const Index n = a.dim();
  const RVector tr = trace_functional(n);
  return CausObject::from_pair(a.dims(), a.dual_tags(),
                               AffineSubspace::hyperplane_in(LinearSubspace::full(n * n), tr),
                               AffineSubspace::point(tr));
}

CausObject classical(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "classical: n < 1");
  RMatrix diag = RMatrix::Zero(n * n, n);
  for (Index i = 0; i < n; ++i) diag(i, i) = 1.0;
  return CausObject::from_states(
      {n}, {false},
      AffineSubspace::hyperplane_in(LinearSubspace::from_orthonormal(diag), trace_functional(n)));
}

CausObject dual(const CausObject& a) {
  return CausObject::from_pair(a.dims(), flipped(a.dual_tags()), a.effects(), a.states());
}

CausObject tensor(const CausObject& a, const CausObject& b) {
  return CausObject::from_states(concat(a.dims(), b.dims()),
                                 concat_tags(a.dual_tags(), b.dual_tags()),
                                 tensor(a.states(), a.dim(), b.states(), b.dim()));
}

CausObject par(const CausObject& a, const CausObject& b) { return dual(tensor(dual(a), dual(b))); }

CausObject hom(const CausObject& a, const CausObject& b) { return par(dual(a), b); }

CausObject seq(const CausObject& a, const CausObject& b) {
  CausObject p = par(a, b);
  const LinearSubspace& m = b.effects().directions();
  if (m.rank() == 0) return p;
  // One-way constraint: contracting the B side with any effect direction of
  // B annihilates the state, i.e. the A marginal does not depend on which
  // effect B is closed with.
  const Index na = a.dim();
  const LinearSubspace forbidden = kron(LinearSubspace::full(na * na), na, m, b.dim());
  const AffineSubspace states = intersect(p.states(), forbidden.complement());
  return CausObject::from_states(p.dims(), p.dual_tags(), states);
}

CausObject permute(const CausObject& a, std::span<const std::size_t> perm) {
  std::vector<bool> tags(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) tags[k] = a.dual_tags().at(perm[k]);
  return CausObject::from_pair(permute_dims(a.dims(), perm), std::move(tags),
                               permute(a.states(), a.dims(), perm),
                               permute(a.effects(), a.dims(), perm));
}

bool is_subset(const CausObject& a, const CausObject& b, double tol) {
  return a.dim() == b.dim() && is_subset(a.states(), b.states(), tol);
}

bool approx_equal(const CausObject& a, const CausObject& b, double tol) {
  return a.dim() == b.dim() && approx_equal(a.states(), b.states(), tol);
}

Membership membership(const CausObject& a, const CMatrix& rho, const Tolerances& tol) {
  if (rho.rows() != a.dim() || rho.cols() != a.dim()) {
    throw Error(ErrorKind::ShapeMismatch, "member: matrix dimension differs from the type");
  }
  Membership m;
  const RVector x = to_coords(rho);
  m.min_eigenvalue = min_eigenvalue(rho);
  m.psd = is_hermitian(rho, tol.herm) && m.min_eigenvalue >= -tol.psd * std::max(1.0, x.norm());
  m.distance = a.states().distance(x);
  m.affine = m.distance <= tol.member * std::max(1.0, x.norm());
  return m;
}

bool member(const CausObject& a, const CMatrix& rho, const Tolerances& tol) {
  return membership(a, rho, tol).ok();
}

bool in_hull(const CausObject& a, const CMatrix& rho, double tol) {
  const RVector x = to_coords(rho);
  return a.states().distance(x) <= tol * std::max(1.0, x.norm());
}

MorphismCheck check_morphism(const ChoiMap& f, const CausObject& a, const CausObject& b,
                             const Tolerances& tol) {
  if (f.din() != a.dim() || f.dout() != b.dim()) {
    throw Error(ErrorKind::TypeMismatch, "check_morphism: map dimensions differ from the types");
  }
  MorphismCheck r;
  r.min_eigenvalue = min_eigenvalue(f.J);
  r.cp = r.min_eigenvalue >= -tol.psd * std::max(1.0, f.J.cwiseAbs().maxCoeff());
  const Index na = a.dim();
  const RVector fb = to_coords(caustyk::apply(f, from_coords(a.states().base(), na)));
  double res = b.states().distance(fb) / std::max(1.0, fb.norm());
  const RMatrix dirs = a.states().directions().basis();
  if (dirs.cols() > 0) {
    RMatrix img(b.dim() * b.dim(), dirs.cols());
    for (Index k = 0; k < dirs.cols(); ++k) {
      img.col(k) = to_coords(caustyk::apply(f, from_coords(dirs.col(k), na)));
    }
    res = std::max(res, b.states().directions().max_distance(img));
  }
  r.residual = res;
  r.affine = res <= tol.member;
  return r;
}

double alpha_scalar(const CausObject& a) {
  const Index n = a.dim();
  const RVector tr = trace_functional(n);
  // Tr is constant on the effect hull exactly when it is orthogonal to the
  // effect directions.
  const double drift = a.effects().directions().project(tr).norm();
  if (drift > kDefaultTolerances.sub * std::max(1.0, tr.norm())) {
    throw Error(ErrorKind::NotFlat, "alpha_scalar: effects have non-constant trace");
  }
  const double t = trace_of(a.effects().base(), n);
  if (!(t > 0.0)) throw Error(ErrorKind::NotFlat, "alpha_scalar: effects have non-positive trace");
  const double alpha = 1.0 / t;
  if (n <= 8) {
    const CausObject target = par(a, all_states(a));
    const CMatrix probe = alpha * structural(Structural::Cup, n).J;
    if (!member(target, probe)) {
      throw Error(ErrorKind::NotFlat, "alpha_scalar: scaled cup is not a state of A par |A|");
    }
  }
  return alpha;
}

bool interchange_check(const CMatrix& a_state, const CausObject& a, const CausObject& b,
                       const CMatrix& c_state, const CausObject& c, const CausObject& d,
                       const Tolerances& tol) {
  const Dims blocks{a.dim(), b.dim(), c.dim(), d.dim()};
  const std::size_t perm[] = {0, 2, 1, 3};
  const CMatrix joint = permute_factors(kron(a_state, c_state), blocks, perm);
  return member(seq(tensor(a, c), tensor(b, d)), joint, tol);
}

}  // namespace caustyk
