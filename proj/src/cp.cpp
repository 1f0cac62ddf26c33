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

#include "caustyk/cp.hpp"
#include "caustyk/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace caustyk {

namespace {

void check_dims(const Dims& dims, const char* what) {
  if (dims.empty()) throw Error(ErrorKind::InvalidDimension, std::string(what) + ": empty factor list");
  for (Index d : dims) {
    if (d < 1) throw Error(ErrorKind::InvalidDimension, std::string(what) + ": factor dimension < 1");
  }
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMatrix omega_projector(Index d) {
  CVector w = CVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) w(i * d + i) = 1.0;
  return w * w.adjoint();
}

}  // namespace

ChoiMap::ChoiMap(Dims in, Dims out, CMatrix j)
    : in_dims(std::move(in)), out_dims(std::move(out)), J(std::move(j)) {
  check_dims(in_dims, "ChoiMap");
  check_dims(out_dims, "ChoiMap");
  const Index n = product(in_dims) * product(out_dims);
  if (J.rows() != n || J.cols() != n) {
    throw Error(ErrorKind::ShapeMismatch, "ChoiMap: J does not match the factor lists");
  }
}

ChoiMap state_map(const CMatrix& rho, Dims dims) { return ChoiMap({1}, std::move(dims), rho); }

ChoiMap effect_map(const CMatrix& pi, Dims dims) {
  return ChoiMap(std::move(dims), {1}, pi.transpose());
}

ChoiMap choi_of_kraus(const std::vector<CMatrix>& kraus, Dims in, Dims out) {
  check_dims(in, "choi_of_kraus");
  check_dims(out, "choi_of_kraus");
  const Index din = product(in), dout = product(out);
  CMatrix j = CMatrix::Zero(din * dout, din * dout);
  for (const CMatrix& k : kraus) {
    if (k.rows() != dout || k.cols() != din) {
      throw Error(ErrorKind::ShapeMismatch, "choi_of_kraus: Kraus operator has the wrong shape");
    }
    // Column vector with entry (i, o) = K(o, i).
    const CVector v = k.reshaped();
    j += v * v.adjoint();
  }
  return ChoiMap(std::move(in), std::move(out), std::move(j));
}

std::vector<CMatrix> kraus_of_choi(const ChoiMap& f, double rel) {
  const Index din = f.din(), dout = f.dout();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(f.J));
  const RVector& ev = es.eigenvalues();
  const double top = std::max(std::abs(ev(ev.size() - 1)), std::abs(ev(0)));
  if (ev(0) < -kDefaultTolerances.psd * std::max(1.0, top)) {
    throw Error(ErrorKind::NotPositive, "kraus_of_choi: Choi matrix is not positive");
  }
  const double thr = rank_threshold(top, rel);
  std::vector<CMatrix> out;
  for (Index k = ev.size(); k-- > 0;) {
    if (ev(k) <= thr) break;
    const CVector v = std::sqrt(ev(k)) * es.eigenvectors().col(k);
    out.push_back(Eigen::Map<const CMatrix>(v.data(), dout, din));
  }
  return out;
}

CMatrix apply(const ChoiMap& f, const CMatrix& rho) {
  const Index din = f.din(), dout = f.dout();
  if (rho.rows() != din || rho.cols() != din) {
    throw Error(ErrorKind::ShapeMismatch, "apply: input dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(dout, dout);
  for (Index j = 0; j < din; ++j) {
    for (Index i = 0; i < din; ++i) {
      const Complex c = rho(i, j);
      if (c != Complex(0.0)) out += c * f.J.block(i * dout, j * dout, dout, dout);
    }
  }
  return out;
}

CMatrix apply_on(const ChoiMap& f, const CMatrix& m, const Dims& dims,
                 std::size_t first, std::size_t count, Dims* out_dims) {
  if (first + count > dims.size()) throw Error(ErrorKind::ShapeMismatch, "apply_on: factor run out of range");
  if (m.rows() != product(dims)) throw Error(ErrorKind::ShapeMismatch, "apply_on: dims do not match matrix");
  Index run = 1;
  for (std::size_t k = first; k < first + count; ++k) run *= dims[k];
  if (run != f.din()) throw Error(ErrorKind::ShapeMismatch, "apply_on: run dimension differs from map input");

  // Move the run to the end: (before, after, run).
  Dims rest;
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (k < first || k >= first + count) {
      perm.push_back(k);
      rest.push_back(dims[k]);
    }
  }
  for (std::size_t k = first; k < first + count; ++k) perm.push_back(k);
  const CMatrix p = permute_factors(m, dims, perm);

  const Index dr = product(rest);
  const Index din = f.din(), dout = f.dout();
  CMatrix q(dr * dout, dr * dout);
  for (Index b = 0; b < dr; ++b) {
    for (Index a = 0; a < dr; ++a) {
      q.block(a * dout, b * dout, dout, dout) = caustyk::apply(f, CMatrix(p.block(a * din, b * din, din, din)));
    }
  }

  // (before, after, out) -> (before, out, after).
  const std::size_t before = first;
  const std::size_t after = rest.size() - before;
  Dims tmp = rest;
  tmp.push_back(dout);
  std::vector<std::size_t> back;
  for (std::size_t k = 0; k < before; ++k) back.push_back(k);
  back.push_back(rest.size());
  for (std::size_t k = 0; k < after; ++k) back.push_back(before + k);
  CMatrix result = permute_factors(q, tmp, back);
  if (out_dims) {
    Dims nd(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(first));
    const bool trivial_out = f.out_dims.size() == 1 && f.out_dims[0] == 1;
    if (!trivial_out) nd.insert(nd.end(), f.out_dims.begin(), f.out_dims.end());
    nd.insert(nd.end(), dims.begin() + static_cast<std::ptrdiff_t>(first + count), dims.end());
    if (nd.empty()) nd.push_back(1);
    *out_dims = std::move(nd);
  }
  return result;
}

ChoiMap compose(const ChoiMap& g, const ChoiMap& f) {
  if (f.dout() != g.din()) throw Error(ErrorKind::ShapeMismatch, "compose: dimension mismatch");
  const Dims d{f.din(), f.dout()};
  return ChoiMap(f.in_dims, g.out_dims, apply_on(g, f.J, d, 1, 1));
}

ChoiMap tensor(const ChoiMap& f, const ChoiMap& g) {
  const Dims d{f.din(), f.dout(), g.din(), g.dout()};
  const std::size_t perm[] = {0, 2, 1, 3};
  return ChoiMap(concat(f.in_dims, g.in_dims), concat(f.out_dims, g.out_dims),
                 permute_factors(kron(f.J, g.J), d, perm));
}

ChoiMap scale(const ChoiMap& f, double s) { return ChoiMap(f.in_dims, f.out_dims, s * f.J); }

ChoiMap structural(Structural kind, Index d, Index d2) {
  if (d < 1) throw Error(ErrorKind::InvalidDimension, "structural: dimension < 1");
  switch (kind) {
    case Structural::Cup: return ChoiMap({1}, {d, d}, omega_projector(d));
    case Structural::Cap: return ChoiMap({d, d}, {1}, omega_projector(d));
    case Structural::Discard: return ChoiMap({d}, {1}, identity(d));
    case Structural::Mix: return ChoiMap({1}, {d}, identity(d) / static_cast<double>(d));
    case Structural::Identity: return ChoiMap({d}, {d}, omega_projector(d));
    case Structural::Swap: {
      if (d2 < 1) throw Error(ErrorKind::InvalidDimension, "structural: swap needs two dimensions");
      CMatrix u = CMatrix::Zero(d * d2, d * d2);
      for (Index a = 0; a < d; ++a) {
        for (Index b = 0; b < d2; ++b) u(b * d + a, a * d2 + b) = 1.0;
      }
      return choi_of_kraus({u}, {d, d2}, {d2, d});
    }
  }
  throw Error(ErrorKind::InvalidDimension, "structural: unknown kind");
}

ChoiMap unitary_map(const CMatrix& u, Dims dims) { return choi_of_kraus({u}, dims, dims); }

bool is_cp(const ChoiMap& f, double tol) {
  return psd_check(f.J, tol * std::max(1.0, max_abs(f.J)));
}

double tp_residual(const ChoiMap& f) {
  const Dims d{f.din(), f.dout()};
  const std::size_t keep[] = {0};
  return max_abs(partial_trace(f.J, d, keep) - identity(f.din()));
}

bool is_tp(const ChoiMap& f, double tol) { return tp_residual(f) <= tol; }

double choi_distance(const ChoiMap& f, const ChoiMap& g) {
  if (f.din() != g.din() || f.dout() != g.dout()) {
    throw Error(ErrorKind::ShapeMismatch, "choi_distance: maps have different shapes");
  }
  return max_abs(f.J - g.J);
}

Dilation stinespring(const ChoiMap& f, double rel) {
  const auto kraus = kraus_of_choi(f, rel);
  Dilation p;
  p.din = f.din();
  p.dout = f.dout();
  p.env = std::max<Index>(1, static_cast<Index>(kraus.size()));
  p.V = CMatrix::Zero(p.dout * p.env, p.din);
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    for (Index o = 0; o < p.dout; ++o) {
      p.V.row(o * p.env + static_cast<Index>(k)) = kraus[k].row(o);
    }
  }
  return p;
}

Dilation dilation_of_pure(const CMatrix& j, Index din, Index dout, Index env) {
  const Index n = din * dout * env;
  if (j.rows() != n) throw Error(ErrorKind::ShapeMismatch, "dilation_of_pure: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(j));
  const RVector& ev = es.eigenvalues();
  const double top = ev(n - 1);
  if (n > 1 && std::abs(ev(n - 2)) > 1e-8 * std::max(1.0, top)) {
    throw Error(ErrorKind::Inconsistency, "dilation_of_pure: map is not pure");
  }
  const CVector w = std::sqrt(std::max(top, 0.0)) * es.eigenvectors().col(n - 1);
  Dilation p;
  p.din = din;
  p.dout = dout;
  p.env = env;
  p.V.resize(dout * env, din);
  for (Index i = 0; i < din; ++i) {
    for (Index r = 0; r < dout * env; ++r) p.V(r, i) = w(i * dout * env + r);
  }
  return p;
}

ChoiMap traced_channel(const Dilation& p) {
  std::vector<CMatrix> kraus;
  for (Index k = 0; k < p.env; ++k) {
    CMatrix kk(p.dout, p.din);
    for (Index o = 0; o < p.dout; ++o) kk.row(o) = p.V.row(o * p.env + k);
    kraus.push_back(std::move(kk));
  }
  return choi_of_kraus(kraus, {p.din}, {p.dout});
}

ChoiMap dilation_map(const Dilation& p) { return choi_of_kraus({p.V}, {p.din}, {p.dout, p.env}); }

CMatrix dilation_isometry(const Dilation& p1, const Dilation& p2) {
  if (p1.din != p2.din || p1.dout != p2.dout) {
    throw Error(ErrorKind::NoIsometry, "dilation_isometry: dilations of different shapes");
  }
  if (p1.env > p2.env) throw Error(ErrorKind::NoIsometry, "dilation_isometry: first environment is larger");
  const double gap = choi_distance(traced_channel(p1), traced_channel(p2));
  if (gap > 1e-8) {
    std::ostringstream os;
    os << "dilation_isometry: the dilations trace to different channels (gap " << gap << ")";
    throw Error(ErrorKind::NoIsometry, os.str());
  }
  // Row k of A_p is the k-th Kraus operator flattened over (o, i).
  auto flatten = [](const Dilation& p) {
    CMatrix a(p.env, p.dout * p.din);
    for (Index k = 0; k < p.env; ++k) {
      for (Index o = 0; o < p.dout; ++o) {
        for (Index i = 0; i < p.din; ++i) a(k, o * p.din + i) = p.V(o * p.env + k, i);
      }
    }
    return a;
  };
  const CMatrix a1 = flatten(p1), a2 = flatten(p2);
  const CMatrix vt = a1.transpose().completeOrthogonalDecomposition().solve(CMatrix(a2.transpose()));
  const CMatrix v = vt.transpose();
  const double residual = max_abs(v * a1 - a2);
  const double gram = max_abs(v.adjoint() * v - CMatrix::Identity(p1.env, p1.env));
  if (residual > 1e-8 * std::max(1.0, max_abs(a2)) || gram > 1e-9) {
    std::ostringstream os;
    os << "dilation_isometry: no isometry (residual " << residual << ", gram " << gram << ")";
    throw Error(ErrorKind::NoIsometry, os.str());
  }
  return v;
}

Shadow shadow(const ChoiMap& rho, Index z, const ChoiMap& sigma1, const ChoiMap& sigma2, double tol) {
  if (z < 1 || rho.dout() % z != 0 || sigma1.din() != z || sigma2.din() != z) {
    throw Error(ErrorKind::ShapeMismatch, "shadow: mediator dimension mismatch");
  }
  const Index da = rho.dout() / z;
  const Dims d{rho.din(), da, z};
  const std::size_t keep[] = {2};
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(partial_trace(rho.J, d, keep)));
  const RVector& ev = es.eigenvalues();
  const double thr = rank_threshold(ev(z - 1), kDefaultTolerances.sub);
  std::vector<Index> in_support, off_support;
  for (Index k = 0; k < z; ++k) (ev(k) > thr ? in_support : off_support).push_back(k);
  if (in_support.empty()) throw Error(ErrorKind::ShadowNotFound, "shadow: mediator marginal is zero");

  const CMatrix& u = es.eigenvectors();
  CMatrix proj = CMatrix::Zero(z, z);
  for (Index k : in_support) proj += u.col(k) * u.col(k).adjoint();
  std::vector<CMatrix> kraus{proj};
  const double w = 1.0 / std::sqrt(static_cast<double>(in_support.size()));
  for (Index l : off_support) {
    for (Index m : in_support) kraus.push_back(w * u.col(m) * u.col(l).adjoint());
  }
  Shadow s;
  s.pi = choi_of_kraus(kraus, {z}, {z});
  s.idempotence = choi_distance(compose(s.pi, s.pi), s.pi);
  const Dims rd{rho.din(), da, z};
  s.absorb_state = max_abs(apply_on(s.pi, rho.J, rd, 2, 1) - rho.J);
  s.absorb_effect = choi_distance(compose(sigma1, s.pi), compose(sigma2, s.pi));
  const double worst = std::max({s.idempotence, s.absorb_state, s.absorb_effect});
  if (worst > tol) {
    std::ostringstream os;
    os << "shadow: residual " << worst << " exceeds " << tol;
    throw Error(ErrorKind::ShadowNotFound, os.str());
  }
  return s;
}

ChoiMap ctrl(const std::vector<CMatrix>& states) {
  if (states.empty()) throw Error(ErrorKind::InvalidDimension, "ctrl: empty state list");
  const Index n = static_cast<Index>(states.size());
  const Index d = states.front().rows();
  CMatrix j = CMatrix::Zero(n * d, n * d);
  for (Index i = 0; i < n; ++i) {
    const CMatrix& s = states[static_cast<std::size_t>(i)];
    if (s.rows() != d || s.cols() != d) throw Error(ErrorKind::ShapeMismatch, "ctrl: states of different dimension");
    j.block(i * d, i * d, d, d) = s;
  }
  return ChoiMap({n}, {d}, std::move(j));
}

CMatrix classical_point(const std::vector<double>& p) {
  CMatrix m = CMatrix::Zero(static_cast<Index>(p.size()), static_cast<Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = p[i];
  return m;
}

}  // namespace caustyk
