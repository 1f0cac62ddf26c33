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

#include "caustyk/signalling.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace caustyk {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

DecompPair make_pair(ChoiMap rho, ChoiMap sigma, Index z, const DecompPair& shape) {
  DecompPair p;
  p.rho = std::move(rho);
  p.sigma = std::move(sigma);
  p.z = z;
  p.dx = shape.dx;
  p.da = shape.da;
  p.db = shape.db;
  p.dxp = shape.dxp;
  return p;
}

// (id_X (x) id_A (x) f) applied to rho's Choi matrix.
ChoiMap push(const ChoiMap& f, const DecompPair& p) {
  const Dims d{p.dx, p.da, p.z};
  return ChoiMap({p.dx}, {p.da, f.dout()}, apply_on(f, p.rho.J, d, 2, 1));
}

bool is_pure(const CMatrix& j) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(j), Eigen::EigenvaluesOnly);
  const RVector& ev = es.eigenvalues();
  const Index n = ev.size();
  return n == 1 || std::abs(ev(n - 2)) <= 1e-8 * std::max(1.0, ev(n - 1));
}

ChoiMap isometry_map(const CMatrix& v) {
  return choi_of_kraus({v}, {v.cols()}, {v.rows()});
}

SlideStep reversed(const SlideStep& s) {
  SlideStep r = s;
  std::swap(r.before, r.after);
  r.forward = !s.forward;
  return r;
}

// Slide steps that carry p to the canonical pair c (minimal purification).
std::vector<SlideStep> to_canonical(const DecompPair& p, const DecompPair& c) {
  std::vector<SlideStep> steps;
  DecompPair cur = p;
  if (!is_pure(cur.rho.J)) {
    // Purify rho into an extra factor F and slide the discard of F.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(cur.rho.J));
    const RVector& ev = es.eigenvalues();
    const Index n = ev.size();
    const double thr = rank_threshold(ev(n - 1));
    Index f = 0;
    for (Index k = 0; k < n; ++k) f += ev(k) > thr ? 1 : 0;
    CVector t = CVector::Zero(n * f);
    Index col = 0;
    for (Index k = n; k-- > 0 && col < f;) {
      const CVector w = std::sqrt(ev(k)) * es.eigenvectors().col(k);
      for (Index i = 0; i < n; ++i) t(i * f + col) = w(i);
      ++col;
    }
    std::vector<CMatrix> kraus;
    for (Index k = 0; k < f; ++k) {
      CMatrix op = CMatrix::Zero(cur.z, cur.z * f);
      for (Index i = 0; i < cur.z; ++i) op(i, i * f + k) = 1.0;
      kraus.push_back(std::move(op));
    }
    SlideStep s;
    s.kind = "discard";
    s.f = choi_of_kraus(kraus, {cur.z, f}, {cur.z});
    s.before = cur;
    s.after = make_pair(ChoiMap({cur.dx}, {cur.da, cur.z * f}, t * t.adjoint()),
                        compose(cur.sigma, ChoiMap({cur.z * f}, {cur.z}, s.f.J)), cur.z * f, cur);
    s.f = ChoiMap({cur.z * f}, {cur.z}, s.f.J);
    s.forward = false;
    s.residual = verify_step(s);
    steps.push_back(s);
    cur = s.after;
  }
  const Dilation dc = dilation_of_pure(c.rho.J, c.dx, c.da, c.z);
  const Dilation dp = dilation_of_pure(cur.rho.J, cur.dx, cur.da, cur.z);
  const CMatrix v = dilation_isometry(dc, dp);
  SlideStep s;
  s.kind = "isometry";
  s.f = isometry_map(v);
  s.before = cur;
  s.after = make_pair(c.rho, compose(cur.sigma, s.f), c.z, c);
  s.forward = false;
  s.residual = verify_step(s);
  steps.push_back(s);
  return steps;
}

std::optional<SlideStep> direct_slide(const DecompPair& p1, const DecompPair& p2, double tol) {
  try {
    if (!is_pure(p1.rho.J) || !is_pure(p2.rho.J)) return std::nullopt;
    const Dilation d1 = dilation_of_pure(p1.rho.J, p1.dx, p1.da, p1.z);
    const Dilation d2 = dilation_of_pure(p2.rho.J, p2.dx, p2.da, p2.z);
    SlideStep s;
    s.kind = "isometry";
    s.before = p1;
    s.after = p2;
    if (p1.z <= p2.z) {
      s.f = isometry_map(dilation_isometry(d1, d2));
      s.forward = true;
    } else {
      s.f = isometry_map(dilation_isometry(d2, d1));
      s.forward = false;
    }
    s.residual = verify_step(s);
    if (s.residual <= tol) return s;
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(Signalling s) {
  switch (s) {
    case Signalling::Both: return "both";
    case Signalling::AToBOnly: return "A_to_B_only";
    case Signalling::BToAOnly: return "B_to_A_only";
    case Signalling::TwoWay: return "two_way";
  }
  return "two_way";
}

SignallingReport nonsignalling_test(const CMatrix& j, Index a_in, Index b_in, Index a_out,
                                    Index b_out, double tol) {
  const Dims d{a_in, b_in, a_out, b_out};
  if (j.rows() != product(d)) throw Error(ErrorKind::ShapeMismatch, "nonsignalling_test: dimension mismatch");
  const ChoiMap ch({a_in, b_in}, {a_out, b_out}, j);
  if (!is_cp(ch) || tp_residual(ch) > 1e-8) {
    throw Error(ErrorKind::NotPositive, "nonsignalling_test: input is not a channel");
  }
  SignallingReport r;
  {
    // B's output marginal must not depend on A's input.
    const std::size_t keep[] = {0, 1, 3};
    const CMatrix mb = partial_trace(j, d, keep);
    const Dims md{a_in, b_in, b_out};
    const std::size_t rest[] = {1, 2};
    const CMatrix red = partial_trace(mb, md, rest);
    r.a_to_b = max_abs(mb - kron(identity(a_in), red) / static_cast<double>(a_in));
  }
  {
    const std::size_t keep[] = {0, 1, 2};
    const CMatrix ma = partial_trace(j, d, keep);
    const Dims md{a_in, b_in, a_out};
    const std::size_t rest[] = {0, 2};
    const CMatrix red = partial_trace(ma, md, rest);
    const Dims ed{a_in, a_out, b_in};
    const std::size_t perm[] = {0, 2, 1};
    const CMatrix expect = permute_factors(kron(red, identity(b_in)), ed, perm) / static_cast<double>(b_in);
    r.b_to_a = max_abs(ma - expect);
  }
  const bool ab = r.a_to_b > tol, ba = r.b_to_a > tol;
  r.kind = ab ? (ba ? Signalling::TwoWay : Signalling::AToBOnly)
              : (ba ? Signalling::BToAOnly : Signalling::Both);
  return r;
}

CMatrix channel_to_hom_layout(const CMatrix& j, Index a_in, Index b_in, Index a_out, Index b_out) {
  const Dims d{a_in, b_in, a_out, b_out};
  const std::size_t perm[] = {0, 2, 1, 3};
  return permute_factors(j, d, perm);
}

CMatrix hom_to_channel_layout(const CMatrix& j, Index a_in, Index a_out, Index b_in, Index b_out) {
  const Dims d{a_in, a_out, b_in, b_out};
  const std::size_t perm[] = {0, 2, 1, 3};
  return permute_factors(j, d, perm);
}

CMatrix recompose(const DecompPair& p) {
  const Dims d{p.dx, p.da, p.z};
  if (p.rho.J.rows() != product(d) || p.sigma.din() != p.z || p.sigma.dout() != p.db * p.dxp) {
    throw Error(ErrorKind::ShapeMismatch, "recompose: pair has inconsistent dimensions");
  }
  return apply_on(p.sigma, p.rho.J, d, 2, 1);
}

namespace {

// With `shortcut` off the mediator is always the minimal purification of the
// (X, A) marginal, which the certificate builder relies on.
DecompPair decompose_impl(const CMatrix& tau, const CausObject& a, const CausObject& b, Index dx,
                          Index dxp, const Tolerances& tol, bool shortcut) {
  const Index da = a.dim(), db = b.dim();
  const Index left = dx * da, right = db * dxp;
  if (tau.rows() != left * right || tau.cols() != left * right) {
    throw Error(ErrorKind::ShapeMismatch, "comb_decompose: tau does not match (X, A, B, X')");
  }
  // Close the B side with the flat effect mu * I; on one-way input the
  // resulting (X, A) marginal does not depend on that choice.
  const double mu = dual(b).flat_lambda();
  const CMatrix t = hermitian_part(tau);
  const Dims split{left, right};
  const std::size_t keep[] = {0};
  const CMatrix m = mu * partial_trace(t, split, keep);

  // Product input needs no mediator.
  const std::size_t keep_right[] = {1};
  const CMatrix rest = partial_trace(t, split, keep_right);
  const Complex c = t.trace();
  if (shortcut && dx == 1 && std::abs(c) > 0.0 && max_abs(kron(m, rest) / (mu * c) - t) <= tol.round_trip * std::max(1.0, max_abs(t))) {
    DecompPair p;
    p.rho = ChoiMap({1}, {da, 1}, m);
    p.sigma = ChoiMap({1}, {db, dxp}, hermitian_part(rest / (mu * c)));
    p.da = da;
    p.db = db;
    p.dxp = dxp;
    if (member(hom(unit(), par(b, first_order(dxp))), p.sigma.J, tol)) return p;
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const RVector& ev = es.eigenvalues();
  const double top = ev(left - 1);
  if (!(top > 0.0)) throw Error(ErrorKind::NotOneWay, "comb_decompose: marginal vanishes");
  const double thr = tol.sub * top;
  std::vector<Index> support;
  for (Index k = left; k-- > 0;) {
    if (ev(k) > thr) support.push_back(k);
  }
  const Index z = static_cast<Index>(support.size());

  // rho is the minimal purification of the marginal; sigma undoes it on
  // the support: S = (K (x) I) T (K (x) I)^dagger with K = L^-1/2 U^dagger.
  CVector r = CVector::Zero(left * z);
  CMatrix k(z, left);
  for (Index i = 0; i < z; ++i) {
    const Index e = support[static_cast<std::size_t>(i)];
    const CVector u = es.eigenvectors().col(e);
    for (Index q = 0; q < left; ++q) r(q * z + i) = std::sqrt(ev(e)) * u(q);
    k.row(i) = u.adjoint() / std::sqrt(ev(e));
  }
  const CMatrix kk = kron(k, identity(right));
  const CMatrix s = hermitian_part(kk * t * kk.adjoint());

  DecompPair p;
  p.rho = ChoiMap({dx}, {da, z}, r * r.adjoint());
  p.sigma = ChoiMap({z}, {db, dxp}, s);
  p.z = z;
  p.dx = dx;
  p.da = da;
  p.db = db;
  p.dxp = dxp;

  const CausObject sigma_type = hom(first_order(z), par(b, first_order(dxp)));
  const RVector sc = to_coords(s);
  const double gap = sigma_type.states().distance(sc) / std::max(1.0, sc.norm());
  if (gap > tol.one_way) {
    std::ostringstream os;
    os << "comb_decompose: not one-way (residual " << gap << ")";
    throw Error(ErrorKind::NotOneWay, os.str());
  }
  const double rt = max_abs(recompose(p) - tau) / std::max(1.0, max_abs(tau));
  if (rt > tol.round_trip) {
    std::ostringstream os;
    os << "comb_decompose: recomposition differs from input by " << rt;
    throw Error(ErrorKind::Inconsistency, os.str());
  }
  return p;
}

}  // namespace

DecompPair comb_decompose(const CMatrix& tau, const CausObject& a, const CausObject& b, Index dx,
                          Index dxp, const Tolerances& tol) {
  return decompose_impl(tau, a, b, dx, dxp, tol, true);
}

bool pair_well_typed(const DecompPair& p, const CausObject& a, const CausObject& b,
                     const Tolerances& tol) {
  if (a.dim() != p.da || b.dim() != p.db) return false;
  const CausObject rt = hom(first_order(p.dx), par(a, first_order(p.z)));
  const CausObject st = hom(first_order(p.z), par(b, first_order(p.dxp)));
  return member(rt, p.rho.J, tol) && member(st, p.sigma.J, tol);
}

bool coend_equiv(const DecompPair& p1, const DecompPair& p2, double tol) {
  if (p1.dx != p2.dx || p1.da != p2.da || p1.db != p2.db || p1.dxp != p2.dxp) {
    throw Error(ErrorKind::TypeMismatch, "coend_equiv: pairs target different types");
  }
  const CMatrix c1 = recompose(p1), c2 = recompose(p2);
  return max_abs(c1 - c2) <= tol * std::max(1.0, max_abs(c1));
}

double verify_step(const SlideStep& s) {
  if (!is_cp(s.f) || tp_residual(s.f) > 1e-9) return std::numeric_limits<double>::infinity();
  const DecompPair& zside = s.forward ? s.before : s.after;
  const DecompPair& iside = s.forward ? s.after : s.before;
  if (s.f.din() != zside.z || s.f.dout() != iside.z) return std::numeric_limits<double>::infinity();
  const double pushed = max_abs(push(s.f, zside).J - iside.rho.J);
  const double pulled = max_abs(compose(iside.sigma, s.f).J - zside.sigma.J);
  const double composite = max_abs(recompose(s.before) - recompose(s.after));
  return std::max({pushed, pulled, composite});
}

std::vector<SlideStep> equiv_certificate(const DecompPair& p1, const DecompPair& p2,
                                         const CausObject& a, const CausObject& b,
                                         const Tolerances& tol) {
  if (!coend_equiv(p1, p2, tol.round_trip)) {
    throw Error(ErrorKind::CertificateUnavailable, "equiv_certificate: composites differ");
  }
  if (p1.z == p2.z && max_abs(p1.rho.J - p2.rho.J) <= tol.slide &&
      max_abs(p1.sigma.J - p2.sigma.J) <= tol.slide) {
    return {};
  }
  if (auto s = direct_slide(p1, p2, tol.slide)) return {*s};

  try {
    const DecompPair c = decompose_impl(recompose(p1), a, b, p1.dx, p1.dxp, tol, false);
    std::vector<SlideStep> chain = to_canonical(p1, c);
    std::vector<SlideStep> back = to_canonical(p2, c);
    // Both chains end at (c.rho, .); the mediator maps must agree there.
    const double meet = max_abs(chain.back().after.sigma.J - back.back().after.sigma.J);
    if (meet > tol.slide) {
      std::ostringstream os;
      os << "equiv_certificate: canonical forms differ by " << meet;
      throw Error(ErrorKind::CertificateUnavailable, os.str());
    }
    back.back().after = chain.back().after;
    for (auto it = back.rbegin(); it != back.rend(); ++it) chain.push_back(reversed(*it));
    for (auto& s : chain) {
      s.residual = verify_step(s);
      if (!(s.residual <= tol.slide)) {
        std::ostringstream os;
        os << "equiv_certificate: " << s.kind << " step residual " << s.residual;
        throw Error(ErrorKind::CertificateUnavailable, os.str());
      }
    }
    return chain;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CertificateUnavailable) throw;
    throw Error(ErrorKind::CertificateUnavailable, std::string("equiv_certificate: ") + e.what());
  }
}

}  // namespace caustyk
