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

#include "caustyk/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace caustyk {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

FImage F_eval(const CausObject& a, const CausObject& x, const CausObject& xp) {
  if (!x.first_order() || !xp.first_order()) {
    throw Error(ErrorKind::TypeMismatch, "F_eval: boundary objects must be first-order");
  }
  return FImage{a, x, xp, hom(x, par(a, xp))};
}

CMatrix F_mor(const ChoiMap& f, const CMatrix& tau, Index dx, Index dxp) {
  const Dims d{dx, f.din(), dxp};
  return apply_on(f, tau, d, 1, 1);
}

CMatrix profunctor_action(const CMatrix& tau, Index da, const ChoiMap& g, const ChoiMap& h) {
  const Index dx = g.dout(), dxp = h.din();
  const ChoiMap t({dx}, {da, dxp}, tau);
  const ChoiMap pre = compose(t, g);
  const Dims d{g.din(), da, dxp};
  return apply_on(h, pre.J, d, 2, 1);
}

CMatrix strength(const CMatrix& tau, Index dx, Index da, Index dxp, const ChoiMap& k) {
  const Dims d{dx, da, dxp, k.din(), k.dout()};
  const std::size_t perm[] = {0, 3, 1, 2, 4};
  return permute_factors(kron(tau, k.J), d, perm);
}

CMatrix lax_tensor(const CMatrix& tau1, Index dx1, Index da, Index dx1p, const CMatrix& tau2,
                   Index dx2, Index db, Index dx2p) {
  const Dims d{dx1, da, dx1p, dx2, db, dx2p};
  const std::size_t perm[] = {0, 3, 1, 4, 2, 5};
  return permute_factors(kron(tau1, tau2), d, perm);
}

CMatrix sample_member(const CausObject& obj, Rng& rng) {
  const Index n = obj.dim();
  const double lambda = obj.flat_lambda();
  const CMatrix centre = lambda * identity(n);
  CMatrix p = random_density(n, rng, rng.integer(1, n));
  p *= lambda * static_cast<double>(n);
  const CMatrix x = from_coords(obj.states().project(to_coords(p)), n);
  const CMatrix delta = x - centre;
  const double m = min_eigenvalue(delta);
  double t = 1.0;
  // lambda * I is positive definite, so a short enough step stays positive.
  if (m < 0.0) t = std::min(1.0, 0.9 * lambda / -m);
  return hermitian_part(centre + t * delta);
}

CMatrix cup_probe(const CausObject& a) {
  return alpha_scalar(a) * structural(Structural::Cup, a.dim()).J;
}

bool faithfulness_probe(const ChoiMap& f, const ChoiMap& g, const CausObject& a, double tol) {
  const Index n = a.dim();
  const double alpha = alpha_scalar(a);
  const CMatrix probe = alpha * structural(Structural::Cup, n).J;
  const CMatrix df = F_mor(f, probe, 1, n) - F_mor(g, probe, 1, n);
  return max_abs(df) / alpha > tol;
}

FullnessReport fullness_reconstruct(const BlackBox& s, const CausObject& a, const CausObject& b,
                                    Rng& rng, int probes, double tol) {
  const Index n = a.dim(), nb = b.dim();
  const double alpha = alpha_scalar(a);
  const CMatrix out = s(alpha * structural(Structural::Cup, n).J, 1, n);
  if (out.rows() != nb * n) throw Error(ErrorKind::ShapeMismatch, "fullness_reconstruct: black box output has the wrong size");
  // (f (x) id)(cup) lives on (B, A'); swap to the Choi layout (A, B).
  const Dims d{nb, n};
  const std::size_t swap[] = {1, 0};
  FullnessReport r;
  r.candidate = ChoiMap(a.dims(), b.dims(), permute_factors(out / alpha, d, swap));
  const MorphismCheck mc = check_morphism(r.candidate, a, b);
  r.cp = mc.cp;
  r.affine = mc.affine;
  if (!r.cp || !r.affine) {
    std::ostringstream os;
    os << (r.cp ? "candidate breaks the affine constraints (residual " : "candidate is not completely positive (min eigenvalue ");
    os << (r.cp ? mc.residual : mc.min_eigenvalue) << ")";
    r.counterexample = os.str();
    return r;
  }
  r.probes_agree = true;
  for (int k = 0; k < probes; ++k) {
    Index dx = rng.integer(1, 3), dxp = rng.integer(1, 3);
    while (dx * n * dxp > 64 && (dx > 1 || dxp > 1)) (dx >= dxp ? dx : dxp) -= 1;
    const FImage fi = F_eval(a, first_order(dx), first_order(dxp));
    const CMatrix tau = sample_member(fi.carrier, rng);
    const double gap = max_abs(s(tau, dx, dxp) - F_mor(r.candidate, tau, dx, dxp));
    r.worst_probe = std::max(r.worst_probe, gap);
    if (gap > tol && r.probes_agree) {
      r.probes_agree = false;
      std::ostringstream os;
      os << "probe at boundary (" << dx << ", " << dxp << ") differs by " << gap;
      r.counterexample = os.str();
    }
  }
  return r;
}

ClosureReport strong_closure_check(const CausObject& a, const CausObject& b, const CausObject& x,
                                   const CausObject& xp, Rng& rng, int samples) {
  const CausObject lhs = F_eval(hom(a, b), x, xp).carrier;       // (X, A, B, X')
  const CausObject rhs = hom(a, F_eval(b, x, xp).carrier);       // (A, X, B, X')
  const Dims blocks{x.dim(), a.dim(), b.dim(), xp.dim()};
  const Dims rblocks{a.dim(), x.dim(), b.dim(), xp.dim()};
  const std::size_t perm[] = {1, 0, 2, 3};
  ClosureReport r;
  r.lhs_rank = lhs.states().direction_rank();
  r.rhs_rank = rhs.states().direction_rank();
  r.hulls_equal = approx_equal(permute(lhs.states(), blocks, perm), rhs.states());
  for (int k = 0; k < samples; ++k) {
    const CMatrix s = sample_member(lhs, rng);
    const CMatrix t = permute_factors(s, blocks, perm);
    r.failures += member(rhs, t) ? 0 : 1;
    r.round_trip = std::max(r.round_trip, max_abs(permute_factors(t, rblocks, perm) - s));
    const CMatrix u = sample_member(rhs, rng);
    const CMatrix v = permute_factors(u, rblocks, perm);
    r.failures += member(lhs, v) ? 0 : 1;
    r.round_trip = std::max(r.round_trip, max_abs(permute_factors(v, blocks, perm) - u));
    r.transported += 2;
  }
  return r;
}

MorphismSample random_morphism(int family, Rng& rng) {
  const CausObject f2 = first_order(2);
  const CausObject h2 = hom(f2, f2);
  MorphismSample m{"", f2, f2, ChoiMap()};
  switch (((family % 4) + 4) % 4) {
    case 0: {
      const Index d = rng.integer(1, 3), e = rng.integer(1, 3);
      m.family = "FO->FO";
      m.a = first_order(d);
      m.b = first_order(e);
      m.h = random_channel({d}, {e}, rng, rng.integer(1, d * e));
      break;
    }
    case 1:
      // Unital on the input leg, any channel on the output leg.
      m.family = "hom->hom";
      m.a = h2;
      m.b = h2;
      m.h = tensor(random_unital_channel(2, rng), random_channel({2}, {2}, rng));
      break;
    case 2:
      m.family = "hom->tensor";
      m.a = h2;
      m.b = tensor(f2, f2);
      m.h = scale(tensor(random_channel({2}, {2}, rng), random_channel({2}, {2}, rng)), 0.5);
      break;
    default:
      m.family = "seq->par";
      m.a = seq(h2, h2);
      m.b = par(h2, h2);
      m.h = tensor(tensor(random_unital_channel(2, rng), random_channel({2}, {2}, rng)),
                   tensor(random_unital_channel(2, rng), random_channel({2}, {2}, rng)));
      break;
  }
  m.h = ChoiMap(m.a.dims(), m.b.dims(), m.h.J);
  return m;
}

BlackBox adversarial_box(int which) {
  switch (which) {
    case 0:
      return [](const CMatrix& tau, Index dx, Index dxp) {
        const Dims d{dx, 2, dxp};
        const std::size_t f[] = {1};
        return partial_transpose(tau, d, f);
      };
    case 1:
      return [](const CMatrix& tau, Index, Index) { return CMatrix(2.0 * tau); };
    case 2:
      return [](const CMatrix& tau, Index dx, Index dxp) {
        if (dx == 1 && dxp == 2) return tau;
        CMatrix flip = CMatrix::Zero(2, 2);
        flip(0, 1) = flip(1, 0) = 1.0;
        return F_mor(unitary_map(flip, {2}), tau, dx, dxp);
      };
    default:
      throw Error(ErrorKind::InvalidDimension, "adversarial_box: index must be 0, 1 or 2");
  }
}

}  // namespace caustyk
