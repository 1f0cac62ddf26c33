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


#include <gtest/gtest.h>

#include "caustyk/signalling.hpp"
#include "caustyk/random.hpp"
#include "oracle.hpp"

namespace caustyk {
namespace {

const CausObject& chan() {
  static const CausObject o = hom(first_order(2), first_order(2));
  return o;
}

// Measure A's input, copy the outcome to both outputs, discard B's input.
CMatrix measure_copy() {
  std::vector<CMatrix> ops;
  for (Index m = 0; m < 2; ++m) {
    for (Index b = 0; b < 2; ++b) {
      CMatrix k = CMatrix::Zero(4, 4);
      k(m * 2 + m, m * 2 + b) = 1.0;
      ops.push_back(k);
    }
  }
  return oracle::choi(ops, 4, 4);
}

CMatrix swap_choi() {
  CMatrix s = CMatrix::Zero(4, 4);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) s(b * 2 + a, a * 2 + b) = 1.0;
  return oracle::choi({s}, 4, 4);
}

TEST(Nonsignalling, Examples) {
  const CMatrix id = oracle::choi({CMatrix::Identity(4, 4)}, 4, 4);
  EXPECT_EQ(nonsignalling_test(id, 2, 2, 2, 2).kind, Signalling::Both);
  const SignallingReport sw = nonsignalling_test(swap_choi(), 2, 2, 2, 2);
  EXPECT_EQ(sw.kind, Signalling::TwoWay);
  EXPECT_GT(sw.a_to_b, 0.1);
  EXPECT_GT(sw.b_to_a, 0.1);
  const SignallingReport mc = nonsignalling_test(measure_copy(), 2, 2, 2, 2);
  EXPECT_EQ(mc.kind, Signalling::AToBOnly);
  const CMatrix flipped = oracle::choi(oracle::swap_parties({CMatrix::Identity(4, 4)}, 2, 2, 2, 2), 4, 4);
  EXPECT_EQ(nonsignalling_test(flipped, 2, 2, 2, 2).kind, Signalling::Both);
  EXPECT_STREQ(to_string(Signalling::AToBOnly), "A_to_B_only");
}

TEST(Nonsignalling, RejectsNonChannels) {
  EXPECT_THROW(nonsignalling_test(2.0 * swap_choi(), 2, 2, 2, 2), Error);
  EXPECT_THROW(nonsignalling_test(swap_choi(), 2, 2, 2, 3), Error);
}

// Brute-force marginals against the linear test and against the hom-type
// memberships of tensor, seq and par.
TEST(Nonsignalling, AgreesWithMarginalsAndMembership) {
  Rng rng(21);
  const CausObject t = tensor(chan(), chan()), s = seq(chan(), chan()), p = par(chan(), chan());
  for (int k = 0; k < 60; ++k) {
    std::vector<CMatrix> kraus;
    switch (k % 4) {
      case 0: {
        const auto a = oracle::random_kraus(2, 2, 2, rng), b = oracle::random_kraus(2, 2, 2, rng);
        for (const auto& x : a)
          for (const auto& y : b) kraus.push_back(oracle::kron(x, y));
        break;
      }
      case 1: kraus = oracle::one_way_kraus(2, 2, 2, 2, 2, rng); break;
      case 2: kraus = oracle::swap_parties(oracle::one_way_kraus(2, 2, 2, 2, 2, rng), 2, 2, 2, 2); break;
      default: kraus = oracle::random_kraus(4, 4, 4, rng);
    }
    const CMatrix j = oracle::choi(kraus, 4, 4);
    const bool ab = oracle::a_to_b(j, 2, 2, 2, 2) > 1e-9, ba = oracle::b_to_a(j, 2, 2, 2, 2) > 1e-9;
    const SignallingReport r = nonsignalling_test(j, 2, 2, 2, 2);
    EXPECT_EQ(r.kind == Signalling::Both, !ab && !ba) << k;
    EXPECT_EQ(r.kind == Signalling::AToBOnly, ab && !ba) << k;
    EXPECT_EQ(r.kind == Signalling::BToAOnly, !ab && ba) << k;
    const CMatrix h = channel_to_hom_layout(j, 2, 2, 2, 2);
    EXPECT_LT(oracle::max_abs(h - oracle::to_hom(j, 2, 2, 2, 2)), 1e-15);
    EXPECT_EQ(member(t, h), !ab && !ba) << k;
    EXPECT_EQ(member(s, h), !ba) << k;
    EXPECT_TRUE(member(p, h)) << k;
  }
}

TEST(Layout, RoundTrip) {
  Rng rng(22);
  const CMatrix j = random_density(2 * 3 * 2 * 3, rng);
  const CMatrix h = channel_to_hom_layout(j, 2, 3, 2, 3);
  EXPECT_LT(oracle::max_abs(h - oracle::reorder(j, {2, 3, 2, 3}, {0, 2, 1, 3})), 1e-15);
  EXPECT_LT(oracle::max_abs(hom_to_channel_layout(h, 2, 2, 3, 3) - j), 1e-15);
}

TEST(Decompose, ProductState) {
  Rng rng(23);
  const CausObject f2 = first_order(2), f3 = first_order(3);
  const CMatrix ra = random_density(2, rng), rb = random_density(3, rng);
  const DecompPair p = comb_decompose(oracle::kron(ra, rb), f2, f3);
  EXPECT_EQ(p.z, 1);
  EXPECT_LT(oracle::max_abs(p.rho.J - ra), 1e-9);
  EXPECT_LT(oracle::max_abs(p.sigma.J - rb), 1e-9);
}

// Wire comb: A's input passes to B's output through the memory.
TEST(Decompose, WireComb) {
  std::vector<CMatrix> ops;
  for (Index b = 0; b < 2; ++b) {
    CMatrix k = CMatrix::Zero(4, 4);
    for (Index a = 0; a < 2; ++a) k(a, a * 2 + b) = 1.0;
    ops.push_back(k);
  }
  const CMatrix tau = oracle::to_hom(oracle::choi(ops, 4, 4), 2, 2, 2, 2);
  const DecompPair p = comb_decompose(tau, chan(), chan());
  EXPECT_LE(p.z, 4);
  EXPECT_LT(oracle::max_abs(recompose(p) - tau), 1e-8);
  EXPECT_TRUE(pair_well_typed(p, chan(), chan()));
}

TEST(Decompose, SwapIsNotOneWay) {
  try {
    comb_decompose(oracle::to_hom(swap_choi(), 2, 2, 2, 2), chan(), chan());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotOneWay);
  }
}

TEST(Decompose, OneWayRoundTrip) {
  Rng rng(24);
  for (int k = 0; k < 30; ++k) {
    const Index ai = rng.integer(1, 3), ao = rng.integer(1, 3), bi = rng.integer(1, 3), bo = rng.integer(1, 3);
    if (ai * ao * bi * bo > 36) continue;
    const CMatrix j = oracle::choi(oracle::one_way_kraus(ai, ao, bi, bo, rng.integer(1, 3), rng), ai * bi, ao * bo);
    const CMatrix tau = oracle::to_hom(j, ai, bi, ao, bo);
    const CausObject a = hom(first_order(ai), first_order(ao)), b = hom(first_order(bi), first_order(bo));
    const DecompPair p = comb_decompose(tau, a, b);
    EXPECT_LT(oracle::max_abs(recompose(p) - tau), 1e-8) << k;
    EXPECT_LE(p.z, ai * ao * ai * ao) << k;
    EXPECT_TRUE(pair_well_typed(p, a, b)) << k;
  }
}

// Non-trivial X and X': with A and B first order every channel
// X -> (A, B, X') qualifies.
TEST(Decompose, WithContext) {
  Rng rng(25);
  const CausObject f2 = first_order(2);
  for (int k = 0; k < 5; ++k) {
    const CMatrix j = oracle::choi(oracle::random_kraus(2, 2 * 2 * 2, 4, rng), 2, 8);
    const DecompPair p = comb_decompose(j, f2, f2, 2, 2);
    EXPECT_LT(oracle::max_abs(recompose(p) - j), 1e-8);
    EXPECT_EQ(p.dx, 2);
  }
}

// rho prepares a Bell pair on (A, Z); sigma moves Z to B.
TEST(Recompose, BellThroughMemory) {
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  DecompPair p{ChoiMap({1}, {2, 2}, bell * bell.adjoint()), structural(Structural::Identity, 2), 2, 1, 2, 2, 1};
  EXPECT_LT(oracle::max_abs(recompose(p) - bell * bell.adjoint()), 1e-15);
}

TEST(Recompose, DiscardAndPrepareGivesProduct) {
  Rng rng(26);
  const CMatrix za = random_density(4, rng), rb = random_density(2, rng);
  DecompPair p{ChoiMap({1}, {2, 2}, za), ChoiMap({2}, {2}, oracle::kron(CMatrix::Identity(2, 2), rb)), 2, 1, 2, 2, 1};
  const CMatrix ra = oracle::ptrace(za, {2, 2}, {false, true});
  EXPECT_LT(oracle::max_abs(recompose(p) - oracle::kron(ra, rb)), 1e-14);
}

DecompPair unitary_slide(const DecompPair& p, const CMatrix& u) {
  DecompPair q = p;
  q.rho = ChoiMap({p.dx}, {p.da, p.z}, apply_on(unitary_map(u, {p.z}), p.rho.J, Dims{p.dx, p.da, p.z}, 2, 1));
  q.sigma = compose(p.sigma, unitary_map(u.adjoint(), {p.z}));
  return q;
}

// Z' = Z (x) 2 with the extra factor prepared in |0> and discarded by sigma.
DecompPair padded(const DecompPair& p) {
  DecompPair r = p;
  r.z = 2 * p.z;
  r.rho = ChoiMap({p.dx}, {p.da, 2 * p.z}, oracle::kron(p.rho.J, oracle::ket_bra(2, 0, 0)));
  r.sigma = compose(p.sigma, ChoiMap({2 * p.z}, {p.z}, tensor(structural(Structural::Identity, p.z),
                                                            structural(Structural::Discard, 2)).J));
  return r;
}

CMatrix one_way_tau(Rng& rng) {
  return oracle::to_hom(oracle::choi(oracle::one_way_kraus(2, 2, 2, 2, 2, rng), 4, 4), 2, 2, 2, 2);
}

TEST(CoendEquiv, Examples) {
  Rng rng(27);
  const DecompPair p = comb_decompose(one_way_tau(rng), chan(), chan());
  const DecompPair q = unitary_slide(p, haar_unitary(p.z, rng));
  EXPECT_TRUE(coend_equiv(p, q));
  EXPECT_TRUE(coend_equiv(p, padded(p)));
  const DecompPair other = comb_decompose(one_way_tau(rng), chan(), chan());
  EXPECT_FALSE(coend_equiv(p, other));
  DecompPair wrong = p;
  wrong.da = 1;
  wrong.db = 4 * p.db;
  EXPECT_THROW(coend_equiv(p, wrong), Error);
}

TEST(Certificate, IdenticalPairsGiveEmptyChain) {
  Rng rng(28);
  const DecompPair p = comb_decompose(one_way_tau(rng), chan(), chan());
  EXPECT_TRUE(equiv_certificate(p, p, chan(), chan()).empty());
}

TEST(Certificate, UnitarySlideRecoversTheUnitary) {
  Rng rng(29);
  for (int k = 0; k < 5; ++k) {
    const DecompPair p = comb_decompose(one_way_tau(rng), chan(), chan());
    const CMatrix u = haar_unitary(p.z, rng);
    const auto steps = equiv_certificate(p, unitary_slide(p, u), chan(), chan());
    ASSERT_EQ(steps.size(), 1u);
    EXPECT_EQ(steps[0].kind, "isometry");
    EXPECT_LT(verify_step(steps[0]), 1e-7);
    EXPECT_TRUE(is_tp(steps[0].f));
    // the step acts as u on the support of rho's mediator marginal
    const CMatrix slid = steps[0].forward ? steps[0].after.rho.J : steps[0].before.rho.J;
    EXPECT_LT(oracle::max_abs(slid - unitary_slide(p, u).rho.J), 1e-7);
  }
}

TEST(Certificate, PaddedPairs) {
  Rng rng(30);
  for (int k = 0; k < 5; ++k) {
    const DecompPair p = comb_decompose(one_way_tau(rng), chan(), chan());
    const auto steps = equiv_certificate(p, padded(p), chan(), chan());
    ASSERT_FALSE(steps.empty());
    for (const auto& s : steps) {
      EXPECT_LT(verify_step(s), 1e-7);
      EXPECT_TRUE(is_tp(s.f));
      EXPECT_TRUE(is_cp(s.f));
    }
  }
}

TEST(Certificate, MismatchedPairsHaveNone) {
  Rng rng(31);
  const DecompPair p = comb_decompose(one_way_tau(rng), chan(), chan());
  const DecompPair q = comb_decompose(one_way_tau(rng), chan(), chan());
  EXPECT_THROW(equiv_certificate(p, q, chan(), chan()), Error);
}

}  // namespace
}  // namespace caustyk
