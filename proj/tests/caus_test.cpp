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

#include "caustyk/caus.hpp"
#include "caustyk/dsl.hpp"
#include "caustyk/embedding.hpp"
#include "caustyk/random.hpp"
#include "oracle.hpp"

namespace caustyk {
namespace {

CMatrix omega(Index d) {
  CVector v = CVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v * v.adjoint();
}

const CausObject& fo2() {
  static const CausObject o = first_order(2);
  return o;
}

const CausObject& chan() {
  static const CausObject o = hom(first_order(2), first_order(2));
  return o;
}

// Random qubit channels in hom layout.
std::vector<CMatrix> channel_cloud(Index din, Index dout, int n, Rng& rng) {
  std::vector<CMatrix> pts;
  for (int k = 0; k < n; ++k) pts.push_back(oracle::choi(oracle::random_kraus(din, dout, din * dout, rng), din, dout));
  return pts;
}

TEST(FirstOrder, Examples) {
  EXPECT_EQ(first_order(2).states().direction_rank(), 3);
  EXPECT_EQ(first_order(3).states().direction_rank(), 8);
  const CausObject u = unit();
  EXPECT_EQ(u.dim(), 1);
  EXPECT_TRUE(u.states().contains(RVector::Ones(1), 1e-15));
  EXPECT_TRUE(u.effects().contains(RVector::Ones(1), 1e-15));
  for (Index d : {1, 2, 3, 4}) {
    EXPECT_TRUE(first_order(d).first_order());
    EXPECT_NEAR(first_order(d).flat_lambda(), 1.0 / static_cast<double>(d), 1e-15);
  }
  EXPECT_THROW(first_order(0), Error);
}

TEST(AllStates, Examples) {
  EXPECT_TRUE(approx_equal(all_states(fo2()), fo2()));
  const CausObject a = all_states(chan());
  EXPECT_TRUE(a.first_order());
  EXPECT_EQ(a.states().direction_rank(), 15);
  EXPECT_TRUE(approx_equal(a, first_order(4)));
  EXPECT_NEAR(a.flat_lambda(), 0.25, 1e-15);
}

TEST(Dual, FirstOrderDualIsTheDiscard) {
  for (Index d : {2, 3}) {
    const CausObject x = dual(first_order(d));
    EXPECT_EQ(x.states().direction_rank(), 0);
    EXPECT_LT((x.states().base() - to_coords(CMatrix::Identity(d, d))).norm(), 1e-12);
  }
}

// The dual of an affine set not through 0 has dimension n^2 - 1 - rank.
TEST(Dual, ChannelEffectRank) {
  Rng rng(1);
  const Index hull = oracle::hull_rank(channel_cloud(2, 2, 60, rng));
  ASSERT_EQ(hull, 12);
  EXPECT_EQ(dual(chan()).states().direction_rank(), 16 - 1 - hull);
}

TEST(Dual, Involution) {
  Rng rng(300);
  for (int t = 0; t < 300; ++t) {
    const CausObject a = elaborate(random_type(rng, 3, 8));
    EXPECT_TRUE(approx_equal(dual(dual(a)), a)) << t;
  }
}

TEST(Tensor, Examples) {
  const CausObject t = tensor(fo2(), fo2());
  EXPECT_TRUE(t.first_order());
  EXPECT_TRUE(approx_equal(t, first_order(4)));
  Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const CausObject a = elaborate(random_type(rng, 2, 8));
    EXPECT_TRUE(approx_equal(tensor(a, unit()), a));
    EXPECT_TRUE(approx_equal(tensor(unit(), a), a));
  }
}

// The state hull of the tensor product is the affine hull of products of
// channels.
TEST(Tensor, ChannelProductRank) {
  Rng rng(4);
  const auto c1 = channel_cloud(2, 2, 30, rng), c2 = channel_cloud(2, 2, 30, rng);
  std::vector<CMatrix> prods;
  for (int k = 0; k < 260; ++k) prods.push_back(oracle::kron(c1[rng.integer(0, 29)], c2[rng.integer(0, 29)]));
  const Index expected = oracle::hull_rank(prods);
  EXPECT_EQ(expected, 168);
  const CausObject t = tensor(chan(), chan());
  EXPECT_EQ(t.states().direction_rank(), expected);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(member(t, prods[static_cast<std::size_t>(k)]));
}

TEST(Par, Examples) {
  EXPECT_TRUE(approx_equal(par(fo2(), fo2()), tensor(fo2(), fo2())));
  EXPECT_EQ(chan().states().direction_rank(), 12);
  Rng rng(5);
  EXPECT_EQ(oracle::hull_rank(channel_cloud(2, 2, 40, rng)), 12);
}

// All channels (ai, bi) -> (ao, bo), reordered to (ai, ao, bi, bo).
TEST(Par, ChannelParRank) {
  Rng rng(6);
  std::vector<CMatrix> pts;
  for (const auto& j : channel_cloud(4, 4, 280, rng)) pts.push_back(oracle::to_hom(j, 2, 2, 2, 2));
  const Index expected = oracle::hull_rank(pts);
  EXPECT_EQ(expected, 240);
  const CausObject p = par(chan(), chan());
  EXPECT_EQ(p.states().direction_rank(), expected);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(member(p, pts[static_cast<std::size_t>(k)]));
}

TEST(Par, CommutativeUpToPermutation) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const CausObject a = elaborate(random_type(rng, 2, 4)), b = elaborate(random_type(rng, 2, 4));
    const CausObject ab = par(a, b), ba = par(b, a);
    const std::size_t na = a.dims().size(), nb = b.dims().size();
    if (a.dim() == 1 || b.dim() == 1) continue;
    std::vector<std::size_t> perm;
    for (std::size_t k = 0; k < na; ++k) perm.push_back(nb + k);
    for (std::size_t k = 0; k < nb; ++k) perm.push_back(k);
    EXPECT_TRUE(approx_equal(permute(ba, perm), ab)) << t;
  }
}

TEST(Seq, FirstOrderCollapse) {
  EXPECT_TRUE(approx_equal(seq(fo2(), fo2()), tensor(fo2(), fo2())));
  EXPECT_TRUE(approx_equal(seq(chan(), first_order(3)), par(chan(), first_order(3))));
}

// One-way channels built by composing two random channels through a memory.
TEST(Seq, ChannelSeqRank) {
  Rng rng(8);
  std::vector<CMatrix> pts;
  for (int k = 0; k < 260; ++k) pts.push_back(oracle::to_hom(oracle::choi(oracle::one_way_kraus(2, 2, 2, 2, 4, rng), 4, 4), 2, 2, 2, 2));
  const Index expected = oracle::hull_rank(pts);
  const CausObject s = seq(chan(), chan());
  EXPECT_EQ(s.states().direction_rank(), expected);
  EXPECT_GT(expected, tensor(chan(), chan()).states().direction_rank());
  EXPECT_LT(expected, par(chan(), chan()).states().direction_rank());
  // regression value
  EXPECT_EQ(expected, 204);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(member(s, pts[static_cast<std::size_t>(k)]));
}

TEST(Hom, Examples) {
  EXPECT_TRUE(member(chan(), omega(2)));
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const CausObject b = elaborate(random_type(rng, 2, 6));
    EXPECT_TRUE(approx_equal(hom(unit(), b), b));
  }
}

// Pre- and post-composition with fixed unitaries as a supermap: its Choi
// has the single Kraus operator U^T (x) V.
TEST(Hom, UnitarySandwichIsASuperchannel) {
  Rng rng(10);
  const CMatrix u = haar_unitary(2, rng), v = haar_unitary(2, rng);
  const CMatrix k = oracle::kron(u.transpose(), v);
  const CMatrix s = oracle::choi({k}, 4, 4);
  EXPECT_TRUE(member(hom(chan(), chan()), s));
  // sanity: it maps the identity channel's Choi to the Choi of v u
  const CMatrix image = k * omega(2) * k.adjoint();
  EXPECT_LT(oracle::max_abs(image - oracle::choi({v * u}, 2, 2)), 1e-12);
}

TEST(Member, Examples) {
  EXPECT_TRUE(member(fo2(), CMatrix::Identity(2, 2) / 2.0));
  EXPECT_FALSE(member(fo2(), CMatrix::Identity(2, 2)));
  const Membership m = membership(chan(), 0.5 * omega(2));
  EXPECT_TRUE(m.psd);
  EXPECT_FALSE(m.affine);
}

TEST(Member, ShapeMismatchRejected) { EXPECT_THROW(member(fo2(), CMatrix::Identity(3, 3)), Error); }

TEST(CheckMorphism, Examples) {
  EXPECT_TRUE(check_morphism(structural(Structural::Identity, 2), fo2(), fo2()).ok());
  EXPECT_TRUE(check_morphism(structural(Structural::Discard, 2), fo2(), unit()).ok());
  const MorphismCheck doubled = check_morphism(scale(structural(Structural::Identity, 2), 2.0), fo2(), fo2());
  EXPECT_TRUE(doubled.cp);
  EXPECT_FALSE(doubled.affine);
  CMatrix j = omega(2);
  j(0, 0) = -1.0;
  const MorphismCheck neg = check_morphism(ChoiMap({2}, {2}, j), fo2(), fo2());
  EXPECT_FALSE(neg.cp);
}

// Tr((e (x) I) c |Omega><Omega|) = c Tr(e), so alpha is 1 / Tr(e) for every
// effect e of A. Sample effects from the effect hull and check the pairing
// is constant.
TEST(Alpha, Examples) {
  EXPECT_NEAR(alpha_scalar(fo2()), 0.5, 1e-12);
  EXPECT_NEAR(alpha_scalar(unit()), 1.0, 1e-12);
  EXPECT_NEAR(alpha_scalar(first_order(3)), 1.0 / 3.0, 1e-12);
}

TEST(Alpha, CupIsAState) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    const CausObject a = elaborate(random_type(rng, 2, 4));
    const double alpha = alpha_scalar(a);
    const Index n = a.dim();
    const RMatrix dirs = a.effects().directions().basis();
    for (int k = 0; k < 3; ++k) {
      RVector e = a.effects().base();
      for (Index c = 0; c < dirs.cols(); ++c) e += rng.normal() * dirs.col(c);
      EXPECT_NEAR(alpha * from_coords(e, n).trace().real(), 1.0, 1e-9) << t;
    }
    EXPECT_TRUE(member(par(a, all_states(a)), alpha * omega(n))) << t;
  }
}

TEST(Interchange, FirstOrderAlwaysHolds) {
  Rng rng(12);
  for (int t = 0; t < 10; ++t) {
    const CausObject a = first_order(rng.integer(1, 2)), b = first_order(rng.integer(1, 2));
    const CausObject c = first_order(rng.integer(1, 2)), d = first_order(rng.integer(1, 2));
    const CMatrix x = random_density(a.dim() * b.dim(), rng), y = random_density(c.dim() * d.dim(), rng);
    EXPECT_TRUE(interchange_check(x, a, b, y, c, d));
  }
}

// The joint object has dimension a b c d; keep it small.
TEST(Interchange, SampledStates) {
  Rng rng(13);
  int run = 0;
  while (run < 20) {
    const CausObject a = elaborate(random_type(rng, 2, 4)), b = elaborate(random_type(rng, 2, 4));
    const CausObject c = elaborate(random_type(rng, 2, 4)), d = elaborate(random_type(rng, 2, 4));
    if (a.dim() * b.dim() * c.dim() * d.dim() > 64) continue;
    const CMatrix x = sample_member(seq(a, b), rng), y = sample_member(seq(c, d), rng);
    EXPECT_TRUE(interchange_check(x, a, b, y, c, d)) << run;
    ++run;
  }
}

// Wire comb: A's input travels through the memory to B's output; A's
// output is |0><0| and B's input is discarded.
CMatrix wire_comb() {
  std::vector<CMatrix> ops;
  for (Index b = 0; b < 2; ++b) {
    CMatrix k = CMatrix::Zero(4, 4);
    for (Index a = 0; a < 2; ++a) k(0 * 2 + a, a * 2 + b) = 1.0;
    ops.push_back(k);
  }
  return oracle::to_hom(oracle::choi(ops, 4, 4), 2, 2, 2, 2);
}

TEST(Interchange, WireCombs) {
  const CMatrix w = wire_comb();
  ASSERT_TRUE(member(seq(chan(), chan()), w));
  EXPECT_FALSE(member(tensor(chan(), chan()), w));
  Rng rng(17);
  EXPECT_TRUE(interchange_check(w, chan(), chan(), random_density(2, rng), fo2(), unit()));
  EXPECT_TRUE(interchange_check(random_density(2, rng), unit(), fo2(), w, chan(), chan()));
}

TEST(Products, ContainmentChain) {
  Rng rng(14);
  for (int t = 0; t < 60; ++t) {
    const CausObject a = elaborate(random_type(rng, 2, 4)), b = elaborate(random_type(rng, 2, 4));
    const CausObject s = seq(a, b);
    EXPECT_TRUE(is_subset(tensor(a, b), s)) << t;
    EXPECT_TRUE(is_subset(s, par(a, b))) << t;
  }
}

TEST(Products, FirstOrderCollapse) {
  Rng rng(15);
  for (int t = 0; t < 30; ++t) {
    const CausObject x = first_order(rng.integer(1, 3)), y = first_order(rng.integer(1, 3));
    const CausObject a = elaborate(random_type(rng, 2, 4));
    EXPECT_TRUE(approx_equal(tensor(x, y), seq(x, y)));
    EXPECT_TRUE(approx_equal(tensor(x, y), par(x, y)));
    EXPECT_TRUE(approx_equal(seq(a, x), par(a, x))) << t;
  }
}

TEST(Products, ConvexCombinationsStayInside) {
  Rng rng(16);
  for (int t = 0; t < 40; ++t) {
    const CausObject a = elaborate(random_type(rng, 2, 6));
    std::vector<CMatrix> pts;
    for (int k = 0; k < 3; ++k) pts.push_back(sample_member(a, rng));
    const auto p = random_distribution(3, rng);
    CMatrix mix = CMatrix::Zero(a.dim(), a.dim());
    for (int k = 0; k < 3; ++k) mix += p[static_cast<std::size_t>(k)] * pts[static_cast<std::size_t>(k)];
    EXPECT_TRUE(member(a, mix)) << t;
  }
}

TEST(Classical, DiagonalStates) {
  const CausObject c = classical(3);
  EXPECT_EQ(c.states().direction_rank(), 2);
  EXPECT_FALSE(c.first_order());
  EXPECT_TRUE(member(c, CMatrix::Identity(3, 3) / 3.0));
  CMatrix coh = CMatrix::Identity(2, 2) / 2.0;
  coh(0, 1) = coh(1, 0) = 0.5;
  EXPECT_FALSE(member(classical(2), coh));
}

}  // namespace
}  // namespace caustyk
