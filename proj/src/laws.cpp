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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "caustyk/dsl.hpp"
#include "caustyk/embedding.hpp"
#include "json.hpp"

namespace caustyk {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// A trial fills in the instance description, the verdict and the residual.
struct Trial {
  std::string instance;
  bool pass = true;
  double residual = 0.0;
  std::string counterexample;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      counterexample = what;
    }
  }
  void bound(double r, double tol, const std::string& what) {
    residual = std::max(residual, r);
    require(r <= tol, what);
  }
};

using LawFn = void (*)(Rng&, Trial&);

Expr small_type(Rng& rng, Index max_dim) { return random_type(rng, 2, max_dim); }

Index pick_boundary(Rng& rng, Index budget) {
  return std::max<Index>(1, std::min<Index>(rng.integer(1, 2), budget));
}

void law_duality(Rng& rng, Trial& t) {
  const Expr e = random_type(rng, 3, 8);
  t.instance = print_type(e);
  const CausObject a = elaborate(e);
  t.require(approx_equal(dual(dual(a)), a), "dual(dual(A)) differs from A");
  t.require(approx_equal(affine_dual(a.states()), a.effects()), "effect hull is not the dual of the state hull");
}

void law_collapse(Rng& rng, Trial& t) {
  const CausObject x = first_order(rng.integer(1, 3)), y = first_order(rng.integer(1, 3));
  const Expr e = small_type(rng, 4);
  const CausObject a = elaborate(e);
  t.instance = "FO(" + std::to_string(x.dim()) + "), FO(" + std::to_string(y.dim()) + "), " + print_type(e);
  const CausObject tt = tensor(x, y);
  t.require(approx_equal(tt, seq(x, y)) && approx_equal(tt, par(x, y)), "first-order products differ");
  t.require(approx_equal(seq(a, x), par(a, x)), "A < X differs from A par X");
}

void law_containment(Rng& rng, Trial& t) {
  const Expr ea = small_type(rng, 4), eb = small_type(rng, 4);
  t.instance = print_type(ea) + " ; " + print_type(eb);
  const CausObject a = elaborate(ea), b = elaborate(eb);
  const CausObject s = seq(a, b);
  t.require(is_subset(tensor(a, b), s), "tensor not inside seq");
  t.require(is_subset(s, par(a, b)), "seq not inside par");
}

void law_unit_cells(Rng& rng, Trial& t) {
  const Expr e = small_type(rng, 8);
  t.instance = print_type(e);
  const CausObject i = unit(), a = elaborate(e);
  t.require(approx_equal(seq(i, i), i) && approx_equal(tensor(i, i), i) && approx_equal(par(i, i), i),
            "unit products differ from the unit");
  t.require(approx_equal(tensor(a, i), a) && approx_equal(par(a, i), a) && approx_equal(seq(i, a), a),
            "unit laws fail");
  t.require(member(seq(i, i), CMatrix::Ones(1, 1)), "unit state not in I < I");
}

// Morphisms for the functoriality laws: first-order maps or local maps on
// channel types.
struct Chain {
  CausObject a, b, c;
  ChoiMap f, g;
};

Chain random_chain(Rng& rng) {
  if (rng.integer(0, 1) == 0) {
    const Index da = rng.integer(1, 3), db = rng.integer(1, 3), dc = rng.integer(1, 3);
    return {first_order(da), first_order(db), first_order(dc), random_channel({da}, {db}, rng),
            random_channel({db}, {dc}, rng)};
  }
  const CausObject f2 = first_order(2);
  const CausObject h = hom(f2, f2);
  auto local = [&]() {
    const ChoiMap m = tensor(random_unital_channel(2, rng), random_channel({2}, {2}, rng));
    return ChoiMap({2, 2}, {2, 2}, m.J);
  };
  return {h, h, h, local(), local()};
}

void law_functoriality(Rng& rng, Trial& t) {
  const Chain ch = random_chain(rng);
  const Index dx = pick_boundary(rng, 2), dxp = pick_boundary(rng, 2);
  t.instance = "A dim " + std::to_string(ch.a.dim()) + ", X " + std::to_string(dx) + ", X' " + std::to_string(dxp);
  const CMatrix tau = sample_member(F_eval(ch.a, first_order(dx), first_order(dxp)).carrier, rng);
  const ChoiMap id = structural(Structural::Identity, ch.a.dim());
  t.bound(max_abs(F_mor(id, tau, dx, dxp) - tau), 1e-10, "F(id) is not the identity");
  const CMatrix lhs = F_mor(compose(ch.g, ch.f), tau, dx, dxp);
  const CMatrix rhs = F_mor(ch.g, F_mor(ch.f, tau, dx, dxp), dx, dxp);
  t.bound(max_abs(lhs - rhs), 1e-10, "F(g o f) differs from F(g) o F(f)");
  t.require(member(F_eval(ch.c, first_order(dx), first_order(dxp)).carrier, lhs), "F(g o f) leaves the carrier");
}

void law_naturality(Rng& rng, Trial& t) {
  const Chain ch = random_chain(rng);
  const Index dx = pick_boundary(rng, 2), dxp = pick_boundary(rng, 2);
  const Index dy = pick_boundary(rng, 2), dyp = pick_boundary(rng, 2);
  t.instance = "A dim " + std::to_string(ch.a.dim()) + ", boundaries " + std::to_string(dx) + "," +
               std::to_string(dxp) + " -> " + std::to_string(dy) + "," + std::to_string(dyp);
  const CMatrix tau = sample_member(F_eval(ch.a, first_order(dx), first_order(dxp)).carrier, rng);
  const ChoiMap g = random_channel({dy}, {dx}, rng), h = random_channel({dxp}, {dyp}, rng);
  const CMatrix acted = profunctor_action(tau, ch.a.dim(), g, h);
  t.require(member(F_eval(ch.a, first_order(dy), first_order(dyp)).carrier, acted), "action leaves the carrier");
  const CMatrix lhs = F_mor(ch.f, acted, dy, dyp);
  const CMatrix rhs = profunctor_action(F_mor(ch.f, tau, dx, dxp), ch.b.dim(), g, h);
  t.bound(max_abs(lhs - rhs), 1e-9, "naturality square does not commute");
}

void law_strength(Rng& rng, Trial& t) {
  const Chain ch = random_chain(rng);
  const Index dx = pick_boundary(rng, 2), dxp = pick_boundary(rng, 2);
  const Index dy = pick_boundary(rng, 2), dyp = pick_boundary(rng, 2);
  t.instance = "A dim " + std::to_string(ch.a.dim()) + ", k " + std::to_string(dy) + "->" + std::to_string(dyp);
  const CMatrix tau = sample_member(F_eval(ch.a, first_order(dx), first_order(dxp)).carrier, rng);
  const ChoiMap k = random_channel({dy}, {dyp}, rng);
  const CMatrix st = strength(tau, dx, ch.a.dim(), dxp, k);
  t.require(member(F_eval(ch.a, first_order(dx * dy), first_order(dxp * dyp)).carrier, st),
            "strength leaves the carrier");
  const CMatrix lhs = F_mor(ch.f, st, dx * dy, dxp * dyp);
  const CMatrix rhs = strength(F_mor(ch.f, tau, dx, dxp), dx, ch.b.dim(), dxp, k);
  t.bound(max_abs(lhs - rhs), 1e-9, "strength square does not commute");
}

void law_lax_tensor(Rng& rng, Trial& t) {
  const Expr ea = small_type(rng, 3), eb = small_type(rng, 3);
  const CausObject a = elaborate(ea), b = elaborate(eb);
  Index x1 = pick_boundary(rng, 2), x1p = pick_boundary(rng, 2), x2 = 1, x2p = 1;
  while (x1 * x1p * a.dim() * b.dim() > 36 && (x1 > 1 || x1p > 1)) (x1 > 1 ? x1 : x1p) = 1;
  t.instance = print_type(ea) + " ; " + print_type(eb) + " ; X1 " + std::to_string(x1) + ", X1' " + std::to_string(x1p);
  const CMatrix t1 = sample_member(F_eval(a, first_order(x1), first_order(x1p)).carrier, rng);
  const CMatrix t2 = sample_member(F_eval(b, first_order(x2), first_order(x2p)).carrier, rng);
  const CMatrix out = lax_tensor(t1, x1, a.dim(), x1p, t2, x2, b.dim(), x2p);
  const FImage target = F_eval(tensor(a, b), first_order(x1 * x2), first_order(x1p * x2p));
  const Membership m = membership(target.carrier, out);
  t.residual = m.distance;
  t.require(m.ok(), "lax tensor output is not in F(A (x) B)");
}

void law_lax_tensor_naturality(Rng& rng, Trial& t) {
  const Chain ch = random_chain(rng);
  const Expr eb = small_type(rng, 2);
  const CausObject b = elaborate(eb);
  const Index x1 = pick_boundary(rng, 2), x1p = pick_boundary(rng, 2);
  t.instance = "A dim " + std::to_string(ch.a.dim()) + " ; " + print_type(eb);
  const CMatrix t1 = sample_member(F_eval(ch.a, first_order(x1), first_order(x1p)).carrier, rng);
  const CMatrix t2 = sample_member(F_eval(b, unit(), unit()).carrier, rng);
  const CMatrix lhs = lax_tensor(F_mor(ch.f, t1, x1, x1p), x1, ch.b.dim(), x1p, t2, 1, b.dim(), 1);
  const ChoiMap fi = tensor(ch.f, structural(Structural::Identity, b.dim()));
  const CMatrix rhs = F_mor(fi, lax_tensor(t1, x1, ch.a.dim(), x1p, t2, 1, b.dim(), 1), x1, x1p);
  t.bound(max_abs(lhs - rhs), 1e-9, "lax tensor is not natural");
}

struct SeqInstance {
  Expr ea, eb;
  CausObject a, b;
  DecompPair p;
};

SeqInstance random_seq_instance(Rng& rng) {
  SeqInstance s{small_type(rng, 4), small_type(rng, 4), unit(), unit(), DecompPair{}};
  s.a = elaborate(s.ea);
  s.b = elaborate(s.eb);
  const Index z = rng.integer(1, 2);
  const Index dx = s.a.dim() * s.b.dim() <= 8 ? pick_boundary(rng, 2) : 1;
  const Index dxp = s.a.dim() * s.b.dim() <= 8 ? pick_boundary(rng, 2) : 1;
  DecompPair& p = s.p;
  p.z = z;
  p.dx = dx;
  p.dxp = dxp;
  p.da = s.a.dim();
  p.db = s.b.dim();
  p.rho = ChoiMap({dx}, {p.da, z}, sample_member(hom(first_order(dx), par(s.a, first_order(z))), rng));
  p.sigma = ChoiMap({z}, {p.db, dxp}, sample_member(hom(first_order(z), par(s.b, first_order(dxp))), rng));
  return s;
}

void law_lax_seq(Rng& rng, Trial& t) {
  const SeqInstance s = random_seq_instance(rng);
  t.instance = print_type(s.ea) + " < " + print_type(s.eb) + " ; z " + std::to_string(s.p.z);
  const CMatrix tau = lax_seq(s.p);
  const CausObject target = F_eval(seq(s.a, s.b), first_order(s.p.dx), first_order(s.p.dxp)).carrier;
  const Membership m = membership(target, tau);
  t.residual = m.distance;
  t.require(m.ok(), "recomposed pair is not in F(A < B)");
}

void law_lax_seq_round_trip(Rng& rng, Trial& t) {
  const SeqInstance s = random_seq_instance(rng);
  t.instance = print_type(s.ea) + " < " + print_type(s.eb) + " ; z " + std::to_string(s.p.z);
  const CMatrix tau = lax_seq(s.p);
  try {
    const DecompPair q = inverse_seq(tau, s.a, s.b, s.p.dx, s.p.dxp);
    t.bound(max_abs(lax_seq(q) - tau), 1e-8, "theta o theta^-1 is not the identity");
    t.require(coend_equiv(s.p, q), "theta^-1 o theta left the coend class");
  } catch (const Error& e) {
    t.require(false, e.what());
  }
}

void law_interchange(Rng& rng, Trial& t) {
  Expr e[4];
  CausObject o[4] = {unit(), unit(), unit(), unit()};
  for (int k = 0; k < 4; ++k) {
    e[k] = small_type(rng, 2);
    o[k] = elaborate(e[k]);
  }
  t.instance = "(" + print_type(e[0]) + " < " + print_type(e[1]) + ") * (" + print_type(e[2]) + " < " + print_type(e[3]) + ")";
  const CMatrix a = sample_member(seq(o[0], o[1]), rng);
  const CMatrix c = sample_member(seq(o[2], o[3]), rng);
  t.require(interchange_check(a, o[0], o[1], c, o[2], o[3]), "interchange cell output is not a member");
}

void law_injectivity(Rng& rng, Trial& t) {
  const Index d = rng.integer(2, 4);
  Expr ea, eb;
  for (int k = 0; k < 200; ++k) {
    ea = random_type(rng, 2, 4);
    if (expr_dim(ea) == d) break;
  }
  for (int k = 0; k < 200; ++k) {
    eb = random_type(rng, 2, 4);
    if (expr_dim(eb) == expr_dim(ea)) break;
  }
  if (expr_dim(ea) != expr_dim(eb)) eb = ea;
  t.instance = print_type(ea) + " ; " + print_type(eb);
  const CausObject a = elaborate(ea), b = elaborate(eb);
  const bool same = approx_equal(a, b);
  const bool same_image = approx_equal(par(a, all_states(a)), par(b, all_states(b)));
  t.require(same == same_image, "F images do not separate the objects");
}

void law_faithfulness(Rng& rng, Trial& t) {
  const MorphismSample m = random_morphism(static_cast<int>(rng.integer(0, 2)), rng);
  const MorphismSample n = [&] {
    for (;;) {
      MorphismSample s = random_morphism(m.family == "FO->FO" ? 0 : (m.family == "hom->hom" ? 1 : 2), rng);
      if (s.a.dim() == m.a.dim() && s.b.dim() == m.b.dim()) return s;
    }
  }();
  t.instance = m.family;
  const double dist = choi_distance(m.h, n.h);
  t.residual = dist;
  t.require(!faithfulness_probe(m.h, m.h, m.a), "probe separates a map from itself");
  if (dist > 1e-6) t.require(faithfulness_probe(m.h, n.h, m.a), "probe misses distinct maps");
}

void law_fullness(Rng& rng, Trial& t) {
  const MorphismSample m = random_morphism(static_cast<int>(rng.integer(0, 3)), rng);
  t.instance = m.family;
  const ChoiMap h = m.h;
  const BlackBox s = [h](const CMatrix& tau, Index dx, Index dxp) { return F_mor(h, tau, dx, dxp); };
  const FullnessReport r = fullness_reconstruct(s, m.a, m.b, rng, 4);
  t.require(r.in_image(), "F(h) flagged: " + r.counterexample);
  t.bound(choi_distance(r.candidate, h), 1e-8, "reconstruction differs from h");
}

void law_fullness_adversarial(Rng& rng, Trial& t) {
  const int which = static_cast<int>(rng.integer(0, 2));
  static const char* names[] = {"transpose", "double", "boundary-switch"};
  t.instance = names[which];
  const CausObject f2 = first_order(2);
  const FullnessReport r = fullness_reconstruct(adversarial_box(which), f2, f2, rng, 8);
  t.require(!r.in_image(), "adversarial box accepted as F(f)");
}

void law_strong_closure(Rng& rng, Trial& t) {
  static const char* grid[][4] = {{"I", "I", "I", "I"},
                                  {"FO(2)", "FO(2)", "I", "I"},
                                  {"FO(2)", "FO(2)", "FO(2)", "FO(2)"},
                                  {"[FO(2),FO(2)]", "FO(2)", "I", "FO(2)"},
                                  {"FO(2)^", "FO(3)", "I", "I"}};
  const auto& g = grid[rng.integer(0, 4)];
  t.instance = std::string(g[0]) + " ; " + g[1] + " ; " + g[2] + " ; " + g[3];
  const ClosureReport r = strong_closure_check(elaborate(g[0]), elaborate(g[1]), elaborate(g[2]),
                                               elaborate(g[3]), rng, 10);
  t.residual = r.round_trip;
  t.require(r.ok(), "strong closure check failed");
}

void law_convexity(Rng& rng, Trial& t) {
  const Expr e = random_type(rng, 3, 8);
  t.instance = print_type(e);
  const CausObject a = elaborate(e);
  const auto p = random_distribution(3, rng);
  CMatrix mix = CMatrix::Zero(a.dim(), a.dim());
  for (double w : p) mix += w * sample_member(a, rng);
  const Membership m = membership(a, mix);
  t.residual = m.distance;
  t.require(m.ok(), "convex combination left the state set");
}

struct Law {
  const char* name;
  LawFn fn;
};

const Law kLaws[] = {
    {"duality_involution", law_duality},
    {"first_order_collapse", law_collapse},
    {"product_containment", law_containment},
    {"unit_cells", law_unit_cells},
    {"functoriality", law_functoriality},
    {"naturality", law_naturality},
    {"strength", law_strength},
    {"lax_tensor_member", law_lax_tensor},
    {"lax_tensor_naturality", law_lax_tensor_naturality},
    {"lax_seq_member", law_lax_seq},
    {"lax_seq_round_trip", law_lax_seq_round_trip},
    {"interchange", law_interchange},
    {"injectivity", law_injectivity},
    {"faithfulness", law_faithfulness},
    {"fullness_round_trip", law_fullness},
    {"fullness_adversarial", law_fullness_adversarial},
    {"strong_closure", law_strong_closure},
    {"convexity", law_convexity},
};

std::vector<LawRecord> run_law(const Law& law, std::uint64_t seed, int trials) {
  std::vector<LawRecord> out;
  for (int k = 0; k < trials; ++k) {
    const std::uint64_t trial_seed = seed ^ (fnv1a(law.name) + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1));
    Rng rng(trial_seed);
    Trial t;
    try {
      law.fn(rng, t);
    } catch (const std::exception& e) {
      t.require(false, std::string("exception: ") + e.what());
    }
    LawRecord r;
    r.law = law.name;
    r.seed = trial_seed;
    r.digest = hex(fnv1a(std::string(law.name) + "|" + t.instance));
    r.pass = t.pass;
    r.residual = t.residual;
    r.counterexample = t.pass ? std::string() : t.instance + ": " + t.counterexample;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Budget parse_budget(const std::string& s) {
  if (s == "empty") return Budget::Empty;
  if (s == "small") return Budget::Small;
  if (s == "medium") return Budget::Medium;
  throw Error(ErrorKind::Semantic, "unknown budget '" + s + "' (expected empty, small or medium)");
}

std::vector<LawRecord> law_suite(std::uint64_t seed, Budget budget) {
  const int trials = budget == Budget::Empty ? 0 : (budget == Budget::Small ? 3 : 10);
  if (trials == 0) return {};
  std::vector<std::future<std::vector<LawRecord>>> jobs;
  for (const Law& law : kLaws) {
    jobs.push_back(std::async(std::launch::async, run_law, std::cref(law), seed, trials));
  }
  std::vector<LawRecord> out;
  for (auto& j : jobs) {
    auto part = j.get();
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string to_json_line(const LawRecord& r) {
  nlohmann::ordered_json j;
  j["law"] = r.law;
  j["seed"] = r.seed;
  j["digest"] = r.digest;
  j["pass"] = r.pass;
  j["residual"] = r.residual;
  if (!r.pass) j["counterexample"] = r.counterexample;
  return j.dump();
}

}  // namespace caustyk
