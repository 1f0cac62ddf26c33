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

#include <functional>
#include <string>
#include <vector>

#include "caustyk/caus.hpp"
#include "caustyk/cp.hpp"
#include "caustyk/random.hpp"
#include "caustyk/signalling.hpp"

namespace caustyk {

/// F(A)(X, X') = Caus(X, A par X'), the state set of [X, A par X'] on the
/// factors (X, A, X').
struct FImage {
  CausObject a;
  CausObject x;
  CausObject xp;
  CausObject carrier;
};

FImage F_eval(const CausObject& a, const CausObject& x, const CausObject& xp);

/// (f par id_X') o tau for tau on (X, A, X').
CMatrix F_mor(const ChoiMap& f, const CMatrix& tau, Index dx, Index dxp);

/// h o tau o g for g : Y -> X and h : X' -> Y'; the result lives on (Y, A, Y').
CMatrix profunctor_action(const CMatrix& tau, Index da, const ChoiMap& g, const ChoiMap& h);

/// tau alongside k : Y -> Y', on (X, Y, A, X', Y').
CMatrix strength(const CMatrix& tau, Index dx, Index da, Index dxp, const ChoiMap& k);

/// tau1 on (X1, A, X1') and tau2 on (X2, B, X2') to (X1, X2, A, B, X1', X2').
CMatrix lax_tensor(const CMatrix& tau1, Index dx1, Index da, Index dx1p, const CMatrix& tau2,
                   Index dx2, Index db, Index dx2p);

inline CMatrix lax_seq(const DecompPair& p) { return recompose(p); }
inline DecompPair inverse_seq(const CMatrix& tau, const CausObject& a, const CausObject& b,
                              Index dx = 1, Index dxp = 1) {
  return comb_decompose(tau, a, b, dx, dxp);
}

/// Random state of `obj`: a random positive matrix projected onto the state
/// hull, then pulled toward lambda * I until it is positive.
CMatrix sample_member(const CausObject& obj, Rng& rng);

/// The probe alpha_A * cup, an element of F(A)(I, |A|) on (A, A').
CMatrix cup_probe(const CausObject& a);

/// Do F(f) and F(g) differ on the cup probe?
bool faithfulness_probe(const ChoiMap& f, const ChoiMap& g, const CausObject& a,
                        double tol = 1e-9);

/// A transformation of elements F(A)(X, X') -> F(B)(X, X'), given the
/// boundary dimensions. Only ever probed.
using BlackBox = std::function<CMatrix(const CMatrix& tau, Index dx, Index dxp)>;

struct FullnessReport {
  ChoiMap candidate;
  bool cp = false;
  bool affine = false;
  bool probes_agree = false;
  double worst_probe = 0.0;
  std::string counterexample;
  bool in_image() const { return cp && affine && probes_agree; }
};

/// Bend S_{I,|A|}(alpha * cup) back into a map and audit it.
FullnessReport fullness_reconstruct(const BlackBox& s, const CausObject& a, const CausObject& b,
                                    Rng& rng, int probes = 6, double tol = 1e-8);

struct ClosureReport {
  Index lhs_rank = 0;
  Index rhs_rank = 0;
  int transported = 0;
  int failures = 0;
  double round_trip = 0.0;
  bool hulls_equal = false;
  bool ok() const { return lhs_rank == rhs_rank && failures == 0 && round_trip <= 1e-9 && hulls_equal; }
};

/// F([A, B])(X, X') against Caus(A, [X, B par X']) under the factor
/// reordering (X, A, B, X') <-> (A, X, B, X').
ClosureReport strong_closure_check(const CausObject& a, const CausObject& b, const CausObject& x,
                                   const CausObject& xp, Rng& rng, int samples = 50);

/// A random morphism from one of four shape families:
/// 0: FO(d) -> FO(d'), 1: [FO,FO] -> [FO,FO], 2: [FO,FO] -> FO (x) FO,
/// 3: [FO,FO] < [FO,FO] -> [FO,FO] par [FO,FO].
struct MorphismSample {
  std::string family;
  CausObject a;
  CausObject b;
  ChoiMap h;
};
MorphismSample random_morphism(int family, Rng& rng);

/// The three adversarial transformations on FO(2) -> FO(2): partial
/// transpose (not CP), doubling (not normalized), and a box that acts as the
/// identity on the cup-probe boundary but as a bit flip elsewhere.
BlackBox adversarial_box(int which);

/// One record per law and trial.
struct LawRecord {
  std::string law;
  std::uint64_t seed = 0;
  std::string digest;
  bool pass = false;
  double residual = 0.0;
  std::string counterexample;
};

enum class Budget { Empty, Small, Medium };

Budget parse_budget(const std::string& s);
std::vector<LawRecord> law_suite(std::uint64_t seed, Budget budget);
std::string to_json_line(const LawRecord& r);

}  // namespace caustyk
