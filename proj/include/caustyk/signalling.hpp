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

#include <string>
#include <vector>

#include "caustyk/caus.hpp"
#include "caustyk/cp.hpp"

namespace caustyk {

/// Which directions a two-party channel does not signal in.
enum class Signalling { Both, AToBOnly, BToAOnly, TwoWay };

const char* to_string(Signalling s);

struct SignallingReport {
  Signalling kind = Signalling::TwoWay;
  double a_to_b = 0.0;  // dependence of B's output marginal on A's input
  double b_to_a = 0.0;
};

/// `j` is the Choi matrix of a channel (A_in, B_in) -> (A_out, B_out) with
/// factors ordered (A_in, B_in, A_out, B_out).
SignallingReport nonsignalling_test(const CMatrix& j, Index a_in, Index b_in, Index a_out,
                                    Index b_out, double tol = 1e-9);

/// Reorder (A_in, B_in, A_out, B_out) to the hom-type layout
/// (A_in, A_out, B_in, B_out) and back.
CMatrix channel_to_hom_layout(const CMatrix& j, Index a_in, Index b_in, Index a_out, Index b_out);
CMatrix hom_to_channel_layout(const CMatrix& j, Index a_in, Index a_out, Index b_in, Index b_out);

/// An element of the coend: rho : X -> A (x) Z, sigma : Z -> B (x) X'.
struct DecompPair {
  ChoiMap rho;
  ChoiMap sigma;
  Index z = 1;
  Index dx = 1, da = 1, db = 1, dxp = 1;
};

/// The composite (id_A (x) sigma) o rho as a matrix on (X, A, B, X').
CMatrix recompose(const DecompPair& p);

/// Split tau, a state of [X, (A < B) par X'] on factors (X, A, B, X'), through
/// a first-order mediator of minimal dimension.
DecompPair comb_decompose(const CMatrix& tau, const CausObject& a, const CausObject& b,
                          Index dx = 1, Index dxp = 1, const Tolerances& tol = kDefaultTolerances);

/// Does the pair type-check (rho in [X, A par Z], sigma in [Z, B par X'])?
bool pair_well_typed(const DecompPair& p, const CausObject& a, const CausObject& b,
                     const Tolerances& tol = kDefaultTolerances);

/// Equal composites; throws TypeMismatch when the pairs have different shapes.
bool coend_equiv(const DecompPair& p1, const DecompPair& p2, double tol = kDefaultTolerances.round_trip);

/// One sliding move along a first-order f : Z -> Z'. The mediator-side pair
/// is (rho, sigma o f) and the image-side pair is (f o rho, sigma); `forward`
/// says which of the two is `before`.
struct SlideStep {
  std::string kind;  // "isometry", "discard", "shadow"
  ChoiMap f;
  DecompPair before;
  DecompPair after;
  bool forward = true;
  double residual = 0.0;
};

/// Recheck a step: f CPTP, the slide relation, and composite preservation.
double verify_step(const SlideStep& s);

/// Chain of slides from p1 to p2 (empty when the pairs coincide). Throws
/// CertificateUnavailable when no chain is found; coend_equiv is unaffected.
std::vector<SlideStep> equiv_certificate(const DecompPair& p1, const DecompPair& p2,
                                         const CausObject& a, const CausObject& b,
                                         const Tolerances& tol = kDefaultTolerances);

}  // namespace caustyk
