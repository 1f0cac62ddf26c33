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

#include <optional>
#include <string>
#include <vector>

#include "caustyk/cp.hpp"
#include "caustyk/subspace.hpp"
#include "caustyk/types.hpp"

namespace caustyk {

/// A higher-order causal type over CP: an underlying system (list of factor
/// dimensions) with the affine hulls of its state set and of its effect set.
/// The two hulls are affine duals of each other.
class CausObject {
 public:
  /// Build from a state hull; the effect hull is its affine dual.
  static CausObject from_states(Dims dims, std::vector<bool> dual_tags, AffineSubspace states);
  /// Build from both hulls when they are already known to be dual.
  static CausObject from_pair(Dims dims, std::vector<bool> dual_tags, AffineSubspace states,
                              AffineSubspace effects);

  const Dims& dims() const { return dims_; }
  const std::vector<bool>& dual_tags() const { return tags_; }
  Index dim() const { return product(dims_); }
  const AffineSubspace& states() const { return states_; }
  const AffineSubspace& effects() const { return effects_; }
  /// lambda with lambda * I a state.
  double flat_lambda() const { return lambda_; }
  bool first_order() const { return effects_.direction_rank() == 0; }

 private:
  CausObject() = default;

  Dims dims_;
  std::vector<bool> tags_;
  AffineSubspace states_;
  AffineSubspace effects_;
  double lambda_ = 1.0;
};

/// Drop unit factors (keeping {1} for the empty tensor).
Dims normalize_dims(const Dims& dims);

CausObject first_order(Index d);
CausObject unit();
/// The first-order object on the same factors as A.
CausObject all_states(const CausObject& a);
/// n outcomes, realized as diagonal states of an n-level system.
CausObject classical(Index n);

CausObject dual(const CausObject& a);
CausObject tensor(const CausObject& a, const CausObject& b);
CausObject par(const CausObject& a, const CausObject& b);
CausObject seq(const CausObject& a, const CausObject& b);
CausObject hom(const CausObject& a, const CausObject& b);

/// Reorder the factors of an object; perm follows permute_factors.
CausObject permute(const CausObject& a, std::span<const std::size_t> perm);

bool is_subset(const CausObject& a, const CausObject& b, double tol = kDefaultTolerances.sub);
bool approx_equal(const CausObject& a, const CausObject& b, double tol = kDefaultTolerances.sub);

struct Membership {
  bool psd = false;
  bool affine = false;
  double min_eigenvalue = 0.0;
  double distance = 0.0;
  bool ok() const { return psd && affine; }
};

Membership membership(const CausObject& a, const CMatrix& rho, const Tolerances& tol = kDefaultTolerances);
bool member(const CausObject& a, const CMatrix& rho, const Tolerances& tol = kDefaultTolerances);
/// Affine part only: distance test scaled by max(1, |rho|).
bool in_hull(const CausObject& a, const CMatrix& rho, double tol = kDefaultTolerances.member);

struct MorphismCheck {
  bool cp = false;
  bool affine = false;
  double min_eigenvalue = 0.0;
  double residual = 0.0;
  bool ok() const { return cp && affine; }
};

/// f : A -> B is a morphism iff it is CP and maps an affine basis of A's
/// state hull into B's state hull.
MorphismCheck check_morphism(const ChoiMap& f, const CausObject& a, const CausObject& b,
                             const Tolerances& tol = kDefaultTolerances);

/// The scalar with alpha * cup a state of A par |A|.
double alpha_scalar(const CausObject& a);

/// Is the reordered a (x) c a state of (A (x) C) < (B (x) D)?
bool interchange_check(const CMatrix& a_state, const CausObject& a, const CausObject& b,
                       const CMatrix& c_state, const CausObject& c, const CausObject& d,
                       const Tolerances& tol = kDefaultTolerances);

/// Pairing-matrix coordinates of the identity, i.e. the functional Tr.
RVector trace_functional(Index n);

}  // namespace caustyk
