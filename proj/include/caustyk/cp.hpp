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

#include <span>
#include <string>
#include <vector>

#include "caustyk/herm.hpp"
#include "caustyk/types.hpp"

namespace caustyk {

/// A linear map on matrices stored by its Choi matrix.
///
/// Convention: J = sum_ij |i><j| (x) Phi(|i><j|), i.e. the input factors come
/// first and the output factors second, so that J lives on the same factor
/// list as the internal hom [A, B]. Block (i, j) of J is Phi(|i><j|).
/// The empty tensor is the factor list {1}.
struct ChoiMap {
  Dims in_dims{1};
  Dims out_dims{1};
  CMatrix J = CMatrix::Ones(1, 1);

  ChoiMap() = default;
  ChoiMap(Dims in, Dims out, CMatrix j);

  Index din() const { return product(in_dims); }
  Index dout() const { return product(out_dims); }
  /// Factor list of J: input factors followed by output factors.
  Dims factors() const { return concat(in_dims, out_dims); }

  static constexpr const char* kConvention = "J = (id (x) Phi)(cup), input factors first";
};

/// A state on `dims` is a map from the trivial system.
ChoiMap state_map(const CMatrix& rho, Dims dims);
/// An effect on `dims` is a map to the trivial system; `pi` pairs as Tr(pi rho).
ChoiMap effect_map(const CMatrix& pi, Dims dims);

ChoiMap choi_of_kraus(const std::vector<CMatrix>& kraus, Dims in, Dims out);
std::vector<CMatrix> kraus_of_choi(const ChoiMap& f, double rel = kDefaultTolerances.sub);

CMatrix apply(const ChoiMap& f, const CMatrix& rho);

/// Apply f to a contiguous run of factors of `m` (positions first..first+k-1
/// of `dims`, whose product must equal f.din()). The output factors replace
/// the run in place. Returns the new matrix and writes the new factor list.
CMatrix apply_on(const ChoiMap& f, const CMatrix& m, const Dims& dims,
                 std::size_t first, std::size_t count, Dims* out_dims = nullptr);

/// g after f.
ChoiMap compose(const ChoiMap& g, const ChoiMap& f);
/// f (x) g with factors ordered (in_f, in_g) -> (out_f, out_g).
ChoiMap tensor(const ChoiMap& f, const ChoiMap& g);
ChoiMap scale(const ChoiMap& f, double s);

enum class Structural { Cup, Cap, Discard, Mix, Identity, Swap };
/// Cup and cap live on d (x) d; swap exchanges a d1 and a d2 system.
ChoiMap structural(Structural kind, Index d, Index d2 = 0);
ChoiMap unitary_map(const CMatrix& u, Dims dims);

bool is_cp(const ChoiMap& f, double tol = kDefaultTolerances.psd);
/// Largest entry of |Tr_out J - I_in|.
double tp_residual(const ChoiMap& f);
bool is_tp(const ChoiMap& f, double tol = 1e-9);
/// Max entry of |J_f - J_g|, after checking the factor lists agree.
double choi_distance(const ChoiMap& f, const ChoiMap& g);

/// V : in -> out (x) env, rows indexed (o, k) with k fastest.
struct Dilation {
  CMatrix V;
  Index din = 1;
  Index dout = 1;
  Index env = 1;
};

/// Minimal Stinespring dilation; env equals the Choi rank.
Dilation stinespring(const ChoiMap& f, double rel = kDefaultTolerances.sub);
/// A pure map in -> out (x) env (rank-one Choi on (in, out, env)) read as a
/// dilation of the channel in -> out.
Dilation dilation_of_pure(const CMatrix& j, Index din, Index dout, Index env);
/// The map rho -> Tr_env(V rho V^dagger).
ChoiMap traced_channel(const Dilation& p);
/// The full map rho -> V rho V^dagger with out factor (dout, env).
ChoiMap dilation_map(const Dilation& p);

/// v with (I (x) v) V1 = V2 and v^dagger v = I. Requires env(P1) <= env(P2)
/// and that both dilate the same channel; throws NoIsometry otherwise.
CMatrix dilation_isometry(const Dilation& p1, const Dilation& p2);

/// Conditional expectation onto the support of `support`:
/// pi(x) = P x P + Tr((1 - P) x) P / Tr P.
struct Shadow {
  ChoiMap pi;
  double idempotence = 0.0;
  double absorb_state = 0.0;   // |pi o rho - rho|
  double absorb_effect = 0.0;  // |sigma1 o pi - sigma2 o pi|
};

/// rho : X -> A (x) Z, sigma1, sigma2 : Z -> B (x) X'. Builds pi on Z from
/// the support of rho's Z marginal and reports residuals; throws
/// ShadowNotFound when a residual exceeds `tol`.
Shadow shadow(const ChoiMap& rho, Index z, const ChoiMap& sigma1,
              const ChoiMap& sigma2, double tol = 1e-8);

/// Classical control: dephase the n-outcome input, then prepare states[i].
ChoiMap ctrl(const std::vector<CMatrix>& states);
/// Diagonal input encoding a probability vector on the classical object.
CMatrix classical_point(const std::vector<double>& p);

}  // namespace caustyk
