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
#include <vector>

#include "caustyk/types.hpp"

namespace caustyk {

// Hermitian n x n matrices form a real vector space of dimension n^2 with
// the Hilbert-Schmidt inner product <X, Y> = Tr(XY). Coordinates below are
// taken in the orthonormal basis returned by herm_basis(n):
//   E_ii                          for i = 0..n-1
//   (E_ij + E_ji) / sqrt(2)       for i < j, row-major
//   -i (E_ij - E_ji) / sqrt(2)    for i < j, row-major

std::vector<CMatrix> herm_basis(Index n);

RVector to_coords(const CMatrix& m);
CMatrix from_coords(const RVector& v, Index n);

/// Side length n of a Hermitian matrix with `real_dim` = n^2 coordinates.
Index side_from_real_dim(Index real_dim);

bool is_hermitian(const CMatrix& m, double tol = kDefaultTolerances.herm);
CMatrix hermitian_part(const CMatrix& m);

double hs_inner(const CMatrix& a, const CMatrix& b);

double min_eigenvalue(const CMatrix& m);
bool psd_check(const CMatrix& m, double tol = kDefaultTolerances.psd);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Coordinates of from_coords(u, na) (x) from_coords(v, nb).
RVector kron_coords(const RVector& u, Index na, const RVector& v, Index nb);

/// Reorder tensor factors: factor k of the result is factor perm[k] of m.
CMatrix permute_factors(const CMatrix& m, const Dims& dims,
                        std::span<const std::size_t> perm);
Dims permute_dims(const Dims& dims, std::span<const std::size_t> perm);
std::vector<std::size_t> inverse_permutation(
    std::span<const std::size_t> perm);

/// Coordinate version of permute_factors, applied to each column of `coords`.
RMatrix permute_coords(const RMatrix& coords, const Dims& dims,
                       std::span<const std::size_t> perm);

/// Trace out every factor not listed in `keep`; kept factors stay in their
/// original relative order.
CMatrix partial_trace(const CMatrix& m, const Dims& dims,
                      std::span<const std::size_t> keep);

/// Partial transpose on the listed factors.
CMatrix partial_transpose(const CMatrix& m, const Dims& dims,
                          std::span<const std::size_t> factors);

CMatrix identity(Index n);

}  // namespace caustyk
