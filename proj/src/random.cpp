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

#include "caustyk/random.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace caustyk {

CMatrix ginibre(Index rows, Index cols, Rng& rng) {
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  return g;
}

CMatrix random_hermitian(Index d, Rng& rng) { return hermitian_part(ginibre(d, d, rng)); }

namespace {

// Thin QR of a Gaussian matrix with the phases of R's diagonal moved into Q.
CMatrix haar_columns(Index rows, Index cols, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(rows, cols, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  for (Index k = 0; k < cols; ++k) {
    const Complex r = qr.matrixQR()(k, k);
    const double a = std::abs(r);
    if (a > 0.0) q.col(k) *= r / a;
  }
  return q;
}

}  // namespace

CMatrix haar_unitary(Index d, Rng& rng) { return haar_columns(d, d, rng); }

CMatrix random_isometry(Index dout, Index din, Rng& rng) {
  if (dout < din) throw Error(ErrorKind::InvalidDimension, "random_isometry: dout < din");
  return haar_columns(dout, din, rng);
}

CMatrix random_density(Index d, Rng& rng, Index rank) {
  const CMatrix g = ginibre(d, rank > 0 ? rank : d, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

ChoiMap random_channel(const Dims& in, const Dims& out, Rng& rng, Index kraus) {
  const Index din = product(in), dout = product(out);
  // An isometry din -> dout * k needs at least ceil(din / dout) Kraus operators.
  const Index k = kraus > 0 ? std::max(kraus, (din + dout - 1) / dout) : din * dout;
  // Kraus operators are the blocks of a random isometry din -> dout * k.
  const CMatrix v = random_isometry(dout * k, din, rng);
  std::vector<CMatrix> ops;
  for (Index j = 0; j < k; ++j) {
    CMatrix op(dout, din);
    for (Index o = 0; o < dout; ++o) op.row(o) = v.row(o * k + j);
    ops.push_back(std::move(op));
  }
  return choi_of_kraus(ops, in, out);
}

ChoiMap random_unital_channel(Index d, Rng& rng, Index terms) {
  const auto p = random_distribution(terms, rng);
  std::vector<CMatrix> ops;
  for (Index k = 0; k < terms; ++k) ops.push_back(std::sqrt(p[static_cast<std::size_t>(k)]) * haar_unitary(d, rng));
  return choi_of_kraus(ops, {d}, {d});
}

std::vector<double> random_distribution(Index n, Rng& rng) {
  std::vector<double> p(static_cast<std::size_t>(n));
  double total = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace caustyk
