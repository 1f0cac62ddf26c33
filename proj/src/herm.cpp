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

#include "caustyk/herm.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace caustyk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::EmptyDual: return "empty-dual";
    case ErrorKind::NotFlat: return "not-flat";
    case ErrorKind::NotPositive: return "not-positive";
    case ErrorKind::NoIsometry: return "no-isometry";
    case ErrorKind::ShadowNotFound: return "shadow-not-found";
    case ErrorKind::NotOneWay: return "not-one-way";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::TypeMismatch: return "type-mismatch";
    case ErrorKind::CertificateUnavailable: return "certificate-unavailable";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Semantic: return "semantic";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt2 = 1.41421356237309504880;

Index pair_count(Index n) { return n * (n - 1) / 2; }

// Row-major position of (i, j), i < j, among the strictly upper pairs.
Index pair_index(Index n, Index i, Index j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::vector<Index> factor_index_map(const Dims& dims,
                                    std::span<const std::size_t> perm) {
  const std::size_t k = dims.size();
  if (perm.size() != k) {
    throw Error(ErrorKind::ShapeMismatch, "permutation length mismatch");
  }
  std::vector<bool> seen(k, false);
  for (auto p : perm) {
    if (p >= k || seen[p]) {
      throw Error(ErrorKind::ShapeMismatch, "not a permutation");
    }
    seen[p] = true;
  }
  const Index total = product(dims);
  std::vector<Index> old_stride(k, 1);
  for (std::size_t f = k; f-- > 1;) old_stride[f - 1] = old_stride[f] * dims[f];

  std::vector<Index> map(static_cast<std::size_t>(total));
  std::vector<Index> digit(k, 0);
  for (Index idx = 0; idx < total; ++idx) {
    Index old = 0;
    for (std::size_t f = 0; f < k; ++f) old += digit[f] * old_stride[perm[f]];
    map[static_cast<std::size_t>(idx)] = old;
    for (std::size_t f = k; f-- > 0;) {
      if (++digit[f] < dims[perm[f]]) break;
      digit[f] = 0;
    }
  }
  return map;
}

}  // namespace

std::vector<CMatrix> herm_basis(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "herm_basis: n must be >= 1");
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = kInvSqrt2;
      e(j, i) = kInvSqrt2;
      basis.push_back(std::move(e));
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = Complex(0.0, -kInvSqrt2);
      e(j, i) = Complex(0.0, kInvSqrt2);
      basis.push_back(std::move(e));
    }
  }
  return basis;
}

RVector to_coords(const CMatrix& m) {
  const Index n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::ShapeMismatch, "to_coords: not square");
  const Index p = pair_count(n);
  RVector v(n * n);
  for (Index i = 0; i < n; ++i) v(i) = m(i, i).real();
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j, ++k) {
      // Average the two triangles so slightly non-Hermitian input projects.
      const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      v(n + k) = kSqrt2 * z.real();
      v(n + p + k) = -kSqrt2 * z.imag();
    }
  }
  return v;
}

CMatrix from_coords(const RVector& v, Index n) {
  if (v.size() != n * n) {
    throw Error(ErrorKind::ShapeMismatch, "from_coords: length is not n^2");
  }
  const Index p = pair_count(n);
  CMatrix m = CMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = v(i);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j, ++k) {
      const Complex z(v(n + k) * kInvSqrt2, -v(n + p + k) * kInvSqrt2);
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

Index side_from_real_dim(Index real_dim) {
  const auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(real_dim))));
  if (n * n != real_dim) {
    throw Error(ErrorKind::ShapeMismatch, "real dimension is not a square");
  }
  return n;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max(1.0, m.cwiseAbs().maxCoeff());
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

double hs_inner(const CMatrix& a, const CMatrix& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

double min_eigenvalue(const CMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool psd_check(const CMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

RVector kron_coords(const RVector& u, Index na, const RVector& v, Index nb) {
  return to_coords(kron(from_coords(u, na), from_coords(v, nb)));
}

CMatrix permute_factors(const CMatrix& m, const Dims& dims,
                        std::span<const std::size_t> perm) {
  if (product(dims) != m.rows() || m.rows() != m.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "permute_factors: dims do not match matrix");
  }
  const auto map = factor_index_map(dims, perm);
  const Index n = m.rows();
  CMatrix out(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      out(i, j) = m(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

Dims permute_dims(const Dims& dims, std::span<const std::size_t> perm) {
  Dims out(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out[k] = dims.at(perm[k]);
  return out;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv.at(perm[k]) = k;
  return inv;
}

RMatrix permute_coords(const RMatrix& coords, const Dims& dims,
                       std::span<const std::size_t> perm) {
  const Index n = product(dims);
  if (coords.rows() != n * n) {
    throw Error(ErrorKind::ShapeMismatch, "permute_coords: dims do not match");
  }
  // Factor permutations act on coordinates as a signed permutation: entry
  // (i, j) moves to (q(i), q(j)) and an upper pair that lands below the
  // diagonal flips the sign of its antisymmetric coordinate.
  const auto map = factor_index_map(dims, perm);  // new -> old
  std::vector<Index> fwd(static_cast<std::size_t>(n));  // old -> new
  for (Index i = 0; i < n; ++i) fwd[static_cast<std::size_t>(map[static_cast<std::size_t>(i)])] = i;
  const Index p = pair_count(n);
  std::vector<Index> target(static_cast<std::size_t>(n * n));
  std::vector<double> sign(static_cast<std::size_t>(n * n), 1.0);
  for (Index i = 0; i < n; ++i) target[static_cast<std::size_t>(i)] = fwd[static_cast<std::size_t>(i)];
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j, ++k) {
      Index a = fwd[static_cast<std::size_t>(i)];
      Index b = fwd[static_cast<std::size_t>(j)];
      double s = 1.0;
      if (a > b) {
        std::swap(a, b);
        s = -1.0;
      }
      const Index q = pair_index(n, a, b);
      target[static_cast<std::size_t>(n + k)] = n + q;
      target[static_cast<std::size_t>(n + p + k)] = n + p + q;
      sign[static_cast<std::size_t>(n + p + k)] = s;
    }
  }
  RMatrix out(coords.rows(), coords.cols());
  for (Index r = 0; r < n * n; ++r) {
    out.row(target[static_cast<std::size_t>(r)]) = sign[static_cast<std::size_t>(r)] * coords.row(r);
  }
  return out;
}

CMatrix partial_trace(const CMatrix& m, const Dims& dims,
                      std::span<const std::size_t> keep) {
  const std::size_t k = dims.size();
  std::vector<bool> kept(k, false);
  for (auto f : keep) {
    if (f >= k || kept[f]) throw Error(ErrorKind::ShapeMismatch, "partial_trace: bad index set");
    kept[f] = true;
  }
  std::vector<std::size_t> order(keep.begin(), keep.end());
  std::sort(order.begin(), order.end());
  Index dk = 1;
  for (auto f : order) dk *= dims[f];
  Index dt = 1;
  for (std::size_t f = 0; f < k; ++f) {
    if (!kept[f]) {
      order.push_back(f);
      dt *= dims[f];
    }
  }
  const CMatrix p = permute_factors(m, dims, order);
  CMatrix out = CMatrix::Zero(dk, dk);
  for (Index t = 0; t < dt; ++t) {
    for (Index j = 0; j < dk; ++j) {
      for (Index i = 0; i < dk; ++i) out(i, j) += p(i * dt + t, j * dt + t);
    }
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& m, const Dims& dims,
                          std::span<const std::size_t> factors) {
  const std::size_t k = dims.size();
  const Index n = product(dims);
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorKind::ShapeMismatch, "partial_transpose: dims do not match");
  }
  std::vector<bool> flip(k, false);
  for (auto f : factors) flip.at(f) = true;
  std::vector<Index> stride(k, 1);
  for (std::size_t f = k; f-- > 1;) stride[f - 1] = stride[f] * dims[f];
  CMatrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      Index ii = 0, jj = 0;
      for (std::size_t f = 0; f < k; ++f) {
        const Index a = (i / stride[f]) % dims[f];
        const Index b = (j / stride[f]) % dims[f];
        ii += (flip[f] ? b : a) * stride[f];
        jj += (flip[f] ? a : b) * stride[f];
      }
      out(ii, jj) = m(i, j);
    }
  }
  return out;
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

}  // namespace caustyk
