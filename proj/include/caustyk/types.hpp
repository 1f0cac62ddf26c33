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

#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace caustyk {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Ordered list of tensor-factor dimensions. The empty tensor is `{1}`.
using Dims = std::vector<Index>;

inline Index product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1},
                         [](Index a, Index b) { return a * b; });
}

inline Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

enum class ErrorKind {
  InvalidDimension,
  ShapeMismatch,
  EmptyDual,
  NotFlat,
  NotPositive,
  NoIsometry,
  ShadowNotFound,
  NotOneWay,
  Inconsistency,
  TypeMismatch,
  CertificateUnavailable,
  Syntax,
  Semantic,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Default tolerance pack. Every threshold used by the library is one of
/// these or derived from them.
struct Tolerances {
  double herm = 1e-10;        // Hermiticity of inputs
  double orth = 1e-10;        // orthonormality of emitted bases
  double sub = 1e-9;          // relative singular-value cutoff for rank
  double psd = 1e-9;          // minimum eigenvalue floor
  double member = 1e-9;       // affine membership, scaled by max(1, |x|)
  double one_way = 1e-6;      // decomposition acceptance
  double round_trip = 1e-8;   // recompose(decompose(t)) == t
  double slide = 1e-7;        // per certificate step
};

inline constexpr Tolerances kDefaultTolerances{};

}  // namespace caustyk
