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

#include <cstdint>
#include <random>

#include "caustyk/cp.hpp"
#include "caustyk/types.hpp"

namespace caustyk {

/// Seeded source for every randomized construction; runs are reproducible
/// from the seed alone.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Uniform integer in [lo, hi].
  Index integer(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(engine_);
  }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

CMatrix ginibre(Index rows, Index cols, Rng& rng);
CMatrix random_hermitian(Index d, Rng& rng);
/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
CMatrix haar_unitary(Index d, Rng& rng);
/// Random isometry C^din -> C^dout (dout >= din).
CMatrix random_isometry(Index dout, Index din, Rng& rng);
/// Unit-trace density matrix of the given rank (0 means full rank).
CMatrix random_density(Index d, Rng& rng, Index rank = 0);
/// Random CPTP map with `kraus` Kraus operators (0 means din * dout); raised
/// to ceil(din / dout) when smaller.
ChoiMap random_channel(const Dims& in, const Dims& out, Rng& rng, Index kraus = 0);
/// Random mixture of unitaries: CPTP and unital.
ChoiMap random_unital_channel(Index d, Rng& rng, Index terms = 3);
/// Probability vector drawn uniformly from the simplex.
std::vector<double> random_distribution(Index n, Rng& rng);

}  // namespace caustyk
