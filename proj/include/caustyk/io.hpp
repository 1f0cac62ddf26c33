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

#include "caustyk/caus.hpp"
#include "caustyk/cp.hpp"
#include "caustyk/signalling.hpp"
#include "json.hpp"

namespace caustyk {

using Json = nlohmann::ordered_json;

/// Rows of [re, im] pairs.
Json matrix_to_json(const CMatrix& m);
/// Accepts rows of [re, im] pairs or of plain reals.
CMatrix matrix_from_json(const Json& j);

Json affine_to_json(const AffineSubspace& w);
Json choi_to_json(const ChoiMap& f);

/// A matrix read from disk, with whatever factor metadata came with it.
struct MatrixFile {
  CMatrix m;
  std::optional<Dims> dims;
  std::optional<Dims> in_dims;
  std::optional<Dims> out_dims;
};

/// `format` is "json" or "raw". Raw files hold little-endian float64
/// (re, im) pairs in row-major order; the sidecar `<path>.dims` holds the
/// factor list as a JSON array.
MatrixFile read_matrix_file(const std::string& path, const std::string& format = "json");
void write_matrix_json(const std::string& path, const CMatrix& m);
void write_matrix_raw(const std::string& path, const CMatrix& m, const Dims& dims);

/// Pair files also carry the type texts of the two halves.
Json pair_to_json(const DecompPair& p, const std::string& a_type, const std::string& b_type);
DecompPair pair_from_json(const Json& j, std::string* a_type = nullptr, std::string* b_type = nullptr);
Json read_json_file(const std::string& path);

/// Default tolerances overridden by CAUSTYK_TOL: either one number (used
/// for the membership and positivity checks) or an object keyed by field
/// name (herm, orth, sub, psd, member, one_way, round_trip, slide).
Tolerances tolerances_from_env();
Tolerances tolerances_from_text(const std::string& text);

}  // namespace caustyk
