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

#include "caustyk/io.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace caustyk {

namespace {

Dims dims_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Io, "factor list must be a JSON array");
  Dims d;
  for (const auto& x : j) {
    const auto v = x.get<long long>();
    if (v < 1) throw Error(ErrorKind::Io, "factor dimension < 1");
    d.push_back(static_cast<Index>(v));
  }
  if (d.empty()) d.push_back(1);
  return d;
}

ChoiMap choi_from_json(const Json& j) {
  return ChoiMap(dims_from_json(j.at("in_dims")), dims_from_json(j.at("out_dims")),
                 matrix_from_json(j.at("J")));
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorKind::Io, "matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorKind::Io, "matrix rows have different lengths");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorKind::Io, "matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

Json affine_to_json(const AffineSubspace& w) {
  const Index n = side_from_real_dim(w.ambient());
  Json j;
  j["base"] = matrix_to_json(from_coords(w.base(), n));
  Json dirs = Json::array();
  const RMatrix b = w.directions().basis();
  for (Index k = 0; k < b.cols(); ++k) dirs.push_back(matrix_to_json(from_coords(b.col(k), n)));
  j["directions"] = std::move(dirs);
  return j;
}

Json choi_to_json(const ChoiMap& f) {
  Json j;
  j["in_dims"] = f.in_dims;
  j["out_dims"] = f.out_dims;
  j["J"] = matrix_to_json(f.J);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path + ": " + e.what());
  }
}

MatrixFile read_matrix_file(const std::string& path, const std::string& format) {
  MatrixFile out;
  if (format == "raw") {
    static_assert(std::endian::native == std::endian::little, "raw format assumes a little-endian host");
    out.dims = dims_from_json(read_json_file(path + ".dims"));
    const Index n = product(*out.dims);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
    std::vector<double> buf(static_cast<std::size_t>(2 * n * n));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(double))) {
      throw Error(ErrorKind::Io, path + ": raw file is shorter than the sidecar dims require");
    }
    out.m.resize(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const std::size_t k = static_cast<std::size_t>(2 * (i * n + j));
        out.m(i, j) = Complex(buf[k], buf[k + 1]);
      }
    }
    return out;
  }
  if (format != "json") throw Error(ErrorKind::Io, "unknown matrix format '" + format + "'");
  const Json j = read_json_file(path);
  if (j.is_array()) {
    out.m = matrix_from_json(j);
  } else if (j.is_object()) {
    const char* key = j.contains("J") ? "J" : "matrix";
    if (!j.contains(key)) throw Error(ErrorKind::Io, path + ": object has neither 'J' nor 'matrix'");
    out.m = matrix_from_json(j.at(key));
    if (j.contains("dims")) out.dims = dims_from_json(j.at("dims"));
    if (j.contains("in_dims")) out.in_dims = dims_from_json(j.at("in_dims"));
    if (j.contains("out_dims")) out.out_dims = dims_from_json(j.at("out_dims"));
  } else {
    throw Error(ErrorKind::Io, path + ": expected a matrix or an object");
  }
  return out;
}

void write_matrix_json(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << matrix_to_json(m).dump() << "\n";
}

void write_matrix_raw(const std::string& path, const CMatrix& m, const Dims& dims) {
  if (product(dims) != m.rows()) throw Error(ErrorKind::ShapeMismatch, "write_matrix_raw: dims do not match");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const double re = m(i, j).real(), im = m(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
  std::ofstream side(path + ".dims");
  side << Json(dims).dump() << "\n";
}

Json pair_to_json(const DecompPair& p, const std::string& a_type, const std::string& b_type) {
  Json j;
  j["a_type"] = a_type;
  j["b_type"] = b_type;
  j["x"] = p.dx;
  j["a"] = p.da;
  j["b"] = p.db;
  j["xp"] = p.dxp;
  j["z_dim"] = p.z;
  j["rho"] = choi_to_json(p.rho);
  j["sigma"] = choi_to_json(p.sigma);
  return j;
}

DecompPair pair_from_json(const Json& j, std::string* a_type, std::string* b_type) {
  try {
    DecompPair p;
    p.dx = j.at("x").get<Index>();
    p.da = j.at("a").get<Index>();
    p.db = j.at("b").get<Index>();
    p.dxp = j.at("xp").get<Index>();
    p.z = j.at("z_dim").get<Index>();
    p.rho = choi_from_json(j.at("rho"));
    p.sigma = choi_from_json(j.at("sigma"));
    if (p.rho.din() != p.dx || p.rho.dout() != p.da * p.z || p.sigma.din() != p.z ||
        p.sigma.dout() != p.db * p.dxp) {
      throw Error(ErrorKind::Io, "pair file: dimensions are inconsistent");
    }
    if (a_type) *a_type = j.value("a_type", std::string());
    if (b_type) *b_type = j.value("b_type", std::string());
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("pair file: ") + e.what());
  }
}

Tolerances tolerances_from_text(const std::string& text) {
  Tolerances t;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Semantic, "CAUSTYK_TOL is neither a number nor a JSON object");
  }
  auto positive = [](double v, const std::string& name) {
    if (!(v > 0.0)) throw Error(ErrorKind::Semantic, "tolerance '" + name + "' must be positive");
    return v;
  };
  if (j.is_number()) {
    t.member = t.psd = positive(j.get<double>(), "CAUSTYK_TOL");
    return t;
  }
  if (!j.is_object()) throw Error(ErrorKind::Semantic, "CAUSTYK_TOL is neither a number nor a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw Error(ErrorKind::Semantic, "tolerance '" + key + "' is not a number");
    const double v = positive(value.get<double>(), key);
    if (key == "herm") t.herm = v;
    else if (key == "orth") t.orth = v;
    else if (key == "sub") t.sub = v;
    else if (key == "psd") t.psd = v;
    else if (key == "member") t.member = v;
    else if (key == "one_way") t.one_way = v;
    else if (key == "round_trip") t.round_trip = v;
    else if (key == "slide") t.slide = v;
    else throw Error(ErrorKind::Semantic, "unknown tolerance '" + key + "'");
  }
  return t;
}

Tolerances tolerances_from_env() {
  const char* v = std::getenv("CAUSTYK_TOL");
  if (!v || !*v) return Tolerances{};
  return tolerances_from_text(v);
}

}  // namespace caustyk
