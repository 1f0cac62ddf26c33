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

// caustyk: command-line front end for causal types over CP.
//
// Exit codes: 0 pass/true, 1 fail/false, 2 usage error,
// 3 numerical inconsistency.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "caustyk/dsl.hpp"
#include "caustyk/embedding.hpp"
#include "caustyk/io.hpp"
#include "caustyk/signalling.hpp"

namespace {

using namespace caustyk;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax:
    case ErrorKind::Semantic:
    case ErrorKind::Io:
    case ErrorKind::TypeMismatch:
    case ErrorKind::ShapeMismatch:
    case ErrorKind::InvalidDimension: return kUsage;
    case ErrorKind::NotOneWay:
    case ErrorKind::NotPositive: return kFail;
    default: return kNumeric;
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

CMatrix load_matrix(const std::string& path, const std::string& format, Index expected) {
  MatrixFile f = read_matrix_file(path, format);
  if (f.m.rows() != expected || f.m.cols() != expected) {
    throw Error(ErrorKind::ShapeMismatch, path + ": matrix is " + std::to_string(f.m.rows()) + "x" +
                                              std::to_string(f.m.cols()) + ", type needs " +
                                              std::to_string(expected) + "x" + std::to_string(expected));
  }
  return f.m;
}

int cmd_typeinfo(const std::string& text) {
  const Expr e = parse_type(text);
  const CausObject o = elaborate(e);
  Json j;
  j["type"] = print_type(e);
  j["tree"] = tree_string(e);
  j["dims"] = o.dims();
  j["dim"] = o.dim();
  j["state_rank"] = o.states().direction_rank();
  j["effect_rank"] = o.effects().direction_rank();
  j["first_order"] = o.first_order();
  j["flat_lambda"] = o.flat_lambda();
  j["alpha"] = alpha_scalar(o);
  emit(j);
  return kPass;
}

int cmd_member(const std::string& text, const std::string& path, const std::string& format,
               const Tolerances& tol) {
  const CausObject o = elaborate(text);
  const Membership m = membership(o, load_matrix(path, format, o.dim()), tol);
  Json j;
  j["verdict"] = m.ok();
  j["psd"] = m.psd;
  j["affine"] = m.affine;
  j["min_eigenvalue"] = m.min_eigenvalue;
  j["distance"] = m.distance;
  emit(j);
  return m.ok() ? kPass : kFail;
}

int cmd_morphism(const std::string& src, const std::string& tgt, const std::string& path,
                 const std::string& format, const Tolerances& tol) {
  const CausObject a = elaborate(src), b = elaborate(tgt);
  const ChoiMap f(a.dims(), b.dims(), load_matrix(path, format, a.dim() * b.dim()));
  const MorphismCheck r = check_morphism(f, a, b, tol);
  Json j;
  j["verdict"] = r.ok();
  j["cp"] = r.cp;
  j["affine"] = r.affine;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["residual"] = r.residual;
  emit(j);
  return r.ok() ? kPass : kFail;
}

int cmd_signalling(const std::string& text, const std::string& path, const std::string& format,
                   const Tolerances& tol) {
  const Expr e = parse_type(text);
  using K = TypeExpr::Kind;
  if ((e->kind != K::Tensor && e->kind != K::Seq && e->kind != K::Par) || e->lhs->kind != K::Hom ||
      e->rhs->kind != K::Hom) {
    throw Error(ErrorKind::TypeMismatch, "signalling expects [A,A'] op [B,B'] with op one of *, <, @");
  }
  const CausObject ai = elaborate(e->lhs->lhs), ao = elaborate(e->lhs->rhs);
  const CausObject bi = elaborate(e->rhs->lhs), bo = elaborate(e->rhs->rhs);
  if (!ai.first_order() || !ao.first_order() || !bi.first_order() || !bo.first_order()) {
    throw Error(ErrorKind::TypeMismatch, "signalling needs first-order party systems");
  }
  const CausObject o = elaborate(e);
  const CMatrix j = load_matrix(path, format, o.dim());
  const SignallingReport r = nonsignalling_test(hom_to_channel_layout(j, ai.dim(), ao.dim(), bi.dim(), bo.dim()),
                                                ai.dim(), bi.dim(), ao.dim(), bo.dim());
  const bool in_type = member(o, j, tol);
  Json out;
  out["classification"] = to_string(r.kind);
  out["a_to_b"] = r.a_to_b;
  out["b_to_a"] = r.b_to_a;
  out["member"] = in_type;
  emit(out);
  return in_type ? kPass : kFail;
}

int cmd_decompose(const std::string& text, const std::string& path, const std::string& format, Index dx,
                  Index dxp, const std::string& out_path, const Tolerances& tol) {
  const Expr e = parse_type(text);
  if (e->kind != TypeExpr::Kind::Seq) throw Error(ErrorKind::TypeMismatch, "decompose expects a type A < B");
  const CausObject a = elaborate(e->lhs), b = elaborate(e->rhs);
  const CMatrix tau = load_matrix(path, format, dx * a.dim() * b.dim() * dxp);
  try {
    const DecompPair p = comb_decompose(tau, a, b, dx, dxp, tol);
    const Json j = pair_to_json(p, print_type(e->lhs), print_type(e->rhs));
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) throw Error(ErrorKind::Io, "cannot write " + out_path);
      f << j.dump() << "\n";
    }
    Json summary;
    summary["verdict"] = true;
    summary["z_dim"] = p.z;
    summary["pair"] = j;
    emit(summary);
    return kPass;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotOneWay) throw;
    Json j;
    j["verdict"] = false;
    j["error"] = to_string(err.kind());
    j["message"] = err.what();
    emit(j);
    return kFail;
  }
}

int cmd_equiv(const std::string& p1_path, const std::string& p2_path, bool certificate, const Tolerances& tol) {
  std::string a1, b1, a2, b2;
  const DecompPair p1 = pair_from_json(read_json_file(p1_path), &a1, &b1);
  const DecompPair p2 = pair_from_json(read_json_file(p2_path), &a2, &b2);
  const bool eq = coend_equiv(p1, p2, tol.round_trip);
  Json j;
  j["equivalent"] = eq;
  j["composite_gap"] = (recompose(p1) - recompose(p2)).cwiseAbs().maxCoeff();
  if (certificate) {
    if (!eq) {
      j["certificate"] = nullptr;
      j["certificate_error"] = "pairs are not equivalent";
    } else {
      try {
        if (a1.empty() || b1.empty()) throw Error(ErrorKind::CertificateUnavailable, "pair file lacks a_type/b_type");
        const auto steps = equiv_certificate(p1, p2, elaborate(a1), elaborate(b1), tol);
        Json arr = Json::array();
        for (const auto& s : steps) {
          Json sj;
          sj["kind"] = s.kind;
          sj["direction"] = s.forward ? "push" : "pull";
          sj["from_z"] = s.before.z;
          sj["to_z"] = s.after.z;
          sj["residual"] = s.residual;
          sj["map"] = choi_to_json(s.f);
          arr.push_back(std::move(sj));
        }
        j["certificate"] = std::move(arr);
      } catch (const Error& e) {
        j["certificate"] = nullptr;
        j["certificate_error"] = e.what();
      }
    }
  }
  emit(j);
  return eq ? kPass : kFail;
}

int cmd_laws(std::uint64_t seed, const std::string& budget) {
  const auto records = law_suite(seed, parse_budget(budget));
  bool all = true;
  for (const auto& r : records) {
    std::cout << to_json_line(r) << "\n";
    all = all && r.pass;
  }
  return all ? kPass : kFail;
}

BlackBox box_from_script(const Json& s, const CausObject& a) {
  const std::string kind = s.at("kind").get<std::string>();
  auto choi = [&](const char* key) {
    const Json& c = s.at(key);
    return ChoiMap(c.contains("in_dims") ? c.at("in_dims").get<Dims>() : Dims{a.dim()},
                   c.contains("out_dims") ? c.at("out_dims").get<Dims>() : Dims{1},
                   matrix_from_json(c.contains("J") ? c.at("J") : c));
  };
  if (kind == "morphism") {
    const ChoiMap f = choi("choi");
    return [f](const CMatrix& t, Index dx, Index dxp) { return F_mor(f, t, dx, dxp); };
  }
  if (kind == "scale") {
    const ChoiMap f = choi("choi");
    const double k = s.at("factor").get<double>();
    return [f, k](const CMatrix& t, Index dx, Index dxp) { return CMatrix(k * F_mor(f, t, dx, dxp)); };
  }
  if (kind == "transpose") {
    const Index da = a.dim();
    return [da](const CMatrix& t, Index dx, Index dxp) {
      const Dims d{dx, da, dxp};
      const std::size_t f[] = {1};
      return partial_transpose(t, d, f);
    };
  }
  if (kind == "switch") {
    const ChoiMap f = choi("probe"), g = choi("other");
    const Index da = a.dim();
    return [f, g, da](const CMatrix& t, Index dx, Index dxp) {
      return (dx == 1 && dxp == da) ? F_mor(f, t, dx, dxp) : F_mor(g, t, dx, dxp);
    };
  }
  if (kind == "adversarial") return adversarial_box(s.at("which").get<int>());
  throw Error(ErrorKind::Semantic, "probe script: unknown kind '" + kind + "'");
}

int cmd_reconstruct(const std::string& src, const std::string& tgt, const std::string& script,
                    std::uint64_t seed) {
  const CausObject a = elaborate(src), b = elaborate(tgt);
  BlackBox box;
  try {
    box = box_from_script(read_json_file(script), a);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("probe script: ") + e.what());
  }
  Rng rng(seed);
  const FullnessReport r = fullness_reconstruct(box, a, b, rng);
  Json j;
  j["in_image"] = r.in_image();
  j["cp"] = r.cp;
  j["affine"] = r.affine;
  j["probes_agree"] = r.probes_agree;
  j["worst_probe"] = r.worst_probe;
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  j["candidate"] = choi_to_json(r.candidate);
  emit(j);
  return r.in_image() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"caustyk: higher-order causal types over CP"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "matrix file format")->check(CLI::IsMember({"json", "raw"}));

  std::string type_a, type_b, file_a, file_b, out_path, budget = "small", script;
  Index dx = 1, dxp = 1;
  std::uint64_t seed = 1;
  bool certificate = false;

  auto* typeinfo = app.add_subcommand("typeinfo", "dimensions, ranks, flatness and alpha of a type");
  typeinfo->add_option("type", type_a)->required();

  auto* member_cmd = app.add_subcommand("member", "is the matrix a state of the type?");
  member_cmd->add_option("type", type_a)->required();
  member_cmd->add_option("matrix", file_a)->required();

  auto* morphism = app.add_subcommand("morphism", "is the Choi matrix a morphism between the types?");
  morphism->add_option("source", type_a)->required();
  morphism->add_option("target", type_b)->required();
  morphism->add_option("choi", file_a)->required();

  auto* signalling = app.add_subcommand("signalling", "classify a two-party channel");
  signalling->add_option("type", type_a)->required();
  signalling->add_option("choi", file_a)->required();

  auto* decompose = app.add_subcommand("decompose", "split a one-way element through a first-order mediator");
  decompose->add_option("type", type_a)->required();
  decompose->add_option("choi", file_a)->required();
  decompose->add_option("--x", dx, "input boundary dimension")->check(CLI::PositiveNumber);
  decompose->add_option("--xp", dxp, "output boundary dimension")->check(CLI::PositiveNumber);
  decompose->add_option("--out", out_path, "write the pair file here");

  auto* equiv = app.add_subcommand("equiv", "coend equivalence of two decomposition pairs");
  equiv->add_option("pair1", file_a)->required();
  equiv->add_option("pair2", file_b)->required();
  equiv->add_flag("--certificate", certificate, "also emit a chain of slides");

  auto* laws = app.add_subcommand("laws", "randomized law suite, JSON lines");
  laws->add_option("--seed", seed);
  laws->add_option("--budget", budget)->check(CLI::IsMember({"empty", "small", "medium"}));

  auto* reconstruct = app.add_subcommand("reconstruct", "fullness reconstruction against a scripted black box");
  reconstruct->add_option("source", type_a)->required();
  reconstruct->add_option("target", type_b)->required();
  reconstruct->add_option("--probe-script", script)->required();
  reconstruct->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    const Tolerances tol = tolerances_from_env();
    if (*typeinfo) return cmd_typeinfo(type_a);
    if (*member_cmd) return cmd_member(type_a, file_a, format, tol);
    if (*morphism) return cmd_morphism(type_a, type_b, file_a, format, tol);
    if (*signalling) return cmd_signalling(type_a, file_a, format, tol);
    if (*decompose) return cmd_decompose(type_a, file_a, format, dx, dxp, out_path, tol);
    if (*equiv) return cmd_equiv(file_a, file_b, certificate, tol);
    if (*laws) return cmd_laws(seed, budget);
    if (*reconstruct) return cmd_reconstruct(type_a, type_b, script, seed);
  } catch (const Error& e) {
    std::cerr << "caustyk: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "caustyk: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}
