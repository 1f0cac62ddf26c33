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


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "caustyk/io.hpp"
#include "caustyk/random.hpp"
#include "oracle.hpp"

namespace caustyk {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(CAUSTYK_BIN) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Json parse(const Outcome& r) { return Json::parse(r.out); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("caustyk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string matrix(const std::string& name, const CMatrix& m) const {
    write_matrix_json(path(name), m);
    return path(name);
  }

  fs::path dir_;
};

CMatrix swap_choi() {
  CMatrix s = CMatrix::Zero(4, 4);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) s(b * 2 + a, a * 2 + b) = 1.0;
  return oracle::choi({s}, 4, 4);
}

TEST_F(Cli, TypeInfo) {
  const Outcome r = run("typeinfo 'FO(2)'");
  ASSERT_EQ(r.code, 0);
  const Json j = parse(r);
  EXPECT_DOUBLE_EQ(j.at("alpha").get<double>(), 0.5);
  EXPECT_EQ(j.at("state_rank").get<int>(), 3);
  EXPECT_TRUE(j.at("first_order").get<bool>());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
  EXPECT_EQ(run("typeinfo 'FO(2'").code, 2);
  EXPECT_EQ(run("typeinfo 'FO(0)'").code, 2);
  EXPECT_EQ(run("member 'FO(2)' " + path("missing.json")).code, 2);
  EXPECT_EQ(run("laws --budget huge").code, 2);
}

TEST_F(Cli, Member) {
  const std::string id = matrix("id.json", oracle::choi({CMatrix::Identity(2, 2)}, 2, 2));
  const Outcome ok = run("member '[FO(2),FO(2)]' " + id);
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(parse(ok).at("verdict").get<bool>());
  const Outcome bad = run("member 'FO(2)' " + matrix("i.json", CMatrix::Identity(2, 2)));
  EXPECT_EQ(bad.code, 1);
  EXPECT_FALSE(parse(bad).at("verdict").get<bool>());
  EXPECT_EQ(run("member 'FO(3)' " + id).code, 2);
}

TEST_F(Cli, RawFormat) {
  const CMatrix id = oracle::choi({CMatrix::Identity(2, 2)}, 2, 2);
  write_matrix_raw(path("id.raw"), id, {2, 2});
  EXPECT_EQ(run("--format raw member '[FO(2),FO(2)]' " + path("id.raw")).code, 0);
}

TEST_F(Cli, Morphism) {
  const std::string id = matrix("id.json", oracle::choi({CMatrix::Identity(2, 2)}, 2, 2));
  EXPECT_EQ(run("morphism 'FO(2)' 'FO(2)' " + id).code, 0);
  EXPECT_EQ(run("morphism 'FO(2)' 'FO(2)' " + matrix("two.json", 2.0 * oracle::choi({CMatrix::Identity(2, 2)}, 2, 2))).code, 1);
}

// Matrices are passed in the hom layout (ai, ao, bi, bo).
TEST_F(Cli, Signalling) {
  const std::string swap = matrix("swap.json", oracle::to_hom(swap_choi(), 2, 2, 2, 2));
  const Outcome sw = run("signalling '[FO(2),FO(2)]*[FO(2),FO(2)]' " + swap);
  EXPECT_EQ(sw.code, 1);
  const Json j = parse(sw);
  EXPECT_EQ(j.at("classification").get<std::string>(), "two_way");
  EXPECT_FALSE(j.at("member").get<bool>());
  const Outcome par = run("signalling '[FO(2),FO(2)]@[FO(2),FO(2)]' " + swap);
  EXPECT_EQ(par.code, 0);
  const std::string id = matrix("id4.json", oracle::to_hom(oracle::choi({CMatrix::Identity(4, 4)}, 4, 4), 2, 2, 2, 2));
  const Outcome both = run("signalling '[FO(2),FO(2)]*[FO(2),FO(2)]' " + id);
  EXPECT_EQ(both.code, 0);
  EXPECT_EQ(parse(both).at("classification").get<std::string>(), "both");
  EXPECT_EQ(run("signalling 'FO(2)*FO(2)' " + id).code, 2);
}

TEST_F(Cli, DecomposeAndEquiv) {
  Rng rng(81);
  const CMatrix tau = oracle::to_hom(oracle::choi(oracle::one_way_kraus(2, 2, 2, 2, 2, rng), 4, 4), 2, 2, 2, 2);
  const std::string t = matrix("tau.json", tau);
  const Outcome d = run("decompose '[FO(2),FO(2)]<[FO(2),FO(2)]' " + t + " --out " + path("p1.json"));
  ASSERT_EQ(d.code, 0);
  EXPECT_TRUE(parse(d).at("verdict").get<bool>());
  const DecompPair p = pair_from_json(read_json_file(path("p1.json")));
  EXPECT_LT(oracle::max_abs(recompose(p) - tau), 1e-8);

  // the same pair with a unitary slid across the mediator
  const CMatrix u = haar_unitary(p.z, rng);
  DecompPair q = p;
  q.rho = ChoiMap({p.dx}, {p.da, p.z}, apply_on(unitary_map(u, {p.z}), p.rho.J, Dims{p.dx, p.da, p.z}, 2, 1));
  q.sigma = compose(p.sigma, unitary_map(u.adjoint(), {p.z}));
  std::ofstream(path("p2.json")) << pair_to_json(q, "[FO(2),FO(2)]", "[FO(2),FO(2)]").dump();
  const Outcome e = run("equiv " + path("p1.json") + " " + path("p2.json") + " --certificate");
  EXPECT_EQ(e.code, 0);
  const Json ej = parse(e);
  EXPECT_TRUE(ej.at("equivalent").get<bool>());
  ASSERT_TRUE(ej.at("certificate").is_array());
  for (const auto& s : ej.at("certificate")) EXPECT_LT(s.at("residual").get<double>(), 1e-7);

  const Outcome sw = run("decompose '[FO(2),FO(2)]<[FO(2),FO(2)]' " +
                     matrix("swap.json", oracle::to_hom(swap_choi(), 2, 2, 2, 2)));
  EXPECT_EQ(sw.code, 1);
  EXPECT_EQ(parse(sw).at("error").get<std::string>(), "not-one-way");
}

TEST_F(Cli, Laws) {
  const Outcome r = run("laws --seed 5 --budget small");
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const Json j = Json::parse(line);
    EXPECT_TRUE(j.at("pass").get<bool>()) << line;
    ++n;
  }
  EXPECT_GT(n, 0);
  const Outcome empty = run("laws --budget empty");
  EXPECT_EQ(empty.code, 0);
  EXPECT_TRUE(empty.out.empty());
}

TEST_F(Cli, Reconstruct) {
  Rng rng(82);
  const ChoiMap h = random_channel({2}, {2}, rng);
  Json script;
  script["kind"] = "morphism";
  script["choi"] = {{"in_dims", {2}}, {"out_dims", {2}}, {"J", matrix_to_json(h.J)}};
  std::ofstream(path("s.json")) << script.dump();
  const Outcome r = run("reconstruct 'FO(2)' 'FO(2)' --probe-script " + path("s.json"));
  EXPECT_EQ(r.code, 0);
  const CMatrix got = matrix_from_json(parse(r).at("candidate").at("J"));
  EXPECT_LT(oracle::max_abs(got - h.J), 1e-8);
  std::ofstream(path("adv.json")) << R"({"kind": "adversarial", "which": 0})";
  const Outcome adv = run("reconstruct 'FO(2)' 'FO(2)' --probe-script " + path("adv.json"));
  EXPECT_EQ(adv.code, 1);
  EXPECT_FALSE(parse(adv).at("in_image").get<bool>());
}

}  // namespace
}  // namespace caustyk
