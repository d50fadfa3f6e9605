// Copyright 2026 The steinexp Authors.
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "steinexp/cli.hpp"

using namespace steinexp;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "steinexp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("kolmogorov csv") {
  const Result r = cli({"kolmogorov", "--n-list", "4,16,64,256", "--format", "csv"});
  CHECK(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "n,distance,scaled,witness_state,witness_side");
  CHECK(ls[1].rfind("4,0.333333333333,", 0) == 0);
}

TEST_CASE("sharpness csv") {
  const Result r = cli({"sharpness", "--n-list", "16,36,64,100", "--format", "csv"});
  CHECK(r.code == kExitOk);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 5);
  CHECK(ls[0] == "n,a,t_n,tail,delta,scaled");
  CHECK(ls[1].rfind("16,4,5/2,14/99,", 0) == 0);
  CHECK(ls[1].find("0.237316571") != std::string::npos);
}

TEST_CASE("bounds csv columns and recipes") {
  const Result v1 = cli({"bounds", "--n", "100", "--t", "1", "--format", "csv"});
  CHECK(v1.code == kExitOk);
  const auto ls = lines(v1.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "n,t,theorem,mode,drift,second_moment,third_moment,tail,total,exact,sound,checks");
  CHECK(ls[1].rfind("100,1/1,bl_small_t,tool2,", 0) == 0);
  CHECK(ls[1].find(",true,true") != std::string::npos);

  const Result v2 = cli({"bounds", "--n", "100", "--t-grid", "1:3:3", "--variant", "v2", "--format", "csv"});
  CHECK(v2.code == kExitOk);
  const auto l2 = lines(v2.out);
  REQUIRE(l2.size() == 4);
  CHECK(l2[0] == "n,t,theorem,mode,variance,third_moment,tail,total,exact,sound,checks");
  CHECK(l2[1].find("bl_large_t,tool3") != std::string::npos);

  CHECK(cli({"bounds", "--n", "12"}).code == kExitUsage);
  CHECK(cli({"bounds", "--n", "16", "--mode", "tool3"}).code == kExitUsage);
  CHECK(cli({"bounds", "--n", "16", "--mode", "exact", "--variant", "v2", "--lambda", "1/3"}).code ==
        kExitUsage);
  CHECK(cli({"bounds", "--n", "16", "--mode", "tool1", "--c", "1/2"}).code == kExitOk);
}

TEST_CASE("json output parses") {
  const Result r = cli({"kolmogorov", "--n", "4", "--format", "json"});
  CHECK(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["columns"].size() == 5);
  CHECK(doc["rows"][0]["n"] == 4);
  CHECK(doc["rows"][0]["distance"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("verify exit codes") {
  const Result ok = cli({"verify", "--suite", "lemmas", "--n-max", "40", "--format", "csv"});
  CHECK(ok.code == kExitOk);
  CHECK(lines(ok.out)[0] == "suite,item,checked,failures,passed");
  CHECK(ok.err.empty());
  const Result bad = cli({"verify", "--suite", "lemmas", "--n-max", "40", "--inject-fault"});
  CHECK(bad.code == kExitFailure);
  CHECK(bad.err.rfind("FAIL ", 0) == 0);
  CHECK(cli({"verify", "--suite", "nope"}).code == kExitUsage);
  CHECK(cli({"verify", "--suite", "stein", "--grid-size", "500"}).code == kExitOk);
}

TEST_CASE("usage errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"kolmogorov", "--n", "5"}).code == kExitUsage);
  CHECK(cli({"kolmogorov", "--n-list", "4,x"}).code == kExitUsage);
  CHECK(cli({"kolmogorov", "--format", "xml"}).code == kExitUsage);
  CHECK(cli({"sharpness", "--n", "18"}).code == kExitUsage);
  CHECK(cli({"kolmogorov", "--n", "4", "--output", "/nonexistent/dir/x.csv"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("other commands run") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"spectrum", "--n", "6"}, {"kernels", "--n", "6", "--variant", "v2"},
        {"moments", "--n", "8"}, {"solutions", "--t", "1", "--grid-size", "200"},
        {"gelfand", "--n", "8", "--k", "3"}, {"scan", "--n", "16", "--t-grid", "0.5:2:4"}}) {
    const Result r = cli(args);
    INFO(args[0]);
    CHECK(r.code == kExitOk);
    CHECK_FALSE(r.out.empty());
  }
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> configs = {
      {"kolmogorov", "--n-list", "4,16,64", "--format", "csv"},
      {"sharpness", "--format", "csv"},
      {"bounds", "--n-list", "16,64", "--t-grid", "0.5:5:4", "--format", "csv"},
      {"verify", "--suite", "lemmas", "--n-max", "30", "--format", "json"},
  };
  for (const auto& c : configs) {
    const Result a = cli(c), b = cli(c);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
  auto with_serial = configs[0];
  with_serial.push_back("--serial");
  CHECK(cli(with_serial).out == cli(configs[0]).out);
}

TEST_CASE("file output and emit_csv") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string path = (dir / "steinexp_cli_test.csv").string();
  CHECK(cli({"kolmogorov", "--n", "4", "--format", "csv", "--output", path}).code == kExitOk);
  CHECK(slurp(path) == cli({"kolmogorov", "--n", "4", "--format", "csv"}).out);

  emit_csv({}, path);
  CHECK(slurp(path) == "n,t,quantity,exact,value\n");
  SweepRow row;
  row.n = 4;
  row.t = make_rational(1, 2);
  row.quantity = "tail, exact";
  row.exact = make_rational(1, 3);
  row.value = 1.0 / 3.0;
  emit_csv({row}, path, 6);
  CHECK(slurp(path) == "n,t,quantity,exact,value\n4,1/2,\"tail, exact\",1/3,0.333333\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit_csv({}, "/nonexistent/dir/x.csv"), std::runtime_error);
}

TEST_CASE("table helpers") {
  Table t;
  t.columns = {"a", "b"};
  CHECK_THROWS_AS(t.add({1L}), std::invalid_argument);
  t.add({1L, true});
  std::ostringstream os;
  write_text(t, os, 6);
  CHECK(os.str() == "a  b\n1  true\n");
  CHECK(format_double(0.1, 3) == "0.1");
  CHECK(format_double(1.0 / 0.0, 3) == "inf");
  CHECK(format_cell(Cell(make_rational(4, 2)), 3) == "2/1");
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}
