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

// The steinexp command line. Exit codes: 0 success, 1 a verification
// failed (failures on stderr), 2 usage or I/O error.

#ifndef STEINEXP_CLI_HPP_
#define STEINEXP_CLI_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "steinexp/kernels.hpp"
#include "steinexp/output.hpp"
#include "steinexp/rational.hpp"

namespace steinexp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  std::vector<long> ns;
  std::vector<Rational> ts;
  Variant variant = Variant::kV1;
  // bounds: recipe (the small-t or large-t pipeline), log-factor, exact, tool1,
  // tool2, tool3.
  std::string mode = "recipe";
  std::optional<Rational> lambda;
  std::optional<Rational> c;
  std::optional<Rational> kappa;
  long k = -1;  // gelfand subset size; -1 means n/2
  int grid_size = 10000;
  std::string suite = "all";
  long n_max = 200;
  bool inject_fault = false;
  bool serial = false;
  Format format = Format::kTable;
  std::string output;  // empty: standard output
  int digits = 12;
};

// Runs one command and writes its table to config.output or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace steinexp

#endif  // STEINEXP_CLI_HPP_
