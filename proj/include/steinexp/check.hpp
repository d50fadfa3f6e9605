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

#ifndef STEINEXP_CHECK_HPP_
#define STEINEXP_CHECK_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace steinexp {

// Outcome of a verification: how many assertions ran and which failed.
struct CheckReport {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }

  void require(bool ok, std::string what) {
    ++checked;
    if (!ok) failures.push_back(std::move(what));
  }

  void merge(const CheckReport& other) {
    checked += other.checked;
    for (const auto& f : other.failures)
      failures.push_back(other.name.empty() ? f : other.name + ": " + f);
  }
};

}  // namespace steinexp

#endif  // STEINEXP_CHECK_HPP_
