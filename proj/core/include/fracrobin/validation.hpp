// Copyright 2026 The fracrobin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracrobin/geometry.hpp"
#include "fracrobin/problem.hpp"

namespace fracrobin {

enum class Verdict { pass, fail, reported };
std::string to_string(Verdict v);

// One checked statement with the number that decided it.
struct CheckEntry {
  std::string name;
  Verdict verdict = Verdict::reported;
  double witness = 0.0;
  std::optional<Point> point{};
  std::string detail{};
};

struct ValidationReport {
  std::vector<CheckEntry> entries;

  bool passed() const;
  const CheckEntry* find(const std::string& name) const;
};

// Checks every standing hypothesis on the truncated computational domain:
// s in (0, 1), symmetry and bounds of p, s p+ < N, beta >= 0 on the collar,
// q, r > 1, q < pbar, 1 < r' q < p*_s, omega0 inside Omega with V > 0 on it,
// g = 0. Failures are entries, never exceptions.
ValidationReport validate_problem(const ProblemSpec& spec);

}  // namespace fracrobin
