// Copyright 2026 The cqs Authors
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

// Shared fixtures for the unit suites: seeded random operators and tables.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "cqs/cqs.hpp"

namespace cqs::testing {

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = cplx(n(rng), n(rng));
  return m;
}

inline Matrix random_operator(std::mt19937_64& rng, int qubits) {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return random_matrix(rng, d, d);
}

/// Arbitrary (non-group) rep data: size in [1, max_size], casimir >= 0, dim in [1, 10].
inline RepTable random_rep_table(std::mt19937_64& rng, int max_size) {
  std::uniform_int_distribution<int> size(1, max_size), dim(1, 10);
  std::uniform_real_distribution<double> cas(0.0, 10.0);
  std::vector<RepEntry> entries;
  const int n = size(rng);
  for (int i = 0; i < n; ++i) entries.push_back({"R" + std::to_string(i), std::nullopt, Casimir(cas(rng)), dim(rng)});
  return RepTable("random", std::move(entries));
}

inline FrobeniusSpec spec_for(RepTable table, double beta, PhaseConvention c) {
  EncodingMap enc = default_encoding(table);
  return FrobeniusSpec(std::move(table), std::move(enc), beta, c);
}

}  // namespace cqs::testing
