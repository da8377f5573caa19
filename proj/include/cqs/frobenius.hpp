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

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqs/dense_operator.hpp"
#include "cqs/encoding.hpp"
#include "cqs/errors.hpp"
#include "cqs/reptheory.hpp"

namespace cqs {

/// How the area weight exp(-beta C2) is evaluated. `paper_literal` keeps the
/// imaginary exponent exp(-i beta C2) that the printed coefficients use;
/// `euclidean` is the real heat-kernel weight.
enum class PhaseConvention { paper_literal, euclidean };

inline std::string to_string(PhaseConvention c) { return c == PhaseConvention::paper_literal ? "paper" : "euclidean"; }

inline PhaseConvention parse_convention(const std::string& s) {
  if (s == "paper" || s == "paper_literal") return PhaseConvention::paper_literal;
  if (s == "euclidean") return PhaseConvention::euclidean;
  throw ParseError("unknown phase convention '" + s + "'");
}

/// Generators of the 2D Yang-Mills Frobenius algebra, plus the area-carrying cylinder.
enum class Generator { mu, delta, eta, epsilon, cylinder };

inline std::string to_string(Generator g) {
  switch (g) {
    case Generator::mu: return "mu";
    case Generator::delta: return "delta";
    case Generator::eta: return "eta";
    case Generator::epsilon: return "eps";
    case Generator::cylinder: return "cylinder";
  }
  return "?";
}

inline Generator parse_generator(const std::string& s) {
  if (s == "mu") return Generator::mu;
  if (s == "delta") return Generator::delta;
  if (s == "eta") return Generator::eta;
  if (s == "eps" || s == "epsilon") return Generator::epsilon;
  if (s == "cylinder") return Generator::cylinder;
  throw ParseError("unknown operator '" + s + "'");
}

/// (in circles, out circles).
inline std::pair<int, int> arity(Generator g) {
  switch (g) {
    case Generator::mu: return {2, 1};
    case Generator::delta: return {1, 2};
    case Generator::eta: return {0, 1};
    case Generator::epsilon: return {1, 0};
    case Generator::cylinder: return {1, 1};
  }
  return {0, 0};
}

class FrobeniusSpec {
 public:
  FrobeniusSpec(RepTable table, EncodingMap encoding, double beta = 1.0,
                PhaseConvention convention = PhaseConvention::paper_literal)
      : table_(std::move(table)), encoding_(std::move(encoding)), beta_(beta), convention_(convention) {
    if (!(beta_ >= 0.0) || !std::isfinite(beta_)) throw ValidationError("beta must be finite and >= 0");
    if (!encoding_.covers(table_)) throw ValidationError("encoding does not cover every rep in the table");
  }

  const RepTable& table() const { return table_; }
  const EncodingMap& encoding() const { return encoding_; }
  double beta() const { return beta_; }
  PhaseConvention convention() const { return convention_; }

 private:
  RepTable table_;
  EncodingMap encoding_;
  double beta_;
  PhaseConvention convention_;
};

/// Three-irrep SU(3) truncation with the two-qubit code.
inline FrobeniusSpec su3_spec(double beta = 1.0, PhaseConvention convention = PhaseConvention::paper_literal) {
  return FrobeniusSpec(su3_truncation(3), paper_su3_encoding(), beta, convention);
}

inline cplx area_weight(double area, double casimir, PhaseConvention convention) {
  if (convention == PhaseConvention::paper_literal) return std::exp(cplx(0.0, -area * casimir));
  return cplx(std::exp(-area * casimir), 0.0);
}

/// mu and eta carry the spec's beta; delta and epsilon carry none.
inline double default_area(Generator g, const FrobeniusSpec& spec) {
  return (g == Generator::delta || g == Generator::epsilon) ? 0.0 : spec.beta();
}

/// Vacuum-padded square form on the encoded register.
inline DenseOperator build_padded(Generator g, const FrobeniusSpec& spec, double area) {
  const auto& enc = spec.encoding();
  const int b = enc.bits_per_circle();
  const int qubits = (g == Generator::mu || g == Generator::delta) ? 2 * b : b;
  Matrix m = Matrix::Zero(Eigen::Index{1} << qubits, Eigen::Index{1} << qubits);
  for (const auto& rep : spec.table().entries()) {
    const Bitstring& r = enc.code(rep.label);
    const Bitstring& vac = enc.vacuum();
    const double dim = rep.dim;
    const cplx w = area_weight(area, rep.casimir.value(), spec.convention());
    auto at = [&](const Bitstring& row, const Bitstring& col) -> cplx& {
      return m(static_cast<Eigen::Index>(row.to_index()), static_cast<Eigen::Index>(col.to_index()));
    };
    switch (g) {
      case Generator::mu: at(r + vac, r + r) = w / dim; break;
      case Generator::delta: at(r + r, r + vac) = w / dim; break;
      case Generator::eta: at(r, vac) = dim * w; break;
      case Generator::epsilon: at(vac, r) = dim * w; break;
      case Generator::cylinder: at(r, r) = w; break;
    }
  }
  return DenseOperator(std::move(m), qubits, qubits);
}

inline DenseOperator build_mu(const FrobeniusSpec& s) { return build_padded(Generator::mu, s, default_area(Generator::mu, s)); }
inline DenseOperator build_delta(const FrobeniusSpec& s) { return build_padded(Generator::delta, s, default_area(Generator::delta, s)); }
inline DenseOperator build_eta(const FrobeniusSpec& s) { return build_padded(Generator::eta, s, default_area(Generator::eta, s)); }
inline DenseOperator build_epsilon(const FrobeniusSpec& s) { return build_padded(Generator::epsilon, s, default_area(Generator::epsilon, s)); }
inline DenseOperator build_cylinder(const FrobeniusSpec& s) { return build_padded(Generator::cylinder, s, default_area(Generator::cylinder, s)); }

inline DenseOperator build(Generator g, const FrobeniusSpec& s) { return build_padded(g, s, default_area(g, s)); }

/// Generator restricted to the irrep sector, basis = table order, one
/// d-dimensional factor per circle (d = table size, vacuum stripped).
inline Matrix logical_generator(Generator g, const FrobeniusSpec& spec, double area) {
  const auto d = static_cast<Eigen::Index>(spec.table().size());
  const auto [in, out] = arity(g);
  Eigen::Index rows = 1, cols = 1;
  for (int i = 0; i < out; ++i) rows *= d;
  for (int i = 0; i < in; ++i) cols *= d;
  Matrix m = Matrix::Zero(rows, cols);
  for (Eigen::Index r = 0; r < d; ++r) {
    const auto& rep = spec.table()[static_cast<std::size_t>(r)];
    const double dim = rep.dim;
    const cplx w = area_weight(area, rep.casimir.value(), spec.convention());
    switch (g) {
      case Generator::mu: m(r, r * d + r) = w / dim; break;
      case Generator::delta: m(r * d + r, r) = w / dim; break;
      case Generator::eta: m(r, 0) = dim * w; break;
      case Generator::epsilon: m(0, r) = dim * w; break;
      case Generator::cylinder: m(r, r) = w; break;
    }
  }
  return m;
}

/// Permutation exchanging two adjacent d-dimensional circles.
inline Matrix logical_swap(Eigen::Index d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
  return s;
}

/// One gluing step: `generator` acts on the circles starting at `position`
/// (for eta, the new circle is inserted there); identity elsewhere.
struct WordStep {
  Generator generator;
  std::optional<double> area;  // defaults per default_area
  int position = 0;
};

/// Logical matrix of the cobordism obtained by applying `word` left to right
/// to `input_circles` circles.
inline DenseOperator compose_word(const std::vector<WordStep>& word, const FrobeniusSpec& spec, int input_circles = 1) {
  if (input_circles < 0) throw ArityError("negative circle count");
  const auto d = static_cast<Eigen::Index>(spec.table().size());
  auto power = [d](int n) {
    Eigen::Index r = 1;
    for (int i = 0; i < n; ++i) r *= d;
    return r;
  };
  int circles = input_circles;
  Matrix acc = identity(power(circles));
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& step = word[i];
    const auto [in, out] = arity(step.generator);
    if (step.position < 0 || step.position + in > circles)
      throw ArityError("step " + std::to_string(i) + " (" + to_string(step.generator) + ") needs " +
                       std::to_string(in) + " circle(s) at position " + std::to_string(step.position) + " but only " +
                       std::to_string(circles) + " available");
    const double area = step.area.value_or(default_area(step.generator, spec));
    const Matrix g = logical_generator(step.generator, spec, area);
    const Matrix full = kron(kron(identity(power(step.position)), g), identity(power(circles - step.position - in)));
    acc = (full * acc).eval();
    circles += out - in;
  }
  return DenseOperator::logical(std::move(acc));
}

}  // namespace cqs
