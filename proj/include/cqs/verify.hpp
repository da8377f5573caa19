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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "cqs/dense_operator.hpp"
#include "cqs/duality_compiler.hpp"
#include "cqs/errors.hpp"
#include "cqs/frobenius.hpp"
#include "cqs/pauli.hpp"
#include "cqs/statevector.hpp"
#include "json.hpp"

namespace cqs {

struct ScaleFit {
  double residual;
  cplx scale;
};

/// Best complex scale c minimizing ||a - c b||_F, and the residual relative
/// to ||a||. A zero `a` fits with scale 0 and residual 0.
inline ScaleFit compare_up_to_scale(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("compare_up_to_scale: shape mismatch");
  const double bb = b.squaredNorm();
  if (bb == 0.0) throw ValidationError("compare_up_to_scale: reference operator is zero");
  const double an = a.norm();
  if (an == 0.0) return {0.0, cplx(0.0, 0.0)};
  const cplx scale = (b.array().conjugate() * a.array()).sum() / bb;
  return {(a - scale * b).norm() / an, scale};
}

inline ScaleFit compare_up_to_scale(const DenseOperator& a, const DenseOperator& b) {
  return compare_up_to_scale(a.matrix(), b.matrix());
}

struct AxiomResult {
  std::string name;
  double deviation;
};

/// Logical generators the axiom checks are evaluated on. Kept as plain
/// matrices so tests can corrupt one and watch the suite react.
struct FrobeniusAlgebra {
  Eigen::Index dim;
  Matrix mu, delta, eta, epsilon;
  Matrix cylinder_a, cylinder_b, cylinder_ab;  // areas a, b, a+b
  Matrix cylinder_unit;                        // area of mu + area of eta
};

/// Second area used by the cylinder-additivity check.
inline constexpr double kAuxiliaryArea = 0.5;

inline FrobeniusAlgebra logical_algebra(const FrobeniusSpec& spec) {
  const double beta = spec.beta();
  return {static_cast<Eigen::Index>(spec.table().size()),
          logical_generator(Generator::mu, spec, beta),
          logical_generator(Generator::delta, spec, 0.0),
          logical_generator(Generator::eta, spec, beta),
          logical_generator(Generator::epsilon, spec, 0.0),
          logical_generator(Generator::cylinder, spec, beta),
          logical_generator(Generator::cylinder, spec, kAuxiliaryArea),
          logical_generator(Generator::cylinder, spec, beta + kAuxiliaryArea),
          logical_generator(Generator::cylinder, spec, 2 * beta)};
}

/// Commutative Frobenius algebra identities plus the area laws, each reported
/// as the max entrywise deviation between its two (or three) sides.
inline std::vector<AxiomResult> axiom_suite(const FrobeniusAlgebra& alg) {
  const Matrix id = identity(alg.dim);
  const Matrix sw = logical_swap(alg.dim);
  const Matrix& mu = alg.mu;
  const Matrix& de = alg.delta;
  std::vector<AxiomResult> out;
  out.push_back({"commutativity", max_abs_diff(mu * sw, mu)});
  out.push_back({"cocommutativity", max_abs_diff(sw * de, de)});
  out.push_back({"associativity", max_abs_diff(mu * kron(mu, id), mu * kron(id, mu))});
  out.push_back({"coassociativity", max_abs_diff(kron(de, id) * de, kron(id, de) * de)});
  const Matrix middle = de * mu;
  out.push_back({"frobenius_relation", std::max(max_abs_diff(kron(id, mu) * kron(de, id), middle),
                                                max_abs_diff(kron(mu, id) * kron(id, de), middle))});
  out.push_back({"counit_law", std::max(max_abs_diff(kron(alg.epsilon, id) * de, id), max_abs_diff(kron(id, alg.epsilon) * de, id))});
  out.push_back({"unit_with_area", std::max(max_abs_diff(mu * kron(alg.eta, id), alg.cylinder_unit),
                                            max_abs_diff(mu * kron(id, alg.eta), alg.cylinder_unit))});
  out.push_back({"area_additivity", max_abs_diff(alg.cylinder_a * alg.cylinder_b, alg.cylinder_ab)});
  return out;
}

inline std::vector<AxiomResult> axiom_suite(const FrobeniusSpec& spec) { return axiom_suite(logical_algebra(spec)); }

struct VerifyReport {
  std::string target_name;
  CompileMode mode = CompileMode::exact;
  double relative_residual = 0.0;
  cplx fitted_scale{0.0, 0.0};
  double min_success_probability = 0.0;
  double max_success_probability = 0.0;
  std::vector<AxiomResult> axiom_results;

  friend bool operator==(const VerifyReport& a, const VerifyReport& b) {
    if (a.axiom_results.size() != b.axiom_results.size()) return false;
    for (std::size_t i = 0; i < a.axiom_results.size(); ++i)
      if (a.axiom_results[i].name != b.axiom_results[i].name || a.axiom_results[i].deviation != b.axiom_results[i].deviation) return false;
    return a.target_name == b.target_name && a.mode == b.mode && a.relative_residual == b.relative_residual &&
           a.fitted_scale == b.fitted_scale && a.min_success_probability == b.min_success_probability &&
           a.max_success_probability == b.max_success_probability;
  }
};

inline nlohmann::ordered_json to_json(const VerifyReport& r) {
  nlohmann::ordered_json axioms = nlohmann::ordered_json::array();
  for (const auto& a : r.axiom_results) axioms.push_back({{"name", a.name}, {"deviation", a.deviation}});
  return {{"target_name", r.target_name},
          {"mode", to_string(r.mode)},
          {"relative_residual", r.relative_residual},
          {"fitted_scale", {r.fitted_scale.real(), r.fitted_scale.imag()}},
          {"min_success_probability", r.min_success_probability},
          {"max_success_probability", r.max_success_probability},
          {"axiom_results", std::move(axioms)}};
}

inline VerifyReport load_verify_report(const nlohmann::ordered_json& j) {
  try {
    VerifyReport r;
    r.target_name = j.at("target_name").get<std::string>();
    r.mode = parse_mode(j.at("mode").get<std::string>());
    r.relative_residual = j.at("relative_residual").get<double>();
    r.fitted_scale = cplx(j.at("fitted_scale").at(0).get<double>(), j.at("fitted_scale").at(1).get<double>());
    r.min_success_probability = j.at("min_success_probability").get<double>();
    r.max_success_probability = j.at("max_success_probability").get<double>();
    for (const auto& a : j.at("axiom_results")) r.axiom_results.push_back({a.at("name").get<std::string>(), a.at("deviation").get<double>()});
    return r;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("verify report: ") + ex.what());
  }
}

/// Effective operator of a compiled circuit compared against `reference`.
inline VerifyReport verify_circuit(const std::string& name, const Compiled& compiled, const Matrix& reference) {
  const EffectiveOperator eff = effective_operator(compiled.circuit);
  const ScaleFit fit = compare_up_to_scale(eff.matrix, reference);
  VerifyReport r;
  r.target_name = name;
  r.mode = compiled.report.mode;
  r.relative_residual = fit.residual;
  r.fitted_scale = fit.scale;
  const auto [lo, hi] = std::minmax_element(eff.success_probabilities.begin(), eff.success_probabilities.end());
  r.min_success_probability = *lo;
  r.max_success_probability = *hi;
  return r;
}

/// Exact mode compares against the padded operator itself; paper mode
/// against the per-qubit product form its circuit is built from
/// (target name gets a ":factored" suffix).
inline VerifyReport verify_operator(Generator op, const FrobeniusSpec& spec, CompileMode mode) {
  VerifyReport r;
  if (mode == CompileMode::exact) {
    const DenseOperator target = build(op, spec);
    r = verify_circuit(to_string(op), compile_exact(target), target.matrix());
  } else {
    r = verify_circuit(to_string(op) + ":factored", compile_paper(op, spec), paper_factored_form(op, spec).expand());
  }
  r.axiom_results = axiom_suite(spec);
  return r;
}

inline constexpr double kExactTolerance = 1e-10;
inline constexpr double kPaperFormTolerance = 1e-10;
inline constexpr double kAngleTolerance = 0.005;
inline constexpr double kAxiomTolerance = 1e-12;

/// One printed angle next to the recomputed one. Phase rows compare wrapped
/// magnitudes, since the printed phase signs disagree with the arithmetic.
struct GoldenAngle {
  std::string op;
  std::string name;
  std::string kind;  // "rotation" or "phase"
  double computed;
  double paper_printed;
  double error;
  bool pass;
};

/// Distance between a paper-mode product form and the operator it stands for.
struct FactoredFormGap {
  std::string op;
  double relative_residual;  // compare_up_to_scale(form, operator)
};

struct PaperBundle {
  PhaseConvention convention = PhaseConvention::paper_literal;
  bool angles_asserted = true;
  std::vector<VerifyReport> reports;
  std::vector<FactoredFormGap> factored_form_gaps;
  std::vector<GoldenAngle> angles;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

inline double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(a, two_pi);
  if (w > std::numbers::pi) w -= two_pi;
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

namespace detail {

struct PrintedAngle {
  const char* name;  // report label, or fragment angle name for the shared pi/2 rotations
  double value;
  bool phase;
};

inline std::vector<PrintedAngle> printed_angles(Generator op) {
  constexpr double pi = std::numbers::pi;
  switch (op) {
    case Generator::mu:
      return {{"theta1", 1.37, false}, {"theta2", pi / 3, false}, {"theta3", 2.21, false}, {"theta4", 0.93, false},
              {"theta5", 0.372, true}, {"q2.top", pi / 2, false}, {"q3.left", 2.21, false}, {"q3.right", 0.93, false},
              {"q3.top", pi / 2, false}};
    case Generator::delta:
      return {{"theta1", 1.32, false}, {"theta2", pi / 3, false}, {"theta3", 2.21, false}, {"theta4", 0.93, false},
              {"q2.top", pi / 2, false}, {"q3.left", 2.21, false}, {"q3.right", 0.93, false}, {"q3.top", pi / 2, false}};
    case Generator::eta:
      return {{"theta1", 1.77, false}, {"theta2", 1.37, false}, {"theta3", 2.21, false}, {"theta4", 0.93, false},
              {"theta5", 16.0 / 3.0, true}, {"theta6", 0.73, true}, {"theta7", 0.84, true},
              {"q0.top", pi / 2, false}, {"q1.top", pi / 2, false}};
    case Generator::epsilon:
      return {{"theta1", 1.85, false}, {"theta2", 1.29, false}, {"theta3", 2.21, false}, {"theta4", 0.93, false},
              {"q0.top", pi / 2, false}, {"q1.top", pi / 2, false}};
    default: return {};
  }
}

}  // namespace detail

inline const std::vector<Generator>& paper_operators() {
  static const std::vector<Generator> ops{Generator::mu, Generator::delta, Generator::eta, Generator::epsilon};
  return ops;
}

/// Builds the four SU(3) operators at beta = 1, compiles them in both modes,
/// simulates and verifies. Under the paper convention every printed angle is
/// asserted; under euclidean the angle table is still produced but not
/// asserted. Failures are collected by name.
inline PaperBundle reproduce_paper(PhaseConvention convention = PhaseConvention::paper_literal) {
  const FrobeniusSpec spec = su3_spec(1.0, convention);
  PaperBundle bundle;
  bundle.convention = convention;
  bundle.angles_asserted = convention == PhaseConvention::paper_literal;

  for (const auto& a : axiom_suite(spec))
    if (!(a.deviation <= kAxiomTolerance)) bundle.failures.push_back("axiom:" + a.name);

  for (Generator op : paper_operators()) {
    const std::string name = to_string(op);
    const VerifyReport exact = verify_operator(op, spec, CompileMode::exact);
    if (!(exact.relative_residual <= kExactTolerance)) bundle.failures.push_back("exact_residual:" + name);
    bundle.reports.push_back(exact);

    const VerifyReport paper = verify_operator(op, spec, CompileMode::paper);
    if (!(paper.relative_residual <= kPaperFormTolerance)) bundle.failures.push_back("paper_form_residual:" + name);
    bundle.reports.push_back(paper);

    const DenseOperator target = build(op, spec);
    const FactoredOperator form = paper_factored_form(op, spec);
    bundle.factored_form_gaps.push_back({name, compare_up_to_scale(form.expand(), target.matrix()).residual});

    const CompileReport report = compile_paper(op, spec).report;
    for (const auto& printed : detail::printed_angles(op)) {
      GoldenAngle row{name, printed.name, printed.phase ? "phase" : "rotation", 0.0, printed.value, 0.0, false};
      if (const auto got = report.angle(printed.name)) {
        row.computed = *got;
        row.error = printed.phase ? std::abs(std::abs(wrap_angle(*got)) - std::abs(wrap_angle(printed.value)))
                                  : std::abs(*got - printed.value);
        row.pass = row.error <= kAngleTolerance;
      } else {
        row.computed = std::nan("");
        row.error = std::nan("");
      }
      if (bundle.angles_asserted && !row.pass) bundle.failures.push_back("angle:" + name + "." + printed.name);
      bundle.angles.push_back(row);
    }
  }
  return bundle;
}

inline nlohmann::ordered_json to_json(const PaperBundle& b) {
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const auto& r : b.reports) reports.push_back(to_json(r));
  nlohmann::ordered_json gaps = nlohmann::ordered_json::array();
  for (const auto& g : b.factored_form_gaps)
    gaps.push_back({{"op", g.op}, {"relative_residual", g.relative_residual}});
  nlohmann::ordered_json angles = nlohmann::ordered_json::array();
  for (const auto& a : b.angles) {
    nlohmann::ordered_json row{{"op", a.op}, {"name", a.name}, {"kind", a.kind}};
    row["computed"] = std::isnan(a.computed) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(a.computed);
    row["paper_printed"] = a.paper_printed;
    row["error"] = std::isnan(a.error) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(a.error);
    row["pass"] = a.pass;
    angles.push_back(std::move(row));
  }
  return {{"convention", to_string(b.convention)},
          {"beta", 1.0},
          {"angles_asserted", b.angles_asserted},
          {"ok", b.ok()},
          {"failures", b.failures},
          {"reports", std::move(reports)},
          {"factored_form_gaps", std::move(gaps)},
          {"golden_angles", std::move(angles)}};
}

}  // namespace cqs
