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
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqs/circuit.hpp"
#include "cqs/dense_operator.hpp"
#include "cqs/errors.hpp"
#include "cqs/frobenius.hpp"
#include "cqs/pauli.hpp"
#include "json.hpp"

namespace cqs {

enum class CompileMode { paper, exact };

inline std::string to_string(CompileMode m) { return m == CompileMode::paper ? "paper" : "exact"; }

inline CompileMode parse_mode(const std::string& s) {
  if (s == "paper") return CompileMode::paper;
  if (s == "exact") return CompileMode::exact;
  throw ParseError("unknown compile mode '" + s + "'");
}

struct NamedAngle {
  std::string name;
  double value;
};

struct CompileReport {
  CompileMode mode = CompileMode::exact;
  int ancilla_count = 0;
  int term_count = 0;
  /// s such that the ideal post-selected operator is target / s.
  cplx nominal_scale{1.0, 0.0};
  std::vector<NamedAngle> angles;

  std::optional<double> angle(const std::string& name) const {
    for (const auto& a : angles)
      if (a.name == name) return a.value;
    return std::nullopt;
  }
};

struct Compiled {
  Circuit circuit;
  CompileReport report;
};

/// theta with cos^2(theta/2) : sin^2(theta/2) = w0 : w1, in [0, pi].
inline double two_term_angle(double w0, double w1) {
  if (!(w0 >= 0.0) || !(w1 >= 0.0)) throw ValidationError("two_term_angle: weights must be non-negative");
  if (w0 + w1 <= 0.0) throw ValidationError("two_term_angle: both weights are zero");
  return 2.0 * std::acos(std::clamp(std::sqrt(w0 / (w0 + w1)), 0.0, 1.0));
}

struct PrepAngles {
  double top;    // Ry on the first ancilla
  double left;   // Ry on the second ancilla when the first is 0
  double right;  // ... when the first is 1
};

/// Angles of the two-ancilla preparation |00> -> sum_k c_k |k>.
inline PrepAngles prep_angles_4(const std::array<double, 4>& c) {
  double sq = 0.0;
  for (double x : c) {
    if (!(x >= 0.0)) throw ValidationError("prep_angles_4: amplitudes must be non-negative");
    sq += x * x;
  }
  if (std::abs(sq - 1.0) > 1e-9) throw ValidationError("prep_angles_4: amplitudes are not L2-normalized");
  const double upper = std::hypot(c[0], c[1]);
  const double lower = std::hypot(c[2], c[3]);
  auto branch = [](double first, double norm) { return norm > 0.0 ? 2.0 * std::acos(std::clamp(first / norm, 0.0, 1.0)) : 0.0; };
  return {2.0 * std::acos(std::clamp(upper, 0.0, 1.0)), branch(c[0], upper), branch(c[2], lower)};
}

/// Hands out fresh ancilla ids; never reuses one.
class AncillaPool {
 public:
  explicit AncillaPool(int first_id) : next_(first_id) {}
  int take() {
    taken_.push_back(next_);
    return next_++;
  }
  const std::vector<int>& taken() const { return taken_; }

 private:
  int next_;
  std::vector<int> taken_;
};

/// Compiled single-qubit factor. Post-selected effect = gain * normalized factor.
struct Fragment {
  std::vector<Gate> gates;
  std::vector<int> ancillas;
  std::vector<PostSelect> postselect;
  std::vector<NamedAngle> angles;
  double gain = 1.0;
};

namespace detail {

inline std::vector<Control> pattern_controls(const std::vector<int>& ancillas, unsigned pattern) {
  std::vector<Control> ctl;
  const auto m = ancillas.size();
  for (std::size_t j = 0; j < m; ++j) ctl.push_back({ancillas[j], static_cast<int>((pattern >> (m - 1 - j)) & 1U)});
  return ctl;
}

/// exp(i phi) on the ancilla branch |pattern>: a phase gate on the last
/// ancilla, controlled by the others, X-conjugated when that bit must be 0.
inline void branch_phase(std::vector<Gate>& gates, const std::vector<int>& ancillas, unsigned pattern, double phi) {
  if (phi == 0.0) return;
  std::vector<Control> ctl = pattern_controls(ancillas, pattern);
  const Control last = ctl.back();
  ctl.pop_back();
  if (last.state == 0) gates.push_back(Gate::fixed(GateKind::x, last.qubit));
  gates.push_back(Gate::phase(phi, last.qubit, ctl));
  if (last.state == 0) gates.push_back(Gate::fixed(GateKind::x, last.qubit));
}

inline GateKind pauli_gate(Pauli p) {
  switch (p) {
    case Pauli::X: return GateKind::x;
    case Pauli::Y: return GateKind::y;
    case Pauli::Z: return GateKind::z;
    default: throw ValidationError("identity has no gate");
  }
}

}  // namespace detail

/// One normalized factor on `target`. One term: bare (phased) unitary, no
/// ancilla. Two terms: Ry(theta) / controlled U0, U1 / Ry(-theta), one
/// ancilla. Three or four terms: Ry-tree preparation of the amplitudes on two
/// ancillas, controlled select, H on both ancillas.
inline Fragment compile_factor(const NormalizedFactor& factor, int target, AncillaPool& pool) {
  if (factor.terms.empty()) throw ValidationError("compile_factor: factor has no terms");
  if (factor.terms.size() > 4) throw ValidationError("compile_factor: more than four terms");
  Fragment f;
  const std::string prefix = "q" + std::to_string(target) + ".";
  for (const auto& t : factor.terms)
    if (t.phase != 0.0) f.angles.push_back({prefix + "phase." + to_char(t.letter), t.phase});

  if (factor.terms.size() == 1) {
    const auto& t = factor.terms.front();
    if (t.phase == 0.0) {
      if (t.letter != Pauli::I) f.gates.push_back(Gate::fixed(detail::pauli_gate(t.letter), target));
    } else {
      f.gates.push_back(Gate::u1q(std::polar(1.0, t.phase) * pauli_matrix(t.letter), target));
    }
    return f;
  }

  auto select = [&](unsigned branch, const NormalizedTerm& t) {
    detail::branch_phase(f.gates, f.ancillas, branch, t.phase);
    if (t.letter != Pauli::I)
      f.gates.push_back(Gate::fixed(detail::pauli_gate(t.letter), target, detail::pattern_controls(f.ancillas, branch)));
  };

  if (factor.terms.size() == 2) {
    const int a = pool.take();
    f.ancillas = {a};
    const double theta = two_term_angle(factor.terms[0].magnitude, factor.terms[1].magnitude);
    f.angles.insert(f.angles.begin(), {prefix + "ry", theta});
    f.gates.push_back(Gate::ry(theta, a));
    select(0, factor.terms[0]);
    select(1, factor.terms[1]);
    f.gates.push_back(Gate::ry(-theta, a));
    f.postselect = {{a, 0}};
    return f;
  }

  const int a0 = pool.take();
  const int a1 = pool.take();
  f.ancillas = {a0, a1};
  std::array<double, 4> c{};
  for (std::size_t k = 0; k < factor.terms.size(); ++k) c[k] = factor.terms[k].magnitude;
  const PrepAngles p = prep_angles_4(c);
  f.angles.insert(f.angles.begin(), {{prefix + "top", p.top}, {prefix + "left", p.left}, {prefix + "right", p.right}});
  f.gates.push_back(Gate::ry(p.top, a0));
  f.gates.push_back(Gate::ry(p.left, a1, {{a0, 0}}));
  f.gates.push_back(Gate::ry(p.right, a1, {{a0, 1}}));
  for (std::size_t k = 0; k < factor.terms.size(); ++k) select(static_cast<unsigned>(k), factor.terms[k]);
  f.gates.push_back(Gate::fixed(GateKind::h, a0));
  f.gates.push_back(Gate::fixed(GateKind::h, a1));
  f.postselect = {{a0, 0}, {a1, 0}};
  // <00| (H (x) H) |k> = 1/2 for every k.
  f.gain = 0.5;
  return f;
}

namespace detail {

/// Printed theta_k labels of each operator's circuit, keyed to fragment angle names.
inline std::vector<std::pair<std::string, std::string>> paper_angle_labels(Generator op) {
  switch (op) {
    case Generator::mu:
      return {{"theta1", "q0.ry"}, {"theta2", "q1.ry"}, {"theta3", "q2.left"}, {"theta4", "q2.right"}, {"theta5", "q0.phase.I"}};
    case Generator::delta:
      return {{"theta1", "q0.ry"}, {"theta2", "q1.ry"}, {"theta3", "q2.left"}, {"theta4", "q2.right"}};
    case Generator::eta:
      return {{"theta1", "q0.left"}, {"theta2", "q0.right"}, {"theta3", "q1.left"}, {"theta4", "q1.right"},
              {"theta5", "q0.phase.I"}, {"theta6", "q0.phase.X"}, {"theta7", "q0.phase.Y"}};
    case Generator::epsilon:
      return {{"theta1", "q0.left"}, {"theta2", "q0.right"}, {"theta3", "q1.left"}, {"theta4", "q1.right"}};
    default: return {};
  }
}

}  // namespace detail

/// The per-qubit product form compile_paper realizes for `op`.
inline FactoredOperator paper_factored_form(Generator op, const FrobeniusSpec& spec) {
  if (op == Generator::cylinder) throw ValidationError("paper mode supports mu, delta, eta, eps only");
  return sum_of_factors(build(op, spec));
}

/// Paper-mode compilation: collect per-qubit factors, normalize each, and
/// compile every factor with its own fresh ancillas. The circuit realizes
/// paper_factored_form(op, spec) / nominal_scale, not the operator itself.
inline Compiled compile_paper(Generator op, const FrobeniusSpec& spec) {
  const FactoredOperator form = paper_factored_form(op, spec);
  const int n = form.qubits();
  Compiled out;
  out.circuit.work_qubits.resize(static_cast<std::size_t>(n));
  std::iota(out.circuit.work_qubits.begin(), out.circuit.work_qubits.end(), 0);
  AncillaPool pool(n);
  cplx scale = form.scale;
  double gain = 1.0;
  std::vector<NamedAngle> local;
  for (int q = 0; q < n; ++q) {
    const NormalizedFactor nf = normalize_factor(form.factors[static_cast<std::size_t>(q)]);
    Fragment frag = compile_factor(nf, q, pool);
    scale *= nf.scale;
    gain *= frag.gain;
    out.report.term_count += static_cast<int>(nf.terms.size());
    out.circuit.gates.insert(out.circuit.gates.end(), frag.gates.begin(), frag.gates.end());
    out.circuit.postselect.insert(out.circuit.postselect.end(), frag.postselect.begin(), frag.postselect.end());
    local.insert(local.end(), frag.angles.begin(), frag.angles.end());
  }
  out.circuit.ancilla_qubits = pool.taken();
  out.report.mode = CompileMode::paper;
  out.report.ancilla_count = static_cast<int>(pool.taken().size());
  out.report.nominal_scale = scale / gain;
  for (const auto& [label, key] : detail::paper_angle_labels(op))
    for (const auto& a : local)
      if (a.name == key) out.report.angles.push_back({label, a.value});
  out.report.angles.insert(out.report.angles.end(), local.begin(), local.end());
  out.circuit.validate();
  return out;
}

inline Compiled compile_paper(const std::string& op_name, const FrobeniusSpec& spec) {
  return compile_paper(parse_generator(op_name), spec);
}

inline constexpr int kMaxExactQubits = 8;

/// General LCU over the full Pauli expansion: ceil(log2 K) shared ancillas
/// prepared to sqrt(|alpha_k| / s), phased Pauli select, adjoint preparation,
/// post-select all zeros. Ideal effect: op / s with s = sum |alpha_k|.
inline Compiled compile_exact(const DenseOperator& op) {
  if (!op.is_square()) throw ShapeError("compile_exact needs a square operator");
  const std::vector<PauliTerm> terms = pauli_expand(op.matrix());
  int n = 0;
  while ((Eigen::Index{1} << n) < op.rows()) ++n;
  if (n < 1 || n > kMaxExactQubits) throw ShapeError("compile_exact supports 1.." + std::to_string(kMaxExactQubits) + " qubits");
  if (terms.empty()) throw ValidationError("compile_exact: operator is zero");

  const auto k_terms = terms.size();
  int m = 0;
  while ((std::size_t{1} << m) < k_terms) ++m;
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.coefficient);
  std::vector<double> weight(std::size_t{1} << m, 0.0);
  for (std::size_t k = 0; k < k_terms; ++k) weight[k] = std::abs(terms[k].coefficient) / s;

  Compiled out;
  out.circuit.work_qubits.resize(static_cast<std::size_t>(n));
  std::iota(out.circuit.work_qubits.begin(), out.circuit.work_qubits.end(), 0);
  for (int j = 0; j < m; ++j) out.circuit.ancilla_qubits.push_back(n + j);
  const auto& anc = out.circuit.ancilla_qubits;

  // Binary tree of controlled Ry: level l splits each prefix's weight between its two children.
  std::vector<Gate> prep;
  for (int level = 0; level < m; ++level) {
    const int below = m - level;
    for (std::size_t prefix = 0; prefix < (std::size_t{1} << level); ++prefix) {
      double total = 0.0, left = 0.0;
      for (std::size_t k = 0; k < weight.size(); ++k) {
        if ((k >> below) != prefix) continue;
        total += weight[k];
        if (((k >> (below - 1)) & 1U) == 0) left += weight[k];
      }
      if (total <= 0.0) continue;
      const double theta = 2.0 * std::acos(std::clamp(std::sqrt(left / total), 0.0, 1.0));
      if (theta == 0.0) continue;
      std::vector<int> above(anc.begin(), anc.begin() + level);
      prep.push_back(Gate::ry(theta, anc[static_cast<std::size_t>(level)], detail::pattern_controls(above, static_cast<unsigned>(prefix))));
      out.report.angles.push_back({"prep.l" + std::to_string(level) + "." + std::to_string(prefix), theta});
    }
  }

  auto& gates = out.circuit.gates;
  gates = prep;
  for (std::size_t k = 0; k < k_terms; ++k) {
    const auto& t = terms[k];
    const double phi = std::arg(t.coefficient);
    if (m == 0) {
      if (phi != 0.0) gates.push_back(Gate::u1q(std::polar(1.0, phi) * Eigen::Matrix2cd::Identity(), 0));
    } else {
      detail::branch_phase(gates, anc, static_cast<unsigned>(k), phi);
    }
    for (int q = 0; q < n; ++q)
      if (t.string[q] != Pauli::I)
        gates.push_back(Gate::fixed(detail::pauli_gate(t.string[q]), q, detail::pattern_controls(anc, static_cast<unsigned>(k))));
  }
  for (auto it = prep.rbegin(); it != prep.rend(); ++it) gates.push_back(it->adjoint());
  for (int a : anc) out.circuit.postselect.push_back({a, 0});

  out.report.mode = CompileMode::exact;
  out.report.ancilla_count = m;
  out.report.term_count = static_cast<int>(k_terms);
  out.report.nominal_scale = s;
  out.circuit.validate();
  return out;
}

inline nlohmann::ordered_json to_json(const CompileReport& r) {
  nlohmann::ordered_json angles = nlohmann::ordered_json::array();
  for (const auto& a : r.angles) angles.push_back({{"name", a.name}, {"value", a.value}});
  return {{"mode", to_string(r.mode)},
          {"ancilla_count", r.ancilla_count},
          {"term_count", r.term_count},
          {"nominal_scale", {r.nominal_scale.real(), r.nominal_scale.imag()}},
          {"angles", std::move(angles)}};
}

}  // namespace cqs
