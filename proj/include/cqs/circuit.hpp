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
#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cqs/dense_operator.hpp"
#include "cqs/errors.hpp"
#include "json.hpp"

namespace cqs {

enum class GateKind { ry, rz, phase, x, y, z, h, u1q };

inline std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::ry: return "ry";
    case GateKind::rz: return "rz";
    case GateKind::phase: return "phase";
    case GateKind::x: return "x";
    case GateKind::y: return "y";
    case GateKind::z: return "z";
    case GateKind::h: return "h";
    case GateKind::u1q: return "u1q";
  }
  return "?";
}

inline GateKind parse_gate_kind(const std::string& s) {
  for (GateKind k : {GateKind::ry, GateKind::rz, GateKind::phase, GateKind::x, GateKind::y, GateKind::z, GateKind::h, GateKind::u1q})
    if (to_string(k) == s) return k;
  throw ParseError("unknown gate kind '" + s + "'");
}

/// Gate fires when every control qubit holds its `state` bit.
struct Control {
  int qubit;
  int state = 1;
  friend bool operator==(const Control&, const Control&) = default;
};

struct Gate {
  GateKind kind;
  std::vector<double> params;
  int target;
  std::vector<Control> controls;
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();  // u1q only

  static Gate ry(double theta, int target, std::vector<Control> controls = {}) { return {GateKind::ry, {theta}, target, std::move(controls)}; }
  static Gate rz(double theta, int target, std::vector<Control> controls = {}) { return {GateKind::rz, {theta}, target, std::move(controls)}; }
  static Gate phase(double phi, int target, std::vector<Control> controls = {}) { return {GateKind::phase, {phi}, target, std::move(controls)}; }
  static Gate fixed(GateKind kind, int target, std::vector<Control> controls = {}) { return {kind, {}, target, std::move(controls)}; }
  static Gate u1q(const Eigen::Matrix2cd& m, int target, std::vector<Control> controls = {}) {
    Gate g{GateKind::u1q, {}, target, std::move(controls)};
    g.matrix = m;
    return g;
  }

  Eigen::Matrix2cd unitary() const {
    Eigen::Matrix2cd m;
    const cplx i(0.0, 1.0);
    switch (kind) {
      case GateKind::ry: {
        const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
        m << c, -s, s, c;
        break;
      }
      case GateKind::rz: m << std::exp(-i * params[0] / 2.0), 0, 0, std::exp(i * params[0] / 2.0); break;
      case GateKind::phase: m << 1, 0, 0, std::exp(i * params[0]); break;
      case GateKind::x: m << 0, 1, 1, 0; break;
      case GateKind::y: m << 0, -i, i, 0; break;
      case GateKind::z: m << 1, 0, 0, -1; break;
      case GateKind::h: m << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2; break;
      case GateKind::u1q: m = matrix; break;
    }
    return m;
  }

  Gate adjoint() const {
    Gate g = *this;
    switch (kind) {
      case GateKind::ry:
      case GateKind::rz:
      case GateKind::phase: g.params[0] = -params[0]; break;
      case GateKind::u1q: g.matrix = matrix.adjoint(); break;
      default: break;
    }
    return g;
  }

  void validate() const {
    const bool rotation = kind == GateKind::ry || kind == GateKind::rz || kind == GateKind::phase;
    if (params.size() != (rotation ? 1U : 0U)) throw ValidationError(to_string(kind) + ": wrong parameter count");
    for (double p : params)
      if (!std::isfinite(p)) throw ValidationError(to_string(kind) + ": non-finite parameter");
    std::set<int> seen;
    for (const auto& c : controls) {
      if (c.qubit == target) throw ValidationError(to_string(kind) + ": target is also a control");
      if (c.state != 0 && c.state != 1) throw ValidationError(to_string(kind) + ": control state must be 0 or 1");
      if (!seen.insert(c.qubit).second) throw ValidationError(to_string(kind) + ": repeated control");
    }
    if (kind == GateKind::u1q && !(matrix.adjoint() * matrix).isIdentity(1e-12))
      throw ValidationError("u1q matrix is not unitary to 1e-12");
  }
};

struct PostSelect {
  int qubit;
  int bit = 0;
  friend bool operator==(const PostSelect&, const PostSelect&) = default;
};

/// Gate list over work + ancilla qubits. Qubit ids are register positions
/// 0..N-1 (qubit 0 = most significant basis bit); every id is either work or
/// ancilla.
struct Circuit {
  std::vector<int> work_qubits;
  std::vector<int> ancilla_qubits;
  std::vector<Gate> gates;
  std::vector<PostSelect> postselect;

  int qubit_count() const { return static_cast<int>(work_qubits.size() + ancilla_qubits.size()); }

  bool is_ancilla(int q) const { return std::find(ancilla_qubits.begin(), ancilla_qubits.end(), q) != ancilla_qubits.end(); }

  void validate() const {
    const int n = qubit_count();
    std::set<int> ids(work_qubits.begin(), work_qubits.end());
    ids.insert(ancilla_qubits.begin(), ancilla_qubits.end());
    if (static_cast<int>(ids.size()) != n || (n > 0 && (*ids.begin() != 0 || *ids.rbegin() != n - 1)))
      throw ValidationError("qubit ids must be exactly 0..N-1, each work or ancilla once");
    auto declared = [&](int q) { return q >= 0 && q < n; };
    for (const auto& g : gates) {
      g.validate();
      if (!declared(g.target)) throw ValidationError("gate targets undeclared qubit " + std::to_string(g.target));
      for (const auto& c : g.controls)
        if (!declared(c.qubit)) throw ValidationError("gate controls undeclared qubit " + std::to_string(c.qubit));
    }
    std::set<int> ps;
    for (const auto& p : postselect) {
      if (!is_ancilla(p.qubit)) throw ValidationError("postselect references non-ancilla qubit " + std::to_string(p.qubit));
      if (p.bit != 0 && p.bit != 1) throw ValidationError("postselect bit must be 0 or 1");
      if (!ps.insert(p.qubit).second) throw ValidationError("qubit post-selected twice");
    }
  }
};

inline nlohmann::ordered_json to_json(const Gate& g) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(g.kind);
  j["params"] = g.params;
  j["target"] = g.target;
  nlohmann::ordered_json controls = nlohmann::ordered_json::array();
  for (const auto& c : g.controls) controls.push_back({{"q", c.qubit}, {"state", c.state}});
  j["controls"] = std::move(controls);
  if (g.kind == GateKind::u1q) {
    nlohmann::ordered_json m = nlohmann::ordered_json::array();
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m.push_back({g.matrix(r, c).real(), g.matrix(r, c).imag()});
    j["matrix"] = std::move(m);
  }
  return j;
}

inline nlohmann::ordered_json to_json(const Circuit& c) {
  nlohmann::ordered_json qubits = nlohmann::ordered_json::array();
  for (int q = 0; q < c.qubit_count(); ++q) qubits.push_back({{"id", q}, {"role", c.is_ancilla(q) ? "ancilla" : "work"}});
  nlohmann::ordered_json gates = nlohmann::ordered_json::array();
  for (const auto& g : c.gates) gates.push_back(to_json(g));
  nlohmann::ordered_json ps = nlohmann::ordered_json::array();
  for (const auto& p : c.postselect) ps.push_back({{"q", p.qubit}, {"bit", p.bit}});
  return {{"qubits", std::move(qubits)}, {"gates", std::move(gates)}, {"postselect", std::move(ps)}};
}

/// Work and ancilla order follow the order qubits appear in the document.
inline Circuit load_circuit(const nlohmann::ordered_json& j) {
  try {
    Circuit c;
    for (const auto& q : j.at("qubits")) {
      const auto role = q.at("role").get<std::string>();
      const int id = q.at("id").get<int>();
      if (role == "work")
        c.work_qubits.push_back(id);
      else if (role == "ancilla")
        c.ancilla_qubits.push_back(id);
      else
        throw ParseError("unknown qubit role '" + role + "'");
    }
    for (const auto& jg : j.at("gates")) {
      Gate g{parse_gate_kind(jg.at("kind").get<std::string>()), jg.value("params", std::vector<double>{}), jg.at("target").get<int>(), {}};
      for (const auto& jc : jg.value("controls", nlohmann::ordered_json::array())) g.controls.push_back({jc.at("q").get<int>(), jc.value("state", 1)});
      if (g.kind == GateKind::u1q) {
        const auto& m = jg.at("matrix");
        for (int k = 0; k < 4; ++k) g.matrix(k / 2, k % 2) = cplx(m.at(k).at(0).get<double>(), m.at(k).at(1).get<double>());
      }
      c.gates.push_back(std::move(g));
    }
    for (const auto& p : j.value("postselect", nlohmann::ordered_json::array())) c.postselect.push_back({p.at("q").get<int>(), p.at("bit").get<int>()});
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("circuit: ") + ex.what());
  }
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Line-oriented text form. See docs/circuit_text_format.md.
inline std::string emit_text(const Circuit& c) {
  auto name = [&](int q) {
    auto it = std::find(c.work_qubits.begin(), c.work_qubits.end(), q);
    if (it != c.work_qubits.end()) return "q" + std::to_string(it - c.work_qubits.begin());
    it = std::find(c.ancilla_qubits.begin(), c.ancilla_qubits.end(), q);
    return "a" + std::to_string(it - c.ancilla_qubits.begin());
  };
  std::ostringstream out;
  out << "# cqs circuit v1\n";
  out << "work";
  for (int q : c.work_qubits) out << ' ' << name(q);
  out << ";\n";
  if (!c.ancilla_qubits.empty()) {
    out << "ancilla";
    for (int q : c.ancilla_qubits) out << ' ' << name(q);
    out << ";\n";
  }
  for (const auto& g : c.gates) {
    out << std::string(g.controls.size(), 'c') << to_string(g.kind);
    std::vector<double> params = g.params;
    if (g.kind == GateKind::u1q)
      for (int k = 0; k < 4; ++k) {
        params.push_back(g.matrix(k / 2, k % 2).real());
        params.push_back(g.matrix(k / 2, k % 2).imag());
      }
    if (!params.empty()) {
      out << '(';
      for (std::size_t i = 0; i < params.size(); ++i) out << (i ? "," : "") << detail::format_double(params[i]);
      out << ')';
    }
    out << ' ';
    for (const auto& ctl : g.controls) out << (ctl.state == 0 ? "!" : "") << name(ctl.qubit) << ", ";
    out << name(g.target) << ";\n";
  }
  for (const auto& p : c.postselect) out << "postselect " << name(p.qubit) << " -> " << p.bit << ";\n";
  return out.str();
}

}  // namespace cqs
