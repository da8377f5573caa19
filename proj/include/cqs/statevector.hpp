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
#include <cstdint>
#include <utility>
#include <vector>

#include "cqs/circuit.hpp"
#include "cqs/dense_operator.hpp"
#include "cqs/encoding.hpp"
#include "cqs/errors.hpp"

namespace cqs {

inline constexpr int kMaxStateQubits = 24;

/// Dense amplitude vector; qubit 0 is the most significant bit of the index.
class StateVector {
 public:
  explicit StateVector(int qubits, std::uint64_t basis_index = 0) : n_(qubits) {
    if (n_ < 0 || n_ > kMaxStateQubits) throw ShapeError("state vector supports 0.." + std::to_string(kMaxStateQubits) + " qubits");
    amps_.assign(std::size_t{1} << n_, cplx(0.0, 0.0));
    if (basis_index >= amps_.size()) throw ShapeError("basis index out of range");
    amps_[basis_index] = 1.0;
  }

  StateVector(int qubits, std::vector<cplx> amplitudes) : n_(qubits), amps_(std::move(amplitudes)) {
    if (n_ < 0 || n_ > kMaxStateQubits || amps_.size() != (std::size_t{1} << n_)) throw ShapeError("amplitude count must be 2^qubits");
  }

  int qubit_count() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx operator[](std::uint64_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  std::uint64_t bit(int qubit) const { return std::uint64_t{1} << (n_ - 1 - qubit); }

  /// Applies the gate's 2x2 unitary to every amplitude pair whose control
  /// bits match. Each output amplitude depends on exactly one pair, so the
  /// update order never changes the result.
  void apply(const Gate& g) {
    check_qubit(g.target);
    std::uint64_t mask = 0, want = 0;
    for (const auto& c : g.controls) {
      check_qubit(c.qubit);
      mask |= bit(c.qubit);
      if (c.state) want |= bit(c.qubit);
    }
    g.validate();
    const Eigen::Matrix2cd u = g.unitary();
    const std::uint64_t t = bit(g.target);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & t) || (i & mask) != want) continue;
      const cplx a0 = amps_[i], a1 = amps_[i | t];
      amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
      amps_[i | t] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }

  /// Zeroes every amplitude whose `qubit` bit differs from `value`; no renormalization.
  void project(int qubit, int value) {
    check_qubit(qubit);
    const std::uint64_t b = bit(qubit);
    for (std::uint64_t i = 0; i < amps_.size(); ++i)
      if (((i & b) != 0) != (value != 0)) amps_[i] = 0.0;
  }

 private:
  void check_qubit(int q) const {
    if (q < 0 || q >= n_) throw ShapeError("invalid qubit id " + std::to_string(q));
  }

  int n_;
  std::vector<cplx> amps_;
};

inline StateVector apply_gate(StateVector state, const Gate& g) {
  state.apply(g);
  return state;
}

struct RunResult {
  Vector work_vector;  // unnormalized, indexed by the work bitstring
  double success_probability = 0.0;
};

/// Runs `circuit` on |input> (work) (x) |0...0> (ancillas), projects ancillas
/// onto the post-selection mask without renormalizing and returns the
/// remaining work-register vector.
inline RunResult run(const Circuit& circuit, const Bitstring& input) {
  circuit.validate();
  if (input.size() != static_cast<int>(circuit.work_qubits.size())) throw ShapeError("input length differs from work qubit count");
  for (int a : circuit.ancilla_qubits) {
    bool selected = false;
    for (const auto& p : circuit.postselect) selected = selected || p.qubit == a;
    if (!selected) throw ValidationError("ancilla " + std::to_string(a) + " is not post-selected");
  }
  const int n = circuit.qubit_count();
  StateVector state(n);
  std::uint64_t start = 0;
  for (std::size_t k = 0; k < circuit.work_qubits.size(); ++k)
    if (input.str()[k] == '1') start |= state.bit(circuit.work_qubits[k]);
  state = StateVector(n, start);
  for (const auto& g : circuit.gates) state.apply(g);

  std::uint64_t ancilla_want = 0;
  for (const auto& p : circuit.postselect)
    if (p.bit) ancilla_want |= state.bit(p.qubit);
  const int w = static_cast<int>(circuit.work_qubits.size());
  RunResult out;
  out.work_vector = Vector::Zero(Eigen::Index{1} << w);
  for (Eigen::Index j = 0; j < out.work_vector.size(); ++j) {
    std::uint64_t index = ancilla_want;
    for (int k = 0; k < w; ++k)
      if ((j >> (w - 1 - k)) & 1) index |= state.bit(circuit.work_qubits[static_cast<std::size_t>(k)]);
    out.work_vector(j) = state[index];
  }
  out.success_probability = out.work_vector.squaredNorm();
  return out;
}

struct EffectiveOperator {
  Matrix matrix;
  std::vector<double> success_probabilities;  // indexed by work basis input
};

/// Column j = run(circuit, j).work_vector.
inline EffectiveOperator effective_operator(const Circuit& circuit) {
  const int w = static_cast<int>(circuit.work_qubits.size());
  if (w > 12) throw ShapeError("effective_operator supports at most 12 work qubits");
  const Eigen::Index dim = Eigen::Index{1} << w;
  EffectiveOperator out{Matrix::Zero(dim, dim), {}};
  for (Eigen::Index j = 0; j < dim; ++j) {
    RunResult r = run(circuit, Bitstring::from_index(static_cast<std::uint64_t>(j), w));
    out.matrix.col(j) = r.work_vector;
    out.success_probabilities.push_back(r.success_probability);
  }
  return out;
}

struct CupResult {
  StateVector state;
  double scale;  // sum_k |kk> = scale * (normalized Bell pair)
};

/// Prepares sum_k |kk> on two fresh |00> qubits, stored as the normalized
/// Bell state with the sqrt(2) kept in `scale`.
inline CupResult cup(StateVector state, int q1, int q2) {
  if (q1 == q2) throw ValidationError("cup needs two distinct qubits");
  const std::uint64_t b = state.bit(q1) | state.bit(q2);
  for (std::uint64_t i = 0; i < state.amplitudes().size(); ++i)
    if ((i & b) && state[i] != cplx(0.0, 0.0)) throw ValidationError("cup targets must be fresh |00> qubits");
  state.apply(Gate::fixed(GateKind::h, q1));
  state.apply(Gate::fixed(GateKind::x, q2, {{q1, 1}}));
  return {std::move(state), std::sqrt(2.0)};
}

struct CapResult {
  StateVector state;   // unnormalized, pair reset to |00>
  double probability;  // squared overlap with the normalized Bell pair
};

/// Projects (q1, q2) onto the Bell pair (the normalized sum_k <kk|).
inline CapResult cap(StateVector state, int q1, int q2) {
  if (q1 == q2) throw ValidationError("cap needs two distinct qubits");
  state.apply(Gate::fixed(GateKind::x, q2, {{q1, 1}}));
  state.apply(Gate::fixed(GateKind::h, q1));
  state.project(q1, 0);
  state.project(q2, 0);
  const double n = state.norm();
  return {std::move(state), n * n};
}

}  // namespace cqs
