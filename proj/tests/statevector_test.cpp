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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "cqs/duality_compiler.hpp"
#include "cqs/statevector.hpp"
#include "test_util.hpp"

namespace cqs {
namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(std::mt19937_64& rng, int n) {
  const Matrix v = testing::random_matrix(rng, Eigen::Index{1} << n, 1).normalized();
  return StateVector(n, std::vector<cplx>(v.data(), v.data() + v.size()));
}

std::vector<Gate> every_kind(int target, std::vector<Control> ctl) {
  Eigen::Matrix2cd u;
  u << cplx(0.6, 0.0), cplx(0.0, 0.8), cplx(0.0, 0.8), cplx(0.6, 0.0);
  return {Gate::ry(0.7, target, ctl), Gate::rz(-1.1, target, ctl), Gate::phase(2.3, target, ctl),
          Gate::fixed(GateKind::x, target, ctl), Gate::fixed(GateKind::y, target, ctl),
          Gate::fixed(GateKind::z, target, ctl), Gate::fixed(GateKind::h, target, ctl), Gate::u1q(u, target, ctl)};
}

TEST(ApplyGate, Examples) {
  const StateVector a = apply_gate(StateVector(1), Gate::ry(kPi, 0));
  EXPECT_NEAR(std::abs(a[0]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a[1] - 1.0), 0.0, 1e-12);

  const StateVector h = apply_gate(StateVector(1), Gate::fixed(GateKind::h, 0));
  EXPECT_NEAR(h[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(h[1].real(), 1 / std::sqrt(2.0), 1e-15);

  const StateVector r = apply_gate(StateVector(1), Gate::ry(1.234, 0));
  EXPECT_NEAR(std::abs(r[0] - std::cos(0.617)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r[1] - std::sin(0.617)), 0.0, 1e-15);
}

TEST(ApplyGate, BigEndianQubitOrder) {
  StateVector s(3);
  s.apply(Gate::fixed(GateKind::x, 0));
  EXPECT_EQ(s[0b100], cplx(1.0));
  s.apply(Gate::fixed(GateKind::x, 2, {{0, 1}}));
  EXPECT_EQ(s[0b101], cplx(1.0));
  s.apply(Gate::fixed(GateKind::x, 1, {{2, 0}}));
  EXPECT_EQ(s[0b101], cplx(1.0));
}

TEST(ApplyGate, InvalidQubit) {
  StateVector s(2);
  EXPECT_THROW(s.apply(Gate::fixed(GateKind::x, 2)), ShapeError);
  EXPECT_THROW(s.apply(Gate::fixed(GateKind::x, 0, {{5, 1}})), ShapeError);
}

TEST(ApplyGate, NormPreservedAndAdjointUndoes) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector start = random_state(rng, 4);
    for (const auto& ctl : std::vector<std::vector<Control>>{{}, {{1, 1}}, {{1, 0}, {3, 1}}})
      for (const Gate& g : every_kind(2, ctl)) {
        const StateVector once = apply_gate(start, g);
        EXPECT_NEAR(once.norm(), 1.0, 1e-12) << to_string(g.kind);
        const StateVector back = apply_gate(once, g.adjoint());
        for (std::uint64_t i = 0; i < 16; ++i) EXPECT_NEAR(std::abs(back[i] - start[i]), 0.0, 1e-12) << to_string(g.kind);
      }
  }
}

TEST(ApplyGate, LongSequenceKeepsNorm) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> q(0, 5), kind(0, 7);
  StateVector s(6);
  for (int i = 0; i < 500; ++i) {
    const int t = q(rng);
    int c = q(rng);
    std::vector<Control> ctl;
    if (c != t) ctl.push_back({c, i % 2});
    s.apply(every_kind(t, ctl)[static_cast<std::size_t>(kind(rng))]);
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Run, EmptyCircuit) {
  const Circuit c{{0, 1}, {}, {}, {}};
  const RunResult r = run(c, Bitstring("01"));
  EXPECT_EQ(r.work_vector(1), cplx(1.0));
  EXPECT_EQ(r.success_probability, 1.0);
}

TEST(Run, TwoTermIdentityFragment) {
  for (double theta : {0.3, 1.37, 2.9}) {
    const Circuit c{{0, 1}, {2}, {Gate::ry(theta, 2), Gate::ry(-theta, 2)}, {{2, 0}}};
    const RunResult r = run(c, Bitstring("10"));
    EXPECT_NEAR(std::abs(r.work_vector(2) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(r.success_probability, 1.0, 1e-12);
  }
}

TEST(Run, UnnormalizedPostSelection) {
  const Circuit c{{0}, {1}, {Gate::ry(kPi / 2, 1)}, {{1, 0}}};
  const RunResult r = run(c, Bitstring("0"));
  EXPECT_NEAR(r.work_vector(0).real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(r.success_probability, 0.5, 1e-15);
}

TEST(Run, ShapeChecks) {
  const Circuit c{{0, 1}, {}, {}, {}};
  EXPECT_THROW(run(c, Bitstring("1")), ShapeError);
  const Circuit loose{{0}, {1}, {}, {}};
  EXPECT_THROW(run(loose, Bitstring("0")), ValidationError);
}

TEST(EffectiveOperator, SingleX) {
  const Circuit c{{0}, {}, {Gate::fixed(GateKind::x, 0)}, {}};
  const EffectiveOperator e = effective_operator(c);
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  EXPECT_EQ(e.matrix, x);
  EXPECT_EQ(e.success_probabilities, (std::vector<double>{1.0, 1.0}));
}

TEST(EffectiveOperator, LinearityOnSuperpositions) {
  std::mt19937_64 rng(33);
  const Compiled c = compile_exact(DenseOperator::square(testing::random_operator(rng, 2)));
  const Matrix e = effective_operator(c.circuit).matrix;
  const int total = c.circuit.qubit_count();
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix in = testing::random_matrix(rng, 4, 1).normalized();
    std::vector<cplx> amps(std::size_t{1} << total, 0.0);
    const int m = total - 2;
    for (std::size_t w = 0; w < 4; ++w) amps[w << m] = in(static_cast<Eigen::Index>(w), 0);
    StateVector s(total, amps);
    for (const Gate& g : c.circuit.gates) s.apply(g);
    for (const auto& p : c.circuit.postselect) s.project(p.qubit, p.bit);
    for (std::size_t w = 0; w < 4; ++w)
      EXPECT_NEAR(std::abs(s[w << m] - (e * in)(static_cast<Eigen::Index>(w), 0)), 0.0, 1e-12);
  }
}

TEST(EffectiveOperator, ProbabilitiesInUnitInterval) {
  const Compiled c = compile_paper("mu", su3_spec());
  const EffectiveOperator e = effective_operator(c.circuit);
  ASSERT_EQ(e.success_probabilities.size(), 16U);
  for (double p : e.success_probabilities) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(Run, Deterministic) {
  const Compiled c = compile_paper("eta", su3_spec());
  const RunResult a = run(c.circuit, Bitstring("00"));
  const RunResult b = run(c.circuit, Bitstring("00"));
  EXPECT_EQ(a.work_vector, b.work_vector);
  EXPECT_EQ(a.success_probability, b.success_probability);
}

TEST(CupCap, CupThenCapIsIdentity) {
  std::mt19937_64 rng(34);
  const StateVector payload = random_state(rng, 2);
  std::vector<cplx> amps(16, 0.0);
  for (std::uint64_t i = 0; i < 4; ++i) amps[i << 2] = payload[i];
  const CupResult up = cup(StateVector(4, amps), 2, 3);
  EXPECT_NEAR(up.scale, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(up.state[0b0000] - payload[0] / std::sqrt(2.0)), 0.0, 1e-15);
  const CapResult down = cap(up.state, 2, 3);
  EXPECT_NEAR(down.probability, 1.0, 1e-12);
  for (std::uint64_t i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(down.state[i << 2] - payload[i]), 0.0, 1e-12);
}

TEST(CupCap, CapOnOrthogonalStates) {
  EXPECT_NEAR(cap(StateVector(2, 0b01), 0, 1).probability, 0.0, 1e-15);
  CupResult up = cup(StateVector(2), 0, 1);
  up.state.apply(Gate::fixed(GateKind::x, 0));
  EXPECT_NEAR(cap(up.state, 0, 1).probability, 0.0, 1e-15);
}

TEST(CupCap, CupNeedsFreshQubits) {
  EXPECT_THROW(cup(StateVector(2, 0b10), 0, 1), ValidationError);
  EXPECT_THROW(cup(StateVector(2), 1, 1), ValidationError);
}

TEST(StateVector, Limits) {
  EXPECT_THROW(StateVector(25), ShapeError);
  EXPECT_THROW(StateVector(2, 4), ShapeError);
  EXPECT_THROW(StateVector(2, std::vector<cplx>(3)), ShapeError);
}

}  // namespace
}  // namespace cqs
