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
#include "cqs/verify.hpp"
#include "test_util.hpp"

namespace cqs {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(TwoTermAngle, Examples) {
  EXPECT_NEAR(two_term_angle(0.598, 0.402), 1.37, 0.005);
  EXPECT_NEAR(two_term_angle(0.75, 0.25), kPi / 3, 1e-12);
  EXPECT_EQ(two_term_angle(1.0, 0.0), 0.0);
  EXPECT_THROW(two_term_angle(0.0, 0.0), ValidationError);
}

TEST(TwoTermAngle, RoundTripGrid) {
  for (int i = 1; i < 100; ++i) {
    const double theta = kPi * i / 100.0;
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    EXPECT_NEAR(two_term_angle(c * c, s * s), theta, 1e-12);
  }
}

TEST(PrepAngles4, Examples) {
  const double r10 = std::sqrt(10.0);
  const PrepAngles a = prep_angles_4({1 / r10, 2 / r10, 2 / r10, 1 / r10});
  EXPECT_NEAR(a.top, kPi / 2, 1e-12);
  EXPECT_NEAR(a.left, 2.21, 0.005);
  EXPECT_NEAR(a.right, 0.93, 0.005);

  const PrepAngles z = prep_angles_4({1, 0, 0, 0});
  EXPECT_EQ(z.top, 0.0);
  EXPECT_EQ(z.left, 0.0);
  EXPECT_EQ(z.right, 0.0);

  const double h = std::sqrt(2.0) / 2;
  const PrepAngles e = prep_angles_4({0.6 * h, 0.8 * h, 0.8 * h, 0.6 * h});
  EXPECT_NEAR(e.top, kPi / 2, 1e-12);
  EXPECT_NEAR(e.left, 1.85, 0.005);
  EXPECT_NEAR(e.right, 1.29, 0.005);

  EXPECT_THROW(prep_angles_4({1, 1, 0, 0}), ValidationError);
}

TEST(PrepAngles4, EtaBranch) {
  // The eta first-qubit amplitudes: the upper branch (0.632, 0.775) splits at 1.77.
  const double n = std::hypot(0.632, 0.775);
  const PrepAngles a = prep_angles_4({0.632 / n, 0.775 / n, 0.0, 0.0});
  EXPECT_NEAR(a.left, 1.77, 0.005);
}

TEST(PrepAngles4, CircuitPreparesAmplitudes) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<double, 4> c{u(rng), u(rng), u(rng), u(rng)};
    const double n = std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
    for (auto& x : c) x /= n;
    const PrepAngles p = prep_angles_4(c);
    StateVector s(2);
    s.apply(Gate::ry(p.top, 0));
    s.apply(Gate::ry(p.left, 1, {{0, 0}}));
    s.apply(Gate::ry(p.right, 1, {{0, 1}}));
    for (std::uint64_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(s[k] - cplx(c[k])), 0.0, 1e-12);
  }
}

NormalizedFactor factor_of(const SingleQubitExpansion& f) { return normalize_factor(f); }

TEST(CompileFactor, TwoTermBlock) {
  const SingleQubitExpansion f{0.5 + std::exp(cplx(0.0, -16.0 / 3.0)) / 3.0, 0.0, 0.0, -0.5};
  AncillaPool pool(1);
  const Fragment frag = compile_factor(factor_of(f), 0, pool);
  EXPECT_EQ(frag.ancillas, std::vector<int>{1});
  ASSERT_EQ(frag.postselect.size(), 1U);
  EXPECT_EQ(frag.postselect[0].bit, 0);
  EXPECT_NEAR(frag.angles[0].value, 1.3727073172553577, 1e-12);
  EXPECT_EQ(frag.gates.front().kind, GateKind::ry);
  EXPECT_EQ(frag.gates.back().kind, GateKind::ry);
  EXPECT_EQ(frag.gates.back().params[0], -frag.gates.front().params[0]);

  Circuit c{{0}, {1}, frag.gates, frag.postselect};
  const Matrix eff = effective_operator(c).matrix;
  EXPECT_LE(max_abs_diff(eff, to_matrix(f) / std::abs(f[0]) / (1.0 + 0.5 / std::abs(f[0]))), 1e-12);
}

TEST(CompileFactor, IdentityIsEmpty) {
  AncillaPool pool(1);
  const Fragment frag = compile_factor(factor_of({1.0, 0.0, 0.0, 0.0}), 0, pool);
  EXPECT_TRUE(frag.gates.empty());
  EXPECT_TRUE(frag.ancillas.empty());
  EXPECT_TRUE(pool.taken().empty());
}

TEST(CompileFactor, FourTermBlock) {
  const SingleQubitExpansion f{0.5, 1.0, cplx(0.0, 1.0), 0.5};
  AncillaPool pool(1);
  const Fragment frag = compile_factor(factor_of(f), 0, pool);
  EXPECT_EQ(frag.ancillas, (std::vector<int>{1, 2}));
  EXPECT_EQ(frag.gain, 0.5);
  std::map<std::string, double> angles;
  for (const auto& a : frag.angles) angles[a.name] = a.value;
  EXPECT_NEAR(angles.at("q0.top"), kPi / 2, 1e-12);
  EXPECT_NEAR(angles.at("q0.left"), 2.214297435588181, 1e-12);
  EXPECT_NEAR(angles.at("q0.right"), 0.9272952180016123, 1e-12);
  EXPECT_EQ(frag.gates[frag.gates.size() - 1].kind, GateKind::h);
  EXPECT_EQ(frag.gates[frag.gates.size() - 2].kind, GateKind::h);

  Circuit c{{0}, frag.ancillas, frag.gates, frag.postselect};
  c.ancilla_qubits = {1, 2};
  const Matrix eff = effective_operator(c).matrix;
  // (1/2) * sum_k c_k U_k with c the L2-normalized magnitudes.
  EXPECT_LE(max_abs_diff(eff, 0.5 * to_matrix(f) / std::sqrt(2.5)), 1e-12);
}

TEST(CompileFactor, ThreeTermBlockUsesTwoAncillas) {
  const SingleQubitExpansion f{0.3, 0.0, 0.4, cplx(0.0, -1.2)};
  AncillaPool pool(1);
  const Fragment frag = compile_factor(factor_of(f), 0, pool);
  EXPECT_EQ(frag.ancillas.size(), 2U);
  Circuit c{{0}, frag.ancillas, frag.gates, frag.postselect};
  EXPECT_LE(compare_up_to_scale(effective_operator(c).matrix, to_matrix(f)).residual, 1e-12);
}

TEST(CompilePaper, MuAngles) {
  const Compiled c = compile_paper("mu", su3_spec());
  EXPECT_EQ(c.circuit.work_qubits.size(), 4U);
  EXPECT_EQ(c.report.ancilla_count, 6);
  EXPECT_NEAR(*c.report.angle("theta1"), 1.3727073172553577, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta2"), kPi / 3, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta3"), 2.214297435588181, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta4"), 0.9272952180016123, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta5"), 0.37245050035707833, 1e-12);
  EXPECT_NEAR(std::abs(*c.report.angle("theta5")), 0.372, 0.005);
}

TEST(CompilePaper, DeltaAngles) {
  const Compiled c = compile_paper("delta", su3_spec());
  EXPECT_EQ(c.circuit.work_qubits.size(), 4U);
  EXPECT_NEAR(*c.report.angle("theta1"), 1.3181160716528177, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta1"), 1.32, 0.005);
  EXPECT_NEAR(*c.report.angle("theta2"), kPi / 3, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta3"), 2.21, 0.005);
  EXPECT_NEAR(*c.report.angle("theta4"), 0.93, 0.005);
  EXPECT_FALSE(c.report.angle("theta5").has_value());
}

TEST(CompilePaper, EtaAngles) {
  const Compiled c = compile_paper("eta", su3_spec());
  EXPECT_EQ(c.circuit.work_qubits.size(), 2U);
  EXPECT_NEAR(*c.report.angle("theta1"), 1.7718210264424514, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta2"), 1.3697716271473417, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta3"), 2.21, 0.005);
  EXPECT_NEAR(*c.report.angle("theta4"), 0.93, 0.005);
  EXPECT_NEAR(*c.report.angle("theta5"), 0.9498519738462534, 1e-12);
  // Printed as 16/3; the computed phase is its negative modulo 2 pi.
  EXPECT_NEAR(std::abs(wrap_angle(*c.report.angle("theta5"))), std::abs(wrap_angle(16.0 / 3.0)), 1e-12);
  EXPECT_NEAR(*c.report.angle("theta6"), 0.726565689277032, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta7"), -0.8442306375178645, 1e-12);
}

TEST(CompilePaper, EpsilonAngles) {
  const Compiled c = compile_paper("eps", su3_spec());
  EXPECT_EQ(c.circuit.work_qubits.size(), 2U);
  EXPECT_NEAR(*c.report.angle("theta1"), 1.8545904360032246, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta2"), 1.2870022175865685, 1e-12);
  EXPECT_NEAR(*c.report.angle("theta3"), 2.21, 0.005);
  EXPECT_NEAR(*c.report.angle("theta4"), 0.93, 0.005);
}

TEST(CompilePaper, RealizesFactoredForm) {
  const auto s = su3_spec();
  for (Generator g : paper_operators()) {
    const Compiled c = compile_paper(g, s);
    const Matrix form = paper_factored_form(g, s).expand();
    const Matrix eff = effective_operator(c.circuit).matrix;
    const ScaleFit fit = compare_up_to_scale(eff, form);
    EXPECT_LE(fit.residual, 1e-10) << to_string(g);
    // eff = form / nominal_scale
    EXPECT_LE(std::abs(fit.scale * c.report.nominal_scale - 1.0), 1e-10) << to_string(g);
  }
}

TEST(CompilePaper, FreshAncillasPerFactor) {
  const Compiled c = compile_paper("mu", su3_spec());
  EXPECT_EQ(c.circuit.ancilla_qubits, (std::vector<int>{4, 5, 6, 7, 8, 9}));
  EXPECT_EQ(c.circuit.postselect.size(), 6U);
}

TEST(CompilePaper, RejectsCylinder) {
  EXPECT_THROW(compile_paper("cylinder", su3_spec()), ValidationError);
  EXPECT_THROW(compile_paper("foo", su3_spec()), ParseError);
}

TEST(CompileExact, SingleX) {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const Compiled c = compile_exact(DenseOperator::square(x));
  EXPECT_EQ(c.report.ancilla_count, 0);
  ASSERT_EQ(c.circuit.gates.size(), 1U);
  EXPECT_EQ(c.circuit.gates[0].kind, GateKind::x);
  EXPECT_EQ(c.report.nominal_scale, cplx(1.0));
}

TEST(CompileExact, Projector) {
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  const Compiled c = compile_exact(DenseOperator::square(p));
  EXPECT_EQ(c.report.ancilla_count, 1);
  EXPECT_NEAR(c.report.nominal_scale.real(), 1.0, 1e-15);
  EXPECT_NEAR(run(c.circuit, Bitstring("0")).success_probability, 1.0, 1e-12);
  const RunResult one = run(c.circuit, Bitstring("1"));
  EXPECT_NEAR(one.success_probability, 0.0, 1e-12);
  EXPECT_LE(one.work_vector.norm(), 1e-12);
}

TEST(CompileExact, Mu) {
  const DenseOperator mu = build_mu(su3_spec());
  const Compiled c = compile_exact(mu);
  const int k = c.report.term_count;
  int m = 0;
  while ((1 << m) < k) ++m;
  EXPECT_EQ(c.report.ancilla_count, m);
  EXPECT_EQ(c.circuit.work_qubits.size(), 4U);
  const ScaleFit fit = compare_up_to_scale(effective_operator(c.circuit).matrix, mu.matrix());
  EXPECT_LE(fit.residual, 1e-10);
  EXPECT_NEAR(fit.scale.real(), 0.6, 1e-10);
}

TEST(CompileExact, RandomOperatorsMatchOverScale) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const Matrix m = testing::random_operator(rng, n);
    const Compiled c = compile_exact(DenseOperator::square(m));
    const Matrix eff = effective_operator(c.circuit).matrix;
    EXPECT_LE(max_abs_diff(eff, m / c.report.nominal_scale), 1e-10);
  }
}

TEST(CompileExact, RejectsZeroAndOversize) {
  EXPECT_THROW(compile_exact(DenseOperator::square(Matrix::Zero(4, 4))), ValidationError);
  EXPECT_THROW(compile_exact(DenseOperator::square(Matrix::Identity(512, 512))), ShapeError);
}

TEST(CircuitJson, RoundTripAndText) {
  const Compiled c = compile_paper("mu", su3_spec());
  const Circuit back = load_circuit(to_json(c.circuit));
  EXPECT_EQ(to_json(back).dump(), to_json(c.circuit).dump());
  EXPECT_EQ(emit_text(back), emit_text(c.circuit));
  const std::string text = emit_text(c.circuit);
  EXPECT_NE(text.find("work q0 q1 q2 q3;"), std::string::npos);
  EXPECT_NE(text.find("ancilla a0 a1 a2 a3 a4 a5;"), std::string::npos);
  EXPECT_NE(text.find("postselect a0 -> 0;"), std::string::npos);
  EXPECT_NE(text.find("cry("), std::string::npos);
}

TEST(CircuitJson, RejectsBadCircuits) {
  EXPECT_THROW(load_circuit(nlohmann::ordered_json::parse(R"({"qubits":[{"id":0,"role":"work"}],"gates":[{"kind":"x","params":[],"target":3,"controls":[]}],"postselect":[]})")), Error);
  EXPECT_THROW(load_circuit(nlohmann::ordered_json::parse(R"({"qubits":[{"id":0,"role":"work"}],"gates":[],"postselect":[{"q":0,"bit":0}]})")), Error);
  EXPECT_THROW(load_circuit(nlohmann::ordered_json::parse(R"({"qubits":[{"id":0,"role":"work"}],"gates":[{"kind":"ry","params":[],"target":0,"controls":[]}],"postselect":[]})")), Error);
  EXPECT_THROW(Gate::fixed(GateKind::x, 0, {{0, 1}}).validate(), ValidationError);
}

}  // namespace
}  // namespace cqs
