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
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cqs/dense_operator.hpp"
#include "cqs/errors.hpp"
#include "json.hpp"

namespace cqs {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::array<Pauli, 4> kPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

inline char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli parse_pauli(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ParseError(std::string("not a Pauli letter: '") + c + "'");
  }
}

inline Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// Tensor product of single-qubit Paulis; letter 0 acts on qubit 0 (the most
/// significant bit of the basis index).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {}
  static PauliString parse(const std::string& text) {
    std::vector<Pauli> letters;
    for (char c : text) letters.push_back(parse_pauli(c));
    return PauliString(std::move(letters));
  }

  int size() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](int q) const { return letters_[static_cast<std::size_t>(q)]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  std::string str() const {
    std::string s;
    for (Pauli p : letters_) s += to_char(p);
    return s;
  }

  Matrix matrix() const {
    Matrix m = Matrix::Identity(1, 1);
    for (Pauli p : letters_) m = kron(m, pauli_matrix(p));
    return m;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> letters_;
};

struct PauliTerm {
  cplx coefficient;
  PauliString string;
};

inline constexpr double kPauliDropTolerance = 1e-14;

namespace detail {

inline void check_square_power_of_two(const Matrix& m, int& qubits) {
  if (m.rows() != m.cols()) throw ShapeError("Pauli expansion needs a square operator");
  qubits = 0;
  while ((Eigen::Index{1} << qubits) < m.rows()) ++qubits;
  if ((Eigen::Index{1} << qubits) != m.rows()) throw ShapeError("Pauli expansion needs a 2^n x 2^n operator");
}

}  // namespace detail

/// Coefficients tr(P^dagger M) / 2^n for every Pauli string with magnitude
/// above kPauliDropTolerance, in lexicographic IXYZ order (qubit 0 slowest).
inline std::vector<PauliTerm> pauli_expand(const Matrix& m) {
  int n = 0;
  detail::check_square_power_of_two(m, n);
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t strings = std::uint64_t{1} << (2 * n);
  std::vector<PauliTerm> terms;
  for (std::uint64_t k = 0; k < strings; ++k) {
    std::vector<Pauli> letters(static_cast<std::size_t>(n));
    std::uint64_t xmask = 0, phase_mask = 0;
    int n_y = 0;
    for (int q = 0; q < n; ++q) {
      const auto p = static_cast<Pauli>((k >> (2 * (n - 1 - q))) & 3U);
      letters[static_cast<std::size_t>(q)] = p;
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      if (p == Pauli::X || p == Pauli::Y) xmask |= bit;
      if (p == Pauli::Y || p == Pauli::Z) phase_mask |= bit;
      if (p == Pauli::Y) ++n_y;
    }
    // Row i of P has its single nonzero at column i ^ xmask, equal to
    // (-i)^{n_y} (-1)^{popcount(i & phase_mask)}.
    static const std::array<cplx, 4> minus_i_pow{cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
    const cplx base = minus_i_pow[static_cast<std::size_t>(n_y % 4)];
    cplx acc(0.0, 0.0);
    for (std::uint64_t i = 0; i < dim; ++i) {
      const cplx p = (std::popcount(i & phase_mask) % 2) ? -base : base;
      acc += std::conj(p) * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ xmask));
    }
    acc /= static_cast<double>(dim);
    if (std::abs(acc) > kPauliDropTolerance) terms.push_back({acc, PauliString(std::move(letters))});
  }
  return terms;
}

inline std::vector<PauliTerm> pauli_expand(const DenseOperator& op) { return pauli_expand(op.matrix()); }

inline Matrix reconstruct(std::span<const PauliTerm> terms, int qubits) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    if (t.string.size() != qubits) throw ShapeError("Pauli term length does not match qubit count");
    m += t.coefficient * t.string.matrix();
  }
  return m;
}

/// Coefficients of one qubit's operator on {I, X, Y, Z}.
using SingleQubitExpansion = std::array<cplx, 4>;

inline Eigen::Matrix2cd to_matrix(const SingleQubitExpansion& f) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (Pauli p : kPaulis) m += f[static_cast<std::size_t>(p)] * pauli_matrix(p);
  return m;
}

inline SingleQubitExpansion expand_single(const Eigen::Matrix2cd& m) {
  SingleQubitExpansion f{};
  for (Pauli p : kPaulis) f[static_cast<std::size_t>(p)] = (pauli_matrix(p).adjoint() * m).trace() / 2.0;
  return f;
}

enum class NormRule { l1, l2 };

/// One surviving Pauli letter of a normalized factor: coefficient =
/// magnitude * exp(i phase), magnitude > 0.
struct NormalizedTerm {
  Pauli letter;
  double magnitude;
  double phase;
};

/// A factor rescaled so its magnitudes sum to 1 (L1, at most two terms) or
/// their squares do (L2, three or four terms). original = scale * expansion().
struct NormalizedFactor {
  std::vector<NormalizedTerm> terms;
  NormRule rule = NormRule::l1;
  cplx scale{1.0, 0.0};

  SingleQubitExpansion expansion() const {
    SingleQubitExpansion f{};
    for (const auto& t : terms) f[static_cast<std::size_t>(t.letter)] = std::polar(t.magnitude, t.phase);
    return f;
  }
};

inline NormalizedFactor normalize_factor(const SingleQubitExpansion& factor) {
  NormalizedFactor out;
  double l1 = 0.0, l2sq = 0.0;
  for (Pauli p : kPaulis) {
    const cplx c = factor[static_cast<std::size_t>(p)];
    if (std::abs(c) <= kPauliDropTolerance) continue;
    out.terms.push_back({p, std::abs(c), std::arg(c)});
    l1 += std::abs(c);
    l2sq += std::norm(c);
  }
  if (out.terms.empty()) throw ValidationError("cannot normalize a zero factor");
  out.rule = out.terms.size() <= 2 ? NormRule::l1 : NormRule::l2;
  const double norm = out.rule == NormRule::l1 ? l1 : std::sqrt(l2sq);
  for (auto& t : out.terms) t.magnitude /= norm;
  out.scale = norm;
  return out;
}

/// scale * (factors[0] (x) factors[1] (x) ...), factor 0 on qubit 0.
struct FactoredOperator {
  std::vector<SingleQubitExpansion> factors;
  cplx scale{1.0, 0.0};

  int qubits() const { return static_cast<int>(factors.size()); }

  Matrix expand() const {
    Matrix m = Matrix::Identity(1, 1);
    for (const auto& f : factors) m = kron(m, to_matrix(f));
    return scale * m;
  }
};

/// ||expand(claimed) - exact||_F / ||exact||_F.
inline double factorization_residual(const FactoredOperator& claimed, const DenseOperator& exact) {
  const Matrix e = claimed.expand();
  if (e.rows() != exact.rows() || e.cols() != exact.cols())
    throw ShapeError("factorization_residual: qubit counts differ");
  const double denom = exact.matrix().norm();
  if (denom == 0.0) throw ValidationError("factorization_residual: exact operator is zero");
  return (e - exact.matrix()).norm() / denom;
}

namespace detail {

/// Rearranges M (over `qubits` qubits) so that row index = (i_k, j_k) of
/// qubit `k` and column index = (i_rest, j_rest); rank-1 terms of the result
/// are product operators A_k (x) B_rest.
inline Matrix realign(const Matrix& m, int qubits, int k) {
  const Eigen::Index rest_dim = Eigen::Index{1} << (qubits - 1);
  Matrix r(4, rest_dim * rest_dim);
  const int shift = qubits - 1 - k;
  auto split = [shift](Eigen::Index idx, Eigen::Index& bit, Eigen::Index& rest) {
    bit = (idx >> shift) & 1;
    const Eigen::Index high = idx >> (shift + 1);
    const Eigen::Index low = idx & ((Eigen::Index{1} << shift) - 1);
    rest = (high << shift) | low;
  };
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Eigen::Index bi, ri;
    split(i, bi, ri);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Eigen::Index bj, rj;
      split(j, bj, rj);
      r(bi * 2 + bj, ri * rest_dim + rj) = m(i, j);
    }
  }
  return r;
}

struct SingularTriple {
  double sigma = 0.0;
  Vector u;
  Vector v;
};

/// Dominant singular triple by power iteration on R R^dagger: at most 200
/// sweeps or relative sigma change below 1e-13. Starts from all-ones; falls
/// back to the largest row of R if that start is annihilated.
inline SingularTriple dominant_singular(const Matrix& r) {
  SingularTriple t;
  Vector v = Vector::Ones(r.cols()).normalized();
  Vector u = r * v;
  if (u.norm() <= 1e-300 + 1e-14 * r.norm()) {
    Eigen::Index best = 0;
    r.rowwise().norm().maxCoeff(&best);
    v = r.row(best).adjoint();
    if (v.norm() == 0.0) return {0.0, Vector::Unit(r.rows(), 0), Vector::Unit(r.cols(), 0)};
    v.normalize();
    u = r * v;
  }
  double sigma_prev = 0.0;
  for (int it = 0; it < 200; ++it) {
    u.normalize();
    v = r.adjoint() * u;
    const double sigma = v.norm();
    v /= sigma;
    u = r * v;
    t.sigma = sigma;
    if (it > 0 && std::abs(sigma - sigma_prev) <= 1e-13 * sigma) break;
    sigma_prev = sigma;
  }
  t.u = u.normalized();
  t.v = v;
  t.sigma = (t.u.adjoint() * r * t.v)(0, 0).real();
  return t;
}

}  // namespace detail

/// Greedy product approximation: peel qubits in `order` (default 0..n-1),
/// each time keeping the dominant rank-1 term of the realigned operator.
inline FactoredOperator best_product_approximation(const DenseOperator& op, std::span<const int> order = {}) {
  if (!op.is_square()) throw ShapeError("best_product_approximation needs a square operator");
  int n = 0;
  detail::check_square_power_of_two(op.matrix(), n);
  std::vector<int> seq(order.begin(), order.end());
  if (seq.empty()) {
    seq.resize(static_cast<std::size_t>(n));
    std::iota(seq.begin(), seq.end(), 0);
  }
  {
    std::vector<int> sorted = seq;
    std::sort(sorted.begin(), sorted.end());
    for (int q = 0; q < n; ++q)
      if (static_cast<int>(sorted.size()) != n || sorted[static_cast<std::size_t>(q)] != q)
        throw ValidationError("peel order must be a permutation of the qubits");
  }

  FactoredOperator out;
  out.factors.assign(static_cast<std::size_t>(n), SingleQubitExpansion{});
  std::vector<int> remaining(static_cast<std::size_t>(n));
  std::iota(remaining.begin(), remaining.end(), 0);
  Matrix m = op.matrix();
  cplx scale(1.0, 0.0);
  for (std::size_t step = 0; step + 1 < seq.size(); ++step) {
    const int qubit = seq[step];
    const auto pos = static_cast<int>(std::find(remaining.begin(), remaining.end(), qubit) - remaining.begin());
    const int width = static_cast<int>(remaining.size());
    const detail::SingularTriple t = detail::dominant_singular(detail::realign(m, width, pos));
    Eigen::Matrix2cd a;
    a << t.u(0), t.u(1), t.u(2), t.u(3);
    out.factors[static_cast<std::size_t>(qubit)] = expand_single(a);
    const Eigen::Index rest_dim = Eigen::Index{1} << (width - 1);
    Matrix b(rest_dim, rest_dim);
    for (Eigen::Index i = 0; i < rest_dim; ++i)
      for (Eigen::Index j = 0; j < rest_dim; ++j) b(i, j) = std::conj(t.v(i * rest_dim + j));
    scale *= t.sigma;
    m = std::move(b);
    remaining.erase(remaining.begin() + pos);
  }
  out.factors[static_cast<std::size_t>(remaining.front())] = expand_single(m);
  out.scale = scale;
  return out;
}

/// Product form obtained by the "collect per-qubit factors" heuristic: write
/// the operator as one ket-bra product per nonzero entry, then take, for
/// qubit 0, the coefficient-weighted sum of the per-term qubit-0 factors and,
/// for every other qubit, the plain sum of that qubit's factors. This is not
/// an identity; factorization_residual measures how far it is from `op`.
inline FactoredOperator sum_of_factors(const DenseOperator& op) {
  int n = 0;
  detail::check_square_power_of_two(op.matrix(), n);
  if (n < 1) throw ShapeError("sum_of_factors needs at least one qubit");
  FactoredOperator out;
  out.factors.assign(static_cast<std::size_t>(n), SingleQubitExpansion{});
  const Eigen::Index dim = op.rows();
  bool any = false;
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      const cplx w = op(r, c);
      if (w == cplx(0.0, 0.0)) continue;
      any = true;
      for (int q = 0; q < n; ++q) {
        Eigen::Matrix2cd ketbra = Eigen::Matrix2cd::Zero();
        ketbra((r >> (n - 1 - q)) & 1, (c >> (n - 1 - q)) & 1) = 1.0;
        const SingleQubitExpansion f = expand_single(ketbra);
        for (std::size_t k = 0; k < 4; ++k) out.factors[static_cast<std::size_t>(q)][k] += (q == 0 ? w : cplx(1.0)) * f[k];
      }
    }
  if (!any) throw ValidationError("sum_of_factors: operator is zero");
  return out;
}

inline nlohmann::ordered_json to_json(const std::vector<PauliTerm>& terms) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& t : terms)
    j.push_back({{"string", t.string.str()}, {"re", t.coefficient.real()}, {"im", t.coefficient.imag()}});
  return j;
}

inline std::vector<PauliTerm> load_pauli_terms(const nlohmann::ordered_json& j) {
  try {
    std::vector<PauliTerm> terms;
    for (const auto& e : j)
      terms.push_back({cplx(e.at("re").get<double>(), e.at("im").get<double>()), PauliString::parse(e.at("string").get<std::string>())});
    return terms;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("pauli terms: ") + ex.what());
  }
}

inline nlohmann::ordered_json to_json(const FactoredOperator& f) {
  nlohmann::ordered_json factors = nlohmann::ordered_json::array();
  for (const auto& e : f.factors) {
    nlohmann::ordered_json jf = nlohmann::ordered_json::object();
    for (Pauli p : kPaulis) {
      const cplx c = e[static_cast<std::size_t>(p)];
      if (c != cplx(0.0, 0.0)) jf[std::string(1, to_char(p))] = {c.real(), c.imag()};
    }
    factors.push_back(std::move(jf));
  }
  return {{"factors", std::move(factors)}, {"scale", {f.scale.real(), f.scale.imag()}}};
}

}  // namespace cqs
