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

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <string>
#include <utility>

#include "cqs/errors.hpp"
#include "json.hpp"

namespace cqs {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Whether an operator acts on a qubit register (padded, square 2^n forms
/// used for compilation) or on the bare irrep sector (logical forms used
/// for gluing).
enum class OperatorForm { padded, logical };

/// Complex matrix together with the register it acts on. Immutable.
class DenseOperator {
 public:
  /// Padded form on a qubit register: rows = 2^out_qubits, cols = 2^in_qubits.
  DenseOperator(Matrix m, int in_qubits, int out_qubits)
      : m_(std::move(m)), in_(in_qubits), out_(out_qubits), form_(OperatorForm::padded) {
    if (in_ < 0 || out_ < 0 || in_ > 30 || out_ > 30) throw ShapeError("qubit counts out of range");
    if (m_.rows() != (Eigen::Index{1} << out_) || m_.cols() != (Eigen::Index{1} << in_))
      throw ShapeError("matrix shape does not match qubit counts");
    check_finite();
  }

  static DenseOperator logical(Matrix m) { return DenseOperator(std::move(m)); }

  /// Square padded operator, qubit count inferred. Throws for non power-of-two sizes.
  static DenseOperator square(Matrix m) {
    if (m.rows() != m.cols()) throw ShapeError("operator is not square");
    int n = 0;
    while ((Eigen::Index{1} << n) < m.rows()) ++n;
    if ((Eigen::Index{1} << n) != m.rows()) throw ShapeError("dimension is not a power of two");
    return DenseOperator(std::move(m), n, n);
  }

  const Matrix& matrix() const { return m_; }
  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  int in_qubits() const { return in_; }
  int out_qubits() const { return out_; }
  OperatorForm form() const { return form_; }
  bool is_square() const { return m_.rows() == m_.cols(); }
  cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

 private:
  explicit DenseOperator(Matrix m) : m_(std::move(m)), in_(0), out_(0), form_(OperatorForm::logical) {
    if (m_.rows() < 1 || m_.cols() < 1) throw ShapeError("empty operator");
    check_finite();
  }
  void check_finite() const {
    if (!m_.allFinite()) throw ValidationError("operator has non-finite entries");
  }

  Matrix m_;
  int in_;
  int out_;
  OperatorForm form_;
};

inline Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

/// Largest entrywise |a - b|.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_abs_diff: shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

/// {rows, cols, form, in_qubits, out_qubits, entries: [[row, col, re, im], ...]}, nonzeros only.
inline nlohmann::ordered_json to_json(const DenseOperator& op) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < op.rows(); ++r)
    for (Eigen::Index c = 0; c < op.cols(); ++c)
      if (op(r, c) != cplx(0.0, 0.0)) entries.push_back({r, c, op(r, c).real(), op(r, c).imag()});
  nlohmann::ordered_json j;
  j["rows"] = op.rows();
  j["cols"] = op.cols();
  j["form"] = op.form() == OperatorForm::padded ? "padded" : "logical";
  j["in_qubits"] = op.in_qubits();
  j["out_qubits"] = op.out_qubits();
  j["entries"] = std::move(entries);
  return j;
}

inline DenseOperator load_operator(const nlohmann::ordered_json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 1 || cols < 1 || rows > (1 << 15) || cols > (1 << 15)) throw ShapeError("operator dimensions out of range");
    Matrix m = Matrix::Zero(rows, cols);
    for (const auto& e : j.at("entries")) {
      const auto r = e.at(0).get<Eigen::Index>();
      const auto c = e.at(1).get<Eigen::Index>();
      if (r < 0 || r >= rows || c < 0 || c >= cols) throw ShapeError("operator entry out of range");
      m(r, c) = cplx(e.at(2).get<double>(), e.at(3).get<double>());
    }
    if (j.value("form", std::string("padded")) == "logical") return DenseOperator::logical(std::move(m));
    if (j.contains("in_qubits")) return DenseOperator(std::move(m), j.at("in_qubits").get<int>(), j.at("out_qubits").get<int>());
    return DenseOperator::square(std::move(m));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("operator: ") + ex.what());
  }
}

}  // namespace cqs
