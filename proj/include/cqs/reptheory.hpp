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

#include <boost/rational.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cqs/errors.hpp"
#include "json.hpp"

namespace cqs {

using Rational = boost::rational<long long>;

/// Dynkin labels (p, q) of an SU(3) irrep D(p,q).
struct IrrepLabel {
  int p = 0;
  int q = 0;

  IrrepLabel(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0) throw ValidationError("Dynkin labels must be non-negative");
  }

  std::string name() const { return "D(" + std::to_string(p) + "," + std::to_string(q) + ")"; }

  friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

/// Quadratic Casimir eigenvalue. Kept as an exact rational when the source
/// provides one; `value()` is the floating-point view used by operator
/// construction.
class Casimir {
 public:
  Casimir() = default;
  explicit Casimir(Rational exact) : exact_(exact), value_(boost::rational_cast<double>(exact)) {}
  explicit Casimir(double value) : value_(value) {
    if (!std::isfinite(value)) throw ValidationError("Casimir value must be finite");
  }

  double value() const { return value_; }
  const std::optional<Rational>& exact() const { return exact_; }

  friend bool operator==(const Casimir& a, const Casimir& b) {
    if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
    return a.value_ == b.value_;
  }

  /// "16/3", "0" for exact values; shortest round-trip decimal otherwise.
  std::string to_string() const {
    if (exact_) {
      if (exact_->denominator() == 1) return std::to_string(exact_->numerator());
      return std::to_string(exact_->numerator()) + "/" + std::to_string(exact_->denominator());
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value_);
    return std::string(buf, res.ptr);
  }

 private:
  std::optional<Rational> exact_;
  double value_ = 0.0;
};

struct RepEntry {
  std::string label;
  std::optional<IrrepLabel> irrep;  // set for SU(3) entries
  Casimir casimir;
  int dim = 1;

  friend bool operator==(const RepEntry& a, const RepEntry& b) {
    return a.label == b.label && a.irrep == b.irrep && a.casimir == b.casimir && a.dim == b.dim;
  }
};

/// Ordered truncation of a group's irreps. Order fixes the encoding.
class RepTable {
 public:
  RepTable(std::string group_name, std::vector<RepEntry> entries)
      : group_name_(std::move(group_name)), entries_(std::move(entries)) {
    if (entries_.empty()) throw ValidationError("rep table has no entries");
    std::set<std::string> seen;
    for (const auto& e : entries_) {
      if (e.label.empty()) throw ValidationError("rep table entry has empty label");
      if (!seen.insert(e.label).second) throw ValidationError("duplicate rep label: " + e.label);
      if (e.dim < 1) throw ValidationError("rep '" + e.label + "' has dim < 1");
    }
  }

  const std::string& group_name() const { return group_name_; }
  const std::vector<RepEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const RepEntry& operator[](std::size_t i) const { return entries_[i]; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i].label == label) return i;
    return std::nullopt;
  }

  friend bool operator==(const RepTable&, const RepTable&) = default;

 private:
  std::string group_name_;
  std::vector<RepEntry> entries_;
};

/// C2(D(p,q)) = (4/3)(p^2 + q^2 + pq + 3p + 3q), exact.
inline Rational casimir_su3_exact(int p, int q) {
  IrrepLabel check(p, q);
  const long long lp = p, lq = q;
  return Rational(4 * (lp * lp + lq * lq + lp * lq + 3 * lp + 3 * lq), 3);
}

inline double casimir_su3(int p, int q) { return boost::rational_cast<double>(casimir_su3_exact(p, q)); }

/// dim D(p,q) = (p+1)(q+1)(p+q+2)/2. The product is always even.
inline long long dim_su3(int p, int q) {
  IrrepLabel check(p, q);
  const long long lp = p, lq = q;
  return (lp + 1) * (lq + 1) * (lp + lq + 2) / 2;
}

inline RepEntry su3_entry(int p, int q) {
  IrrepLabel label(p, q);
  return RepEntry{label.name(), label, Casimir(casimir_su3_exact(p, q)), static_cast<int>(dim_su3(p, q))};
}

/// First `count` SU(3) irreps: D(0,0), D(1,0), D(0,1), then the rest by
/// (C2, dim, p, q) ascending.
inline RepTable su3_truncation(int count) {
  if (count < 1) throw ValidationError("truncation count must be >= 1");
  std::vector<RepEntry> entries{su3_entry(0, 0), su3_entry(1, 0), su3_entry(0, 1)};
  if (count <= 3) {
    entries.resize(static_cast<std::size_t>(count));
    return RepTable("su3", std::move(entries));
  }

  using Key = std::tuple<Rational, long long, int, int>;
  const auto need = static_cast<std::size_t>(count - 3);
  std::vector<Key> rest;
  // Every irrep with p+q = k has C2 >= k^2 + 4k, so once the need-th smallest
  // collected C2 lies below that bound no later level can displace it.
  for (int level = 2;; ++level) {
    for (int p = 0; p <= level; ++p) rest.emplace_back(casimir_su3_exact(p, level - p), dim_su3(p, level - p), p, level - p);
    std::sort(rest.begin(), rest.end());
    const long long next = level + 1;
    if (rest.size() >= need && std::get<0>(rest[need - 1]) < Rational(next * next + 4 * next)) break;
  }
  for (std::size_t i = 0; i < need; ++i) entries.push_back(su3_entry(std::get<2>(rest[i]), std::get<3>(rest[i])));
  return RepTable("su3", std::move(entries));
}

namespace detail {

inline std::optional<IrrepLabel> parse_irrep_label(const std::string& text) {
  static const std::regex pattern(R"(D\((\d+),(\d+)\))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) return std::nullopt;
  return IrrepLabel(std::stoi(m[1].str()), std::stoi(m[2].str()));
}

inline Casimir parse_casimir(const nlohmann::ordered_json& j) {
  if (j.is_number()) return Casimir(j.get<double>());
  if (!j.is_string()) throw ParseError("casimir must be a number or a rational string");
  const auto text = j.get<std::string>();
  static const std::regex pattern(R"((-?\d+)(?:/(\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw ParseError("bad casimir literal: " + text);
  const long long num = std::stoll(m[1].str());
  const long long den = m[2].matched ? std::stoll(m[2].str()) : 1;
  if (den == 0) throw ParseError("zero denominator in casimir: " + text);
  return Casimir(Rational(num, den));
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const RepTable& table) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : table.entries()) {
    nlohmann::ordered_json je;
    je["label"] = e.label;
    if (e.casimir.exact())
      je["casimir"] = e.casimir.to_string();
    else
      je["casimir"] = e.casimir.value();
    je["dim"] = e.dim;
    entries.push_back(std::move(je));
  }
  nlohmann::ordered_json j;
  j["group_name"] = table.group_name();
  j["entries"] = std::move(entries);
  return j;
}

/// Accepts {group_name, entries: [{label, casimir, dim}]}; casimir may be a
/// number or an exact rational string such as "16/3".
inline RepTable load_rep_table(const nlohmann::ordered_json& j) {
  try {
    if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array())
      throw ParseError("rep table document needs an 'entries' array");
    std::vector<RepEntry> entries;
    for (const auto& je : j.at("entries")) {
      RepEntry e;
      e.label = je.at("label").get<std::string>();
      e.irrep = detail::parse_irrep_label(e.label);
      e.casimir = detail::parse_casimir(je.at("casimir"));
      const auto dim = je.at("dim");
      if (!dim.is_number_integer()) throw ParseError("dim of '" + e.label + "' is not an integer");
      e.dim = dim.get<int>();
      entries.push_back(std::move(e));
    }
    return RepTable(j.value("group_name", std::string("custom")), std::move(entries));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("rep table: ") + ex.what());
  }
}

inline RepTable load_rep_table(const std::string& text) {
  try {
    return load_rep_table(nlohmann::ordered_json::parse(text));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("rep table: ") + ex.what());
  }
}

inline RepTable load_rep_table(const char* text) { return load_rep_table(std::string(text)); }

}  // namespace cqs
