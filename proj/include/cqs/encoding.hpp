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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cqs/errors.hpp"
#include "cqs/reptheory.hpp"
#include "json.hpp"

namespace cqs {

/// Computational-basis label, big-endian: character 0 is qubit 0.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::string bits) : bits_(std::move(bits)) {
    for (char c : bits_)
      if (c != '0' && c != '1') throw ParseError("bitstring contains '" + std::string(1, c) + "'");
  }
  static Bitstring from_index(std::uint64_t index, int width) {
    std::string bits(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
      if ((index >> (width - 1 - i)) & 1U) bits[static_cast<std::size_t>(i)] = '1';
    return Bitstring(std::move(bits));
  }

  std::uint64_t to_index() const {
    std::uint64_t v = 0;
    for (char c : bits_) v = (v << 1) | static_cast<std::uint64_t>(c == '1');
    return v;
  }
  int size() const { return static_cast<int>(bits_.size()); }
  const std::string& str() const { return bits_; }

  Bitstring operator+(const Bitstring& rhs) const { return Bitstring(bits_ + rhs.bits_); }
  friend bool operator==(const Bitstring&, const Bitstring&) = default;
  friend auto operator<=>(const Bitstring&, const Bitstring&) = default;

 private:
  std::string bits_;
};

/// A circle's content: an irrep label, or std::nullopt for the vacuum.
using CircleState = std::optional<std::string>;

/// Bijection between irrep labels (plus vacuum) and per-circle bitstrings.
class EncodingMap {
 public:
  EncodingMap(int bits_per_circle, Bitstring vacuum, std::vector<std::pair<std::string, Bitstring>> assignments)
      : bits_(bits_per_circle), vacuum_(std::move(vacuum)), assignments_(std::move(assignments)) {
    if (bits_ < 1 || bits_ > 16) throw ValidationError("bits_per_circle must lie in [1, 16]");
    if (vacuum_.size() != bits_) throw ValidationError("vacuum bitstring has wrong length");
    if (assignments_.size() + 1 > (std::size_t{1} << bits_))
      throw ValidationError("too many irreps for bits_per_circle");
    std::set<Bitstring> codes{vacuum_};
    std::set<std::string> labels;
    for (const auto& [label, code] : assignments_) {
      if (code.size() != bits_) throw ValidationError("code for '" + label + "' has wrong length");
      if (!codes.insert(code).second) throw ValidationError("code for '" + label + "' is not unique");
      if (!labels.insert(label).second) throw ValidationError("label '" + label + "' assigned twice");
    }
  }

  int bits_per_circle() const { return bits_; }
  const Bitstring& vacuum() const { return vacuum_; }
  const std::vector<std::pair<std::string, Bitstring>>& assignments() const { return assignments_; }

  const Bitstring& code(const std::string& label) const {
    for (const auto& [l, c] : assignments_)
      if (l == label) return c;
    throw ValidationError("label '" + label + "' not in encoding");
  }

  const Bitstring& code(const char* label) const { return code(std::string(label)); }
  const Bitstring& code(const CircleState& circle) const { return circle ? code(*circle) : vacuum_; }

  CircleState decode_circle(const Bitstring& bits) const {
    if (bits == vacuum_) return std::nullopt;
    for (const auto& [l, c] : assignments_)
      if (c == bits) return l;
    throw ValidationError("bitstring '" + bits.str() + "' encodes no irrep");
  }

  bool covers(const RepTable& table) const {
    for (const auto& e : table.entries()) {
      bool found = false;
      for (const auto& a : assignments_) found = found || a.first == e.label;
      if (!found) return false;
    }
    return true;
  }

  /// Order-insensitive on assignments.
  friend bool operator==(const EncodingMap& a, const EncodingMap& b) {
    if (a.bits_ != b.bits_ || !(a.vacuum_ == b.vacuum_) || a.assignments_.size() != b.assignments_.size())
      return false;
    for (const auto& [l, c] : a.assignments_) {
      bool found = false;
      for (const auto& [l2, c2] : b.assignments_) found = found || (l == l2 && c == c2);
      if (!found) return false;
    }
    return true;
  }

 private:
  int bits_;
  Bitstring vacuum_;
  std::vector<std::pair<std::string, Bitstring>> assignments_;
};

/// The two-qubit SU(3) code: D(0,0) -> 11, D(1,0) -> 10, D(0,1) -> 01, vacuum -> 00.
inline EncodingMap paper_su3_encoding() {
  return EncodingMap(2, Bitstring("00"),
                     {{"D(0,0)", Bitstring("11")}, {"D(1,0)", Bitstring("10")}, {"D(0,1)", Bitstring("01")}});
}

/// ceil(log2(n+1)) bits; vacuum all-zeros; irreps get descending nonzero codes
/// in table order.
inline EncodingMap default_encoding(const RepTable& table) {
  int bits = 1;
  while ((std::size_t{1} << bits) < table.size() + 1) ++bits;
  std::vector<std::pair<std::string, Bitstring>> assignments;
  std::uint64_t next = (std::uint64_t{1} << bits) - 1;
  for (const auto& e : table.entries()) assignments.emplace_back(e.label, Bitstring::from_index(next--, bits));
  return EncodingMap(bits, Bitstring(std::string(static_cast<std::size_t>(bits), '0')), std::move(assignments));
}

/// Concatenates per-circle codes left to right.
inline Bitstring encode_state(const EncodingMap& map, const std::vector<CircleState>& circles) {
  std::string out;
  for (const auto& c : circles) out += map.code(c).str();
  return Bitstring(std::move(out));
}

inline std::vector<CircleState> decode_state(const EncodingMap& map, const Bitstring& bits) {
  const int w = map.bits_per_circle();
  if (bits.size() % w != 0) throw ShapeError("bitstring length is not a multiple of bits_per_circle");
  std::vector<CircleState> circles;
  for (int i = 0; i < bits.size(); i += w)
    circles.push_back(map.decode_circle(Bitstring(bits.str().substr(static_cast<std::size_t>(i), static_cast<std::size_t>(w)))));
  return circles;
}

inline nlohmann::ordered_json to_json(const EncodingMap& map) {
  nlohmann::ordered_json assignments = nlohmann::ordered_json::object();
  for (const auto& [label, code] : map.assignments()) assignments[label] = code.str();
  nlohmann::ordered_json j;
  j["bits_per_circle"] = map.bits_per_circle();
  j["vacuum"] = map.vacuum().str();
  j["assignments"] = std::move(assignments);
  return j;
}

inline EncodingMap load_encoding(const nlohmann::ordered_json& j) {
  try {
    std::vector<std::pair<std::string, Bitstring>> assignments;
    for (const auto& [label, code] : j.at("assignments").items())
      assignments.emplace_back(label, Bitstring(code.get<std::string>()));
    return EncodingMap(j.at("bits_per_circle").get<int>(), Bitstring(j.at("vacuum").get<std::string>()),
                       std::move(assignments));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("encoding: ") + ex.what());
  }
}

}  // namespace cqs
