// Copyright 2026 The abcvote Authors
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

// Brute-force reference computations used by the tests. They share no code
// with the library beyond the value types.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "abc/core.hpp"
#include "abc/rational.hpp"

namespace oracle {

using abc::Rational;

// Every non-empty subset of 0..m-1, by size and then by sorted members.
inline std::vector<std::uint32_t> ballot_order(int m) {
  std::vector<std::uint32_t> all;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) all.push_back(mask);
  auto members = [](std::uint32_t mask) {
    std::vector<int> out;
    for (int c = 0; c < 32; ++c)
      if (mask >> c & 1u) out.push_back(c);
    return out;
  };
  std::sort(all.begin(), all.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
    return members(a) < members(b);
  });
  return all;
}

// Argmax committees as bitmasks, ascending numerically.
inline std::set<std::uint32_t> winners(int m, int k, const std::vector<std::uint32_t>& ballots,
                                       const std::function<Rational(int x, int y)>& point) {
  std::set<std::uint32_t> best;
  Rational top;
  bool first = true;
  for (std::uint32_t w = 0; w < (1u << m); ++w) {
    if (std::popcount(w) != k) continue;
    Rational score = 0;
    for (std::uint32_t b : ballots) score += point(std::popcount(b & w), std::popcount(b));
    if (first || score > top) {
      best.clear();
      top = score;
      first = false;
    }
    if (score == top) best.insert(w);
  }
  return best;
}

// Same over a weighted ballot vector (weights may be negative).
inline std::set<std::uint32_t> winners_weighted(int m, int k,
                                                const std::vector<std::pair<std::uint32_t, Rational>>& ballots,
                                                const std::function<Rational(int x, int y)>& point) {
  std::set<std::uint32_t> best;
  Rational top;
  bool first = true;
  for (std::uint32_t w = 0; w < (1u << m); ++w) {
    if (std::popcount(w) != k) continue;
    Rational score = 0;
    for (const auto& [b, weight] : ballots) score += weight * point(std::popcount(b & w), std::popcount(b));
    if (first || score > top) {
      best.clear();
      top = score;
      first = false;
    }
    if (score == top) best.insert(w);
  }
  return best;
}

inline Rational harmonic(int x) {
  Rational h = 0;
  for (int z = 1; z <= x; ++z) h += Rational(1, z);
  return h;
}

inline std::function<Rational(int, int)> av() {
  return [](int x, int) { return Rational(x); };
}
inline std::function<Rational(int, int)> pav() {
  return [](int x, int) { return harmonic(x); };
}
inline std::function<Rational(int, int)> ccav() {
  return [](int x, int) { return Rational(x > 0 ? 1 : 0); };
}
inline std::function<Rational(int, int)> sav() {
  return [](int x, int y) { return Rational(x, y); };
}
inline std::function<Rational(int, int)> msav(int k) {
  return [k](int x, int y) { return Rational(x) * std::max(Rational(1, y), Rational(1, k)); };
}
inline std::function<Rational(int, int)> triv() {
  return [](int, int) { return Rational(0); };
}

inline std::function<Rational(int, int)> by_name(const std::string& name, int k) {
  if (name == "av") return av();
  if (name == "pav") return pav();
  if (name == "ccav") return ccav();
  if (name == "sav") return sav();
  if (name == "msav") return msav(k);
  return triv();
}

inline std::set<std::uint32_t> masks(const abc::ChoiceSet& c) {
  std::set<std::uint32_t> out;
  for (abc::Committee w : c) out.insert(w.mask());
  return out;
}

inline std::vector<std::uint32_t> masks(const abc::Profile& p) {
  std::vector<std::uint32_t> out;
  for (const abc::Voter& v : p.voters()) out.push_back(v.ballot.mask());
  return out;
}

inline std::uint64_t multiset_count(std::uint64_t kinds, int n) {
  // C(kinds + n - 1, n)
  std::uint64_t r = 1;
  for (int i = 1; i <= n; ++i) r = r * (kinds + i - 1) / i;
  return r;
}

}  // namespace oracle
