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

// Exact Fourier-Motzkin elimination over the rationals.
//
// Decides feasibility of a system  a_i . x >= b_i  and returns either a
// point or a Farkas certificate: non-negative multipliers y with
// sum y_i a_i = 0 and sum y_i b_i > 0.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/rational.hpp"

namespace abc::fm {

struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;
};

// Multipliers keyed by input constraint index.
using Combination = std::map<std::size_t, Rational>;

struct Certificate {
  Combination multipliers;
};

struct Result {
  std::optional<std::vector<Rational>> point;
  std::optional<Certificate> infeasible;

  bool feasible() const { return point.has_value(); }
};

inline constexpr int kMaxUnknowns = 8;

namespace detail {

struct Row {
  std::vector<Rational> coeffs;
  Rational rhs;
  Combination origin;
};

// Scales the row so its first non-zero coefficient has magnitude one.
inline void normalize(Row& row) {
  for (const Rational& c : row.coeffs) {
    if (c == 0) continue;
    const Rational scale = 1 / abs(c);
    if (scale == 1) return;
    for (Rational& x : row.coeffs) x *= scale;
    row.rhs *= scale;
    for (auto& [i, y] : row.origin) y *= scale;
    return;
  }
}

inline bool is_zero(const std::vector<Rational>& coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

struct CoeffLess {
  bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Drops trivially true rows and, among rows with the same direction, keeps
// the one with the largest right-hand side. Returns a contradiction row if
// one appears.
inline std::optional<Row> reduce(std::vector<Row>& rows) {
  std::map<std::vector<Rational>, Row, CoeffLess> best;
  for (Row& row : rows) {
    normalize(row);
    if (is_zero(row.coeffs)) {
      if (row.rhs > 0) return row;
      continue;
    }
    auto it = best.find(row.coeffs);
    if (it == best.end()) best.emplace(row.coeffs, std::move(row));
    else if (row.rhs > it->second.rhs) it->second = std::move(row);
  }
  rows.clear();
  for (auto& [key, row] : best) rows.push_back(std::move(row));
  return std::nullopt;
}

inline Combination combine(const Combination& a, const Rational& wa, const Combination& b, const Rational& wb) {
  Combination out;
  for (const auto& [i, y] : a) out[i] += y * wa;
  for (const auto& [i, y] : b) out[i] += y * wb;
  return out;
}

}  // namespace detail

// Eliminates unknowns from last to first, then assigns them first to last.
// Each unknown takes the midpoint of its feasible interval, its only finite
// bound when the interval is a half-line, or zero when unbounded.
inline Result solve(int unknowns, const std::vector<Inequality>& system) {
  if (unknowns < 0 || unknowns > kMaxUnknowns)
    throw std::length_error("Fourier-Motzkin limited to " + std::to_string(kMaxUnknowns) + " unknowns");
  std::vector<detail::Row> rows;
  rows.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (static_cast<int>(system[i].coeffs.size()) != unknowns)
      throw std::invalid_argument("inequality has wrong number of coefficients");
    rows.push_back({system[i].coeffs, system[i].rhs, {{i, Rational(1)}}});
  }

  // levels[j] holds the rows over unknowns 0..j-1 (after eliminating j..n-1).
  std::vector<std::vector<detail::Row>> levels(unknowns + 1);
  if (auto bad = detail::reduce(rows)) return {std::nullopt, Certificate{bad->origin}};
  levels[unknowns] = rows;
  for (int j = unknowns - 1; j >= 0; --j) {
    std::vector<detail::Row> pos, neg, next;
    for (const detail::Row& row : levels[j + 1]) {
      if (row.coeffs[j] > 0) pos.push_back(row);
      else if (row.coeffs[j] < 0) neg.push_back(row);
      else next.push_back(row);
    }
    for (const detail::Row& p : pos)
      for (const detail::Row& q : neg) {
        const Rational wp = -q.coeffs[j], wq = p.coeffs[j];
        detail::Row r;
        r.coeffs.resize(unknowns);
        for (int i = 0; i < unknowns; ++i) r.coeffs[i] = p.coeffs[i] * wp + q.coeffs[i] * wq;
        r.coeffs[j] = 0;
        r.rhs = p.rhs * wp + q.rhs * wq;
        r.origin = detail::combine(p.origin, wp, q.origin, wq);
        next.push_back(std::move(r));
      }
    if (auto bad = detail::reduce(next)) return {std::nullopt, Certificate{bad->origin}};
    levels[j] = std::move(next);
  }

  std::vector<Rational> x(unknowns);
  for (int j = 0; j < unknowns; ++j) {
    std::optional<Rational> lo, hi;
    for (const detail::Row& row : levels[j + 1]) {
      const Rational& a = row.coeffs[j];
      if (a == 0) continue;
      Rational rest = row.rhs;
      for (int i = 0; i < j; ++i) rest -= row.coeffs[i] * x[i];
      const Rational bound = rest / a;
      if (a > 0) lo = lo ? std::max(*lo, bound) : bound;
      else hi = hi ? std::min(*hi, bound) : bound;
    }
    if (lo && hi) x[j] = (*lo + *hi) / 2;
    else if (lo) x[j] = *lo;
    else if (hi) x[j] = *hi;
    else x[j] = 0;
  }
  for (const Inequality& ineq : system) {
    Rational lhs = 0;
    for (int i = 0; i < unknowns; ++i) lhs += ineq.coeffs[i] * x[i];
    if (lhs < ineq.rhs) throw std::logic_error("Fourier-Motzkin back-substitution violated a constraint");
  }
  return {std::move(x), std::nullopt};
}

// Checks y >= 0, sum y_i a_i = 0 and sum y_i b_i > 0 exactly.
inline bool verify_certificate(int unknowns, const std::vector<Inequality>& system, const Certificate& cert) {
  if (cert.multipliers.empty()) return false;
  std::vector<Rational> sum(unknowns);
  Rational rhs = 0;
  for (const auto& [i, y] : cert.multipliers) {
    if (i >= system.size() || y < 0) return false;
    for (int v = 0; v < unknowns; ++v) sum[v] += system[i].coeffs[v] * y;
    rhs += system[i].rhs * y;
  }
  return detail::is_zero(sum) && rhs > 0;
}

}  // namespace abc::fm
