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

// ABC scoring rules with exact rational parameters: general scoring tables
// s(x,y), Thiele rules s(x), and ballot-size weighted approval voting (BSWAV)
// rules alpha_y. Winners are found by exhaustive committee enumeration.

#pragma once

#include <algorithm>
#include <concepts>
#include <functional>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "abc/core.hpp"
#include "abc/rational.hpp"

namespace abc {

// s(x, y) for intersection size x in 0..k and ballot size y in 1..m.
class AbcScoringTable {
 public:
  AbcScoringTable(int k, int m, std::vector<Rational> values)
      : k_(k), m_(m), values_(std::move(values)) {
    require_candidate_count(m_);
    if (k_ < 1 || k_ > m_ - 1) throw std::invalid_argument("scoring table: k outside [1, m-1]");
    if (values_.size() != static_cast<std::size_t>((k_ + 1) * m_))
      throw std::invalid_argument("scoring table needs (k+1)*m entries");
    for (int y = 1; y <= m_; ++y)
      for (int x = active_min(y) + 1; x <= active_max(y); ++x)
        if (at(x, y) < at(x - 1, y))
          throw std::invalid_argument("scoring table decreases in x on the active range at y=" +
                                      std::to_string(y));
  }

  int k() const { return k_; }
  int m() const { return m_; }
  const Rational& at(int x, int y) const { return values_[x * m_ + (y - 1)]; }
  int active_min(int y) const { return std::max(0, k_ + y - m_); }
  int active_max(int y) const { return std::min(k_, y); }

 private:
  int k_;
  int m_;
  std::vector<Rational> values_;
};

// Non-decreasing s(0..k) with s(0) = 0.
class ThieleScore {
 public:
  explicit ThieleScore(std::vector<Rational> s) : s_(std::move(s)) {
    if (s_.size() < 2) throw std::invalid_argument("Thiele score needs s(0..k) with k >= 1");
    if (s_.front() != 0) throw std::invalid_argument("Thiele score requires s(0) = 0");
    for (std::size_t x = 1; x < s_.size(); ++x)
      if (s_[x] < s_[x - 1]) throw std::invalid_argument("Thiele score must be non-decreasing");
  }
  int k() const { return static_cast<int>(s_.size()) - 1; }
  const Rational& operator()(int x) const { return s_[x]; }
  const std::vector<Rational>& values() const { return s_; }

 private:
  std::vector<Rational> s_;
};

// alpha_1..alpha_m >= 0, stored 0-based.
class BswavWeights {
 public:
  explicit BswavWeights(std::vector<Rational> alpha) : alpha_(std::move(alpha)) {
    require_candidate_count(static_cast<int>(alpha_.size()));
    for (const Rational& a : alpha_)
      if (a < 0) throw std::invalid_argument("BSWAV weights must be non-negative");
  }
  int m() const { return static_cast<int>(alpha_.size()); }
  // Weight of a ballot of size y (1-based).
  const Rational& operator()(int y) const { return alpha_[y - 1]; }
  const std::vector<Rational>& values() const { return alpha_; }

 private:
  std::vector<Rational> alpha_;
};

struct WinnerOptions {
  int max_candidates = 24;
  int threads = 1;
};

class Rule {
 public:
  using Parameters = std::variant<AbcScoringTable, ThieleScore, BswavWeights>;

  Rule(std::string name, int k, int m, Parameters params)
      : name_(std::move(name)), k_(k), m_(m), params_(std::move(params)) {
    require_candidate_count(m_);
    if (k_ < 1 || k_ > m_ - 1)
      throw std::invalid_argument("committee size k=" + std::to_string(k_) + " outside [1, " +
                                  std::to_string(m_ - 1) + "]");
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, AbcScoringTable>) {
            if (p.k() != k_ || p.m() != m_)
              throw std::invalid_argument("scoring table dimensions disagree with rule");
          } else if constexpr (std::is_same_v<T, ThieleScore>) {
            if (p.k() != k_) throw std::invalid_argument("Thiele score length disagrees with k");
          } else {
            if (p.m() != m_) throw std::invalid_argument("BSWAV weight count disagrees with m");
          }
        },
        params_);
  }

  static Rule thiele(std::string name, int m, ThieleScore s) {
    const int k = s.k();
    return Rule(std::move(name), k, m, std::move(s));
  }
  static Rule bswav(std::string name, int k, BswavWeights alpha) {
    const int m = alpha.m();
    return Rule(std::move(name), k, m, std::move(alpha));
  }

  const std::string& name() const { return name_; }
  int k() const { return k_; }
  int m() const { return m_; }
  const Parameters& parameters() const { return params_; }
  bool is_thiele() const { return std::holds_alternative<ThieleScore>(params_); }
  bool is_bswav() const { return std::holds_alternative<BswavWeights>(params_); }

  // Points a voter with a ballot of size y gives a committee meeting it in x.
  Rational point_score(int x, int y) const {
    return std::visit(
        [&](const auto& p) -> Rational {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, AbcScoringTable>) return p.at(x, y);
          else if constexpr (std::is_same_v<T, ThieleScore>) return p(x);
          else return p(y) * x;
        },
        params_);
  }

  ChoiceSet operator()(const Profile& profile) const;

 private:
  std::string name_;
  int k_;
  int m_;
  Parameters params_;
};

namespace detail {

inline std::vector<Rational> harmonic_partial_sums(int k) {
  std::vector<Rational> s{Rational(0)};
  for (int x = 1; x <= k; ++x) s.push_back(s.back() + Rational(1, x));
  return s;
}

// Dense (x, y) lookup of point scores, y 1-based.
class PointTable {
 public:
  explicit PointTable(const Rule& rule) : m_(rule.m()) {
    values_.reserve((rule.k() + 1) * m_);
    for (int x = 0; x <= rule.k(); ++x)
      for (int y = 1; y <= m_; ++y) values_.push_back(rule.point_score(x, y));
  }
  const Rational& operator()(int x, int y) const { return values_[x * m_ + (y - 1)]; }

 private:
  int m_;
  std::vector<Rational> values_;
};

inline void require_enumerable(int m, int k, const WinnerOptions& options) {
  if (m > options.max_candidates)
    throw std::length_error("committee enumeration capped at m <= " +
                            std::to_string(options.max_candidates) + " (got m=" +
                            std::to_string(m) + ")");
  (void)k;
}

// Argmax over committees in enumeration order. `score` is evaluated per
// committee; with threads > 1 the committee list is split into contiguous
// chunks, so the result does not depend on the thread count.
template <class ScoreFn>
ChoiceSet argmax_committees(int m, int k, const WinnerOptions& options, ScoreFn score) {
  require_enumerable(m, k, options);
  const std::vector<Committee> committees = enumerate_committees(m, k);
  std::vector<Rational> scores(committees.size());
  const std::size_t threads =
      std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(1, committees.size() / 64));
  if (threads <= 1) {
    for (std::size_t i = 0; i < committees.size(); ++i) scores[i] = score(committees[i]);
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t chunk = (committees.size() + threads - 1) / threads;
    for (std::size_t begin = 0; begin < committees.size(); begin += chunk) {
      const std::size_t end = std::min(committees.size(), begin + chunk);
      jobs.push_back(std::async(std::launch::async, [&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) scores[i] = score(committees[i]);
      }));
    }
    for (auto& job : jobs) job.get();
  }
  const Rational best = *std::max_element(scores.begin(), scores.end());
  std::vector<Committee> winners;
  for (std::size_t i = 0; i < committees.size(); ++i)
    if (scores[i] == best) winners.push_back(committees[i]);
  return ChoiceSet(std::move(winners));
}

inline void require_compatible(const Rule& rule, const Profile& profile) {
  if (rule.m() != profile.m())
    throw std::invalid_argument("rule " + rule.name() + " is defined for m=" +
                                std::to_string(rule.m()) + " but profile has m=" +
                                std::to_string(profile.m()));
}

// Ballots with multiplicities, in first-appearance order.
inline std::vector<std::pair<Ballot, long>> group_ballots(const Profile& profile) {
  std::vector<std::pair<Ballot, long>> out;
  for (const Voter& v : profile.voters()) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == v.ballot; });
    if (it == out.end()) out.emplace_back(v.ballot, 1);
    else ++it->second;
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& named_rule_names() {
  static const std::vector<std::string> names{"av", "pav", "ccav", "sav", "msav", "triv"};
  return names;
}

inline Rule named_rule(const std::string& name, int k, int m) {
  require_candidate_count(m);
  if (k < 1 || k > m - 1)
    throw std::invalid_argument("committee size k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(m - 1) + "]");
  if (name == "av") {
    std::vector<Rational> s;
    for (int x = 0; x <= k; ++x) s.emplace_back(x);
    return Rule::thiele("av", m, ThieleScore(std::move(s)));
  }
  if (name == "pav") return Rule::thiele("pav", m, ThieleScore(detail::harmonic_partial_sums(k)));
  if (name == "ccav") {
    std::vector<Rational> s{Rational(0)};
    for (int x = 1; x <= k; ++x) s.emplace_back(1);
    return Rule::thiele("ccav", m, ThieleScore(std::move(s)));
  }
  if (name == "triv") return Rule::thiele("triv", m, ThieleScore(std::vector<Rational>(k + 1)));
  if (name == "sav" || name == "msav") {
    std::vector<Rational> alpha;
    for (int y = 1; y <= m; ++y) {
      Rational a(1, y);
      if (name == "msav") a = std::max(a, Rational(1, k));
      alpha.push_back(a);
    }
    return Rule::bswav(name, k, BswavWeights(std::move(alpha)));
  }
  throw std::invalid_argument("unknown rule '" + name + "'");
}

inline Rational committee_score(const Rule& rule, const Profile& profile, Committee w) {
  detail::require_compatible(rule, profile);
  if (w.size() != rule.k() || w.span_bound() > rule.m())
    throw std::invalid_argument("committee " + to_string(w) + " is not a size-" +
                                std::to_string(rule.k()) + " committee over m=" +
                                std::to_string(rule.m()));
  Rational total = 0;
  for (const Voter& v : profile.voters())
    total += rule.point_score((v.ballot & w).size(), v.ballot.size());
  return total;
}

inline ChoiceSet winners(const Rule& rule, const Profile& profile, const WinnerOptions& options = {}) {
  detail::require_compatible(rule, profile);
  detail::require_enumerable(rule.m(), rule.k(), options);
  const detail::PointTable table(rule);
  const auto groups = detail::group_ballots(profile);
  return detail::argmax_committees(rule.m(), rule.k(), options, [&](Committee w) {
    Rational total = 0;
    for (const auto& [ballot, count] : groups) total += table((ballot & w).size(), ballot.size()) * count;
    return total;
  });
}

inline ChoiceSet Rule::operator()(const Profile& profile) const { return winners(*this, profile); }

// Score of a committee for an arbitrary rational vector over ballot indices.
inline Rational committee_score(const Rule& rule, const ProfileVector& v, Committee w) {
  if (rule.m() != v.m()) throw std::invalid_argument("rule and vector disagree on m");
  Rational total = 0;
  for (const auto& [index, weight] : v.entries()) {
    const Ballot b = index_ballot(index, v.m());
    total += rule.point_score((b & w).size(), b.size()) * weight;
  }
  return total;
}

// Argmax of the score linear form on rational (possibly negative) vectors.
inline ChoiceSet winners_from_vector(const Rule& rule, const ProfileVector& v, int k,
                                     const WinnerOptions& options = {}) {
  if (rule.m() != v.m()) throw std::invalid_argument("rule and vector disagree on m");
  if (k != rule.k()) throw std::invalid_argument("committee size disagrees with rule");
  std::vector<std::pair<Ballot, Rational>> entries;
  for (const auto& [index, weight] : v.entries()) entries.emplace_back(index_ballot(index, v.m()), weight);
  const detail::PointTable table(rule);
  return detail::argmax_committees(rule.m(), k, options, [&](Committee w) {
    Rational total = 0;
    for (const auto& [ballot, weight] : entries) total += table((ballot & w).size(), ballot.size()) * weight;
    return total;
  });
}

// Smallest integer >= r for r >= 0.
inline BigInt ceil_nonnegative(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  return (num + den - 1) / den;
}

// A lambda such that winners(l*a + b) is a subset of winners(a) for every
// l >= lambda. Sound, not necessarily minimal: 1 + ceil(spread(b) / gap(a)).
inline BigInt continuity_lambda_bound(const Rule& rule, const Profile& a, const Profile& b) {
  detail::require_compatible(rule, a);
  detail::require_compatible(rule, b);
  const std::vector<Committee> committees = enumerate_committees(rule.m(), rule.k());
  std::vector<Rational> sa, sb;
  for (Committee w : committees) {
    sa.push_back(committee_score(rule, a, w));
    sb.push_back(committee_score(rule, b, w));
  }
  const Rational best = *std::max_element(sa.begin(), sa.end());
  std::optional<Rational> runner_up;
  for (const Rational& s : sa)
    if (s != best && (!runner_up || s > *runner_up)) runner_up = s;
  if (!runner_up) return 1;
  const Rational gap = best - *runner_up;
  const auto [lo, hi] = std::minmax_element(sb.begin(), sb.end());
  return 1 + ceil_nonnegative((*hi - *lo) / gap);
}

// Anything that maps a profile to a choice set.
template <class R>
concept ProfileRule = requires(const R& rule, const Profile& profile) {
  { rule(profile) } -> std::convertible_to<ChoiceSet>;
};

// Type-erased rule. Keeps the scoring parameters when built from a Rule.
class AnyRule {
 public:
  AnyRule(Rule rule)  // NOLINT(google-explicit-constructor)
      : name_(rule.name()), scoring_(rule), eval_([r = std::move(rule)](const Profile& p) { return winners(r, p); }) {}
  AnyRule(std::string name, std::function<ChoiceSet(const Profile&)> eval)
      : name_(std::move(name)), eval_(std::move(eval)) {}

  ChoiceSet operator()(const Profile& profile) const { return eval_(profile); }
  const std::string& name() const { return name_; }
  const Rule* scoring_rule() const { return scoring_ ? &*scoring_ : nullptr; }

 private:
  std::string name_;
  std::optional<Rule> scoring_;
  std::function<ChoiceSet(const Profile&)> eval_;
};

}  // namespace abc
