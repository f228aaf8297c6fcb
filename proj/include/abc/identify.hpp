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

// Inverse problem: find a Thiele scoring function or BSWAV weight vector
// whose choice sets reproduce a list of observed (profile, choice set)
// pairs, or prove that none exists.
//
// Committee scores are linear in the unknown parameters, so "W is chosen"
// becomes score(W) - score(W') >= 0 for every W', and "W'' is not chosen"
// becomes score(W) - score(W'') >= 1 for one chosen W. The margin of one is
// harmless because the constraint family is invariant under positive scaling.

#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/core.hpp"
#include "abc/fourier_motzkin.hpp"
#include "abc/io.hpp"
#include "abc/rules.hpp"

namespace abc {

struct Observation {
  ProfileVector profile;
  ChoiceSet chosen;

  Observation(const Profile& p, ChoiceSet c) : profile(profile_to_vector(p)), chosen(std::move(c)) {}
  Observation(ProfileVector v, ChoiceSet c) : profile(std::move(v)), chosen(std::move(c)) {}

  int m() const { return profile.m(); }
  int k() const { return chosen.k(); }
};

enum class Family { thiele, bswav };

inline const char* family_name(Family f) { return f == Family::thiele ? "thiele" : "bswav"; }

struct ConstraintSystem {
  Family family;
  int m;
  int k;
  // s_1..s_k (s_0 = 0 is implicit) or alpha_1..alpha_m.
  std::vector<std::string> unknowns;
  std::vector<std::vector<Rational>> weak;    // row . x >= 0
  std::vector<std::vector<Rational>> strict;  // row . x >= 1
  std::vector<std::vector<Rational>> side;    // row . x >= 0

  // weak, then strict, then side, as a single list.
  std::vector<fm::Inequality> inequalities() const {
    std::vector<fm::Inequality> out;
    out.reserve(weak.size() + strict.size() + side.size());
    for (const auto& r : weak) out.push_back({r, Rational(0)});
    for (const auto& r : strict) out.push_back({r, Rational(1)});
    for (const auto& r : side) out.push_back({r, Rational(0)});
    return out;
  }
};

namespace detail {

// Coefficients of the committee's score as a linear form in the unknowns.
inline std::vector<Rational> score_form(Family family, const ProfileVector& v, Committee w, int k) {
  const int m = v.m();
  std::vector<Rational> form(family == Family::thiele ? k : m);
  for (const auto& [index, weight] : v.entries()) {
    const Ballot b = index_ballot(index, m);
    const int x = (b & w).size();
    if (family == Family::thiele) {
      if (x > 0) form[x - 1] += weight;
    } else {
      form[b.size() - 1] += weight * x;
    }
  }
  return form;
}

inline std::vector<Rational> difference(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace detail

inline ConstraintSystem build_system(const std::vector<Observation>& observations, Family family, int m, int k) {
  require_candidate_count(m);
  if (k < 1 || k > m - 1) throw std::invalid_argument("committee size outside [1, m-1]");
  ConstraintSystem sys{family, m, k, {}, {}, {}, {}};
  const int n = family == Family::thiele ? k : m;
  for (int i = 1; i <= n; ++i)
    sys.unknowns.push_back((family == Family::thiele ? "s" : "alpha") + std::to_string(i));
  const std::vector<Committee> committees = enumerate_committees(m, k);
  for (const Observation& obs : observations) {
    if (obs.m() != m || obs.k() != k)
      throw std::invalid_argument("observation dimensions (m=" + std::to_string(obs.m()) + ", k=" +
                                  std::to_string(obs.k()) + ") disagree with the system");
    std::vector<std::vector<Rational>> forms;
    for (Committee w : committees) forms.push_back(detail::score_form(family, obs.profile, w, k));
    for (Committee w : obs.chosen)
      if (w.span_bound() > m) throw std::invalid_argument("chosen committee outside the candidate range");
    const Committee designated = obs.chosen.committees().front();
    const std::size_t d = static_cast<std::size_t>(
        std::find(committees.begin(), committees.end(), designated) - committees.begin());
    for (std::size_t i = 0; i < committees.size(); ++i) {
      if (obs.chosen.contains(committees[i])) {
        for (std::size_t j = 0; j < committees.size(); ++j)
          if (j != i) sys.weak.push_back(detail::difference(forms[i], forms[j]));
      } else {
        sys.strict.push_back(detail::difference(forms[d], forms[i]));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    row[i] = 1;
    if (family == Family::thiele && i > 0) row[i - 1] = -1;
    sys.side.push_back(std::move(row));
  }
  return sys;
}

struct Feasibility {
  std::optional<std::vector<Rational>> point;
  std::optional<fm::Certificate> certificate;
};

inline Feasibility solve_feasibility(const ConstraintSystem& system) {
  const auto ineqs = system.inequalities();
  fm::Result r = fm::solve(static_cast<int>(system.unknowns.size()), ineqs);
  return {std::move(r.point), std::move(r.infeasible)};
}

inline bool verify_certificate(const ConstraintSystem& system, const fm::Certificate& cert) {
  return fm::verify_certificate(static_cast<int>(system.unknowns.size()), system.inequalities(), cert);
}

template <class Params>
struct FitResult {
  std::optional<Params> parameters;
  std::optional<fm::Certificate> certificate;
  ConstraintSystem system;

  bool feasible() const { return parameters.has_value(); }
};

namespace detail {

inline void require_reproduces(const Rule& rule, const std::vector<Observation>& observations) {
  for (const Observation& obs : observations)
    if (winners_from_vector(rule, obs.profile, obs.k()) != obs.chosen)
      throw std::logic_error("fitted rule does not reproduce an observation");
}

}  // namespace detail

// Thiele score with s_0 = 0, scaled to s_1 = 1 when s_1 > 0.
inline FitResult<ThieleScore> fit_thiele(const std::vector<Observation>& observations, int m, int k) {
  ConstraintSystem sys = build_system(observations, Family::thiele, m, k);
  Feasibility f = solve_feasibility(sys);
  if (!f.point) return {std::nullopt, std::move(f.certificate), std::move(sys)};
  std::vector<Rational> s{Rational(0)};
  s.insert(s.end(), f.point->begin(), f.point->end());
  if (s[1] > 0) {
    const Rational scale = s[1];
    for (Rational& x : s) x /= scale;
  }
  ThieleScore score(std::move(s));
  detail::require_reproduces(Rule::thiele("fit", m, score), observations);
  return {std::move(score), std::nullopt, std::move(sys)};
}

// BSWAV weights scaled to alpha_1 = 1 when alpha_1 > 0. alpha_m never
// affects a choice set and is pinned to 1/m.
inline FitResult<BswavWeights> fit_bswav(const std::vector<Observation>& observations, int m, int k) {
  ConstraintSystem sys = build_system(observations, Family::bswav, m, k);
  Feasibility f = solve_feasibility(sys);
  if (!f.point) return {std::nullopt, std::move(f.certificate), std::move(sys)};
  std::vector<Rational> alpha = *f.point;
  if (alpha[0] > 0) {
    const Rational scale = alpha[0];
    for (Rational& a : alpha) a /= scale;
  }
  alpha[m - 1] = Rational(1, m);
  BswavWeights weights(std::move(alpha));
  detail::require_reproduces(Rule::bswav("fit", k, weights), observations);
  return {std::move(weights), std::nullopt, std::move(sys)};
}

// Observations file: profile blocks, each closed by "chosen: {0,1},{0,2}".
inline std::vector<Committee> parse_committee_list(const io::Line& line, std::string_view text, int m) {
  std::vector<Committee> out;
  std::size_t pos = 0;
  auto skip_spaces = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  skip_spaces();
  while (pos < text.size()) {
    if (text[pos] != '{') throw ParseError(line.number, "expected '{' in committee list");
    const auto close = text.find('}', pos);
    if (close == std::string_view::npos) throw ParseError(line.number, "unterminated committee");
    std::string inner(text.substr(pos + 1, close - pos - 1));
    for (char& c : inner)
      if (c == ',') c = ' ';
    out.push_back(io::parse_ballot({line.number, inner}, m));
    pos = close + 1;
    skip_spaces();
    if (pos < text.size()) {
      if (text[pos] != ',') throw ParseError(line.number, "expected ',' between committees");
      ++pos;
      skip_spaces();
    }
  }
  if (out.empty()) throw ParseError(line.number, "empty chosen list");
  const int k = out.front().size();
  for (Committee w : out)
    if (w.size() != k) throw ParseError(line.number, "chosen committees differ in size");
  return out;
}

inline std::vector<Observation> parse_observations(std::istream& in) {
  const auto lines = io::read_lines(in);
  std::vector<Observation> out;
  std::size_t pos = 0;
  auto is_chosen = [](const io::Line& l) { return l.text.rfind("chosen:", 0) == 0; };
  while (true) {
    while (pos < lines.size() && (io::is_comment(lines[pos].text) || io::is_blank(lines[pos].text))) ++pos;
    if (pos == lines.size()) break;
    Profile p = io::parse_profile_block(lines, pos, is_chosen);
    if (pos == lines.size()) throw ParseError(lines.back().number, "profile block without 'chosen:' line");
    const io::Line& line = lines[pos++];
    auto committees = parse_committee_list(line, std::string_view(line.text).substr(7), p.m());
    if (committees.front().size() >= p.m()) throw ParseError(line.number, "committee size must be below m");
    out.emplace_back(p, ChoiceSet(std::move(committees)));
  }
  return out;
}

inline std::vector<Observation> parse_observations(const std::string& text) {
  std::istringstream in(text);
  return parse_observations(in);
}

inline std::string format_observation(const Profile& profile, const ChoiceSet& chosen) {
  std::string out = format_profile(profile) + "chosen: ";
  bool first = true;
  for (Committee w : chosen) {
    if (!first) out += ',';
    out += to_string(w);
    first = false;
  }
  return out + "\n";
}

inline std::string format_rationals(const std::vector<Rational>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += to_string(values[i]);
  }
  return out;
}

}  // namespace abc
