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

// Bounded search for axiom violations. Profiles are enumerated as
// multisets of ballots, optionally one per candidate-permutation orbit, in
// a fixed stream order: by voter count, then by sorted ballot-index
// sequence. "First witness" always means first in that order.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abc/axioms.hpp"
#include "abc/core.hpp"
#include "abc/partylist.hpp"
#include "abc/replay.hpp"
#include "abc/rule_variants.hpp"
#include "abc/rules.hpp"

namespace abc {

inline constexpr int kMaxSearchCandidates = 6;
inline constexpr int kMaxSearchVoters = 6;

namespace detail {

// True when no candidate permutation yields a smaller sorted index sequence.
inline bool is_canonical_sequence(const std::vector<std::uint64_t>& seq, int m) {
  std::vector<Ballot> ballots;
  ballots.reserve(seq.size());
  for (std::uint64_t i : seq) ballots.push_back(index_ballot(i, m));
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Ballot> moved(ballots.size());
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (std::size_t i = 0; i < ballots.size(); ++i) moved[i] = permute(ballots[i], perm);
    if (ballot_index_sequence(moved, m) < seq) return false;
  }
  return true;
}

inline void require_search_bounds(int m, int n) {
  if (m < 2 || m > kMaxSearchCandidates || n < 1 || n > kMaxSearchVoters)
    throw std::length_error("search bounds exceeded: need 2 <= m <= " + std::to_string(kMaxSearchCandidates) +
                            " and 1 <= n <= " + std::to_string(kMaxSearchVoters));
}

}  // namespace detail

// All multisets of n non-empty ballots over m candidates, in stream order.
template <class Visit>
void for_each_profile(int m, int n, bool canonical, Visit visit) {
  detail::require_search_bounds(m, n);
  const std::uint64_t ballots = ballot_count(m);
  std::vector<std::uint64_t> seq(n, 0);
  while (true) {
    if (!canonical || detail::is_canonical_sequence(seq, m)) {
      std::vector<Ballot> bs;
      bs.reserve(n);
      for (std::uint64_t i : seq) bs.push_back(index_ballot(i, m));
      if (!visit(Profile::from_ballots(m, bs))) return;
    }
    int i = n - 1;
    while (i >= 0 && seq[i] == ballots - 1) --i;
    if (i < 0) return;
    ++seq[i];
    for (int j = i + 1; j < n; ++j) seq[j] = seq[i];
  }
}

inline std::vector<Profile> enumerate_profiles(int m, int n, bool canonical) {
  std::vector<Profile> out;
  for_each_profile(m, n, canonical, [&](Profile p) {
    out.push_back(std::move(p));
    return true;
  });
  return out;
}

using RuleFactory = std::function<AnyRule(int m, int k)>;

inline RuleFactory named_factory(const std::string& name) {
  if (name == "min-approval") return [](int m, int k) { return min_approval_rule(k, m); };
  named_rule(name, 1, 2);  // validates the name
  return [name](int m, int k) { return AnyRule(named_rule(name, k, m)); };
}

struct SearchBounds {
  int m_min = 2;
  int m_max = 4;
  std::vector<int> k_set;  // empty: every k in 1..m-1
  int n_max = 2;
  long lambda_cap = 64;
  Sampling iol_mode = Sampling::all();
  int threads = 1;
};

struct SearchResult {
  std::string rule;
  Axiom axiom;
  std::optional<AxiomVerdict> violation;
  int m = 0;
  int k = 0;
  // Instances examined, up to and including the witness when one is found.
  std::uint64_t instances = 0;

  bool found() const { return violation.has_value(); }
};

namespace detail {

struct Instance {
  Profile a;
  std::optional<Profile> b;
};

// Instances in stream order for one m. Pair axioms take a canonical first
// profile and any second profile within the voter budget.
inline std::vector<Instance> search_instances(Axiom axiom, int m, int n_max) {
  std::vector<Instance> out;
  const bool pairs = axiom == Axiom::consistency || axiom == Axiom::continuity;
  if (!pairs) {
    for (int n = 1; n <= n_max; ++n)
      for_each_profile(m, n, true, [&](Profile p) {
        out.push_back({std::move(p), std::nullopt});
        return true;
      });
    return out;
  }
  for (int na = 1; na < n_max || (na == 1 && n_max == 1); ++na) {
    const auto firsts = enumerate_profiles(m, na, true);
    for (int nb = 1; na + nb <= std::max(n_max, 2); ++nb) {
      const auto seconds = enumerate_profiles(m, nb, false);
      for (const Profile& a : firsts)
        for (const Profile& b : seconds) out.push_back({a, b});
    }
  }
  return out;
}

inline bool party_axiom(Axiom a) {
  return a == Axiom::excellence || a == Axiom::party_proportionality || a == Axiom::aversion_unanimous ||
         a == Axiom::unanimity_threshold;
}

// nullopt when the instance is outside the axiom's domain.
inline std::optional<AxiomVerdict> check_instance(const AnyRule& rule, Axiom axiom, const Instance& inst,
                                                  const SearchBounds& bounds) {
  if (party_axiom(axiom) && !detect_party_structure(inst.a)) return std::nullopt;
  switch (axiom) {
    case Axiom::anonymity: return check_anonymity(rule, inst.a);
    case Axiom::neutrality: return check_neutrality(rule, inst.a);
    case Axiom::consistency: return check_consistency_pair(rule, inst.a, *inst.b);
    case Axiom::continuity: {
      long cap = bounds.lambda_cap;
      if (const Rule* scoring = rule.scoring_rule())
        cap = continuity_lambda_bound(*scoring, inst.a, *inst.b).convert_to<long>();
      return check_continuity(rule, inst.a, *inst.b, cap);
    }
    case Axiom::weak_efficiency: return check_weak_efficiency(rule, inst.a);
    case Axiom::independence_of_losers: return check_independence_of_losers(rule, inst.a, bounds.iol_mode);
    case Axiom::choice_set_convexity: return check_choice_set_convexity(rule, inst.a);
    case Axiom::excellence: return check_excellence(rule, inst.a);
    case Axiom::party_proportionality: return check_party_proportionality(rule, inst.a);
    case Axiom::aversion_unanimous: return check_aversion_unanimous(rule, inst.a);
    case Axiom::unanimity_threshold: return check_unanimity_threshold(rule, inst.a);
  }
  return std::nullopt;
}

}  // namespace detail

// First violation in stream order over m = m_min..m_max, k in k_set,
// n = 1..n_max. Workers split the instance list into contiguous chunks;
// the lowest-index violation wins, so the result is thread-independent.
inline SearchResult find_counterexample(const RuleFactory& factory, Axiom axiom, const SearchBounds& bounds) {
  if (bounds.m_min < 2 || bounds.m_max > kMaxSearchCandidates || bounds.n_max < 1 ||
      bounds.n_max > kMaxSearchVoters || bounds.m_min > bounds.m_max)
    throw std::length_error("search bounds exceeded");
  SearchResult result{"", axiom, std::nullopt, 0, 0, 0};
  for (int m = bounds.m_min; m <= bounds.m_max; ++m) {
    std::vector<int> ks = bounds.k_set;
    if (ks.empty())
      for (int k = 1; k < m; ++k) ks.push_back(k);
    const std::vector<detail::Instance> instances = detail::search_instances(axiom, m, bounds.n_max);
    for (int k : ks) {
      if (k < 1 || k > m - 1) continue;
      const AnyRule rule = factory(m, k);
      result.rule = rule.name();
      struct Hit {
        std::size_t index;
        AxiomVerdict verdict;
      };
      struct Scan {
        std::optional<Hit> hit;
        std::uint64_t checked = 0;
      };
      auto scan = [&](std::size_t begin, std::size_t end) {
        Scan s;
        for (std::size_t i = begin; i < end; ++i) {
          auto v = detail::check_instance(rule, axiom, instances[i], bounds);
          if (!v) continue;
          ++s.checked;
          if (!v->passed) {
            s.hit = Hit{i, std::move(*v)};
            break;
          }
        }
        return s;
      };
      std::vector<Scan> parts;
      const std::size_t threads = std::max(1, bounds.threads);
      if (threads == 1 || instances.size() < 2 * threads) {
        parts.push_back(scan(0, instances.size()));
      } else {
        const std::size_t chunk = (instances.size() + threads - 1) / threads;
        std::vector<std::future<Scan>> jobs;
        for (std::size_t begin = 0; begin < instances.size(); begin += chunk)
          jobs.push_back(std::async(std::launch::async, scan, begin, std::min(instances.size(), begin + chunk)));
        for (auto& j : jobs) parts.push_back(j.get());
      }
      // Count instances in stream order up to the first hit.
      for (const Scan& s : parts) {
        if (s.hit) {
          std::uint64_t before = 0;
          for (std::size_t i = 0; i < s.hit->index; ++i)
            before += detail::check_instance(rule, axiom, instances[i], bounds).has_value();
          result.instances += before + 1;
          result.violation = s.hit->verdict;
          result.m = m;
          result.k = k;
          return result;
        }
      }
      for (const Scan& s : parts) result.instances += s.checked;
    }
  }
  return result;
}

// Rules by name. The default library knows the named rules plus
// "min-approval"; tests substitute corrupted rules to exercise the suite.
using RuleLibrary = std::function<AnyRule(const std::string& name, int m, int k)>;

inline RuleLibrary default_library() {
  return [](const std::string& name, int m, int k) { return named_factory(name)(m, k); };
}

struct SuiteEntry {
  std::string rule;
  std::string axiom;
  std::string scope;
  bool expect_violation = false;
  std::optional<AxiomVerdict> violation;
  std::uint64_t instances = 0;
  // Violation replayed independently (always true when none was found).
  bool confirmed = true;
  bool degenerate = false;

  bool observed_violation() const { return violation.has_value(); }
  bool met() const { return confirmed && expect_violation == observed_violation(); }
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  std::vector<std::string> notes;

  bool passed() const {
    return std::all_of(entries.begin(), entries.end(), [](const SuiteEntry& e) { return e.met(); });
  }
};

// Party-list instance with n_1 = 6 voters on {0,1,2} and n_2 = 2 on {3}.
inline Profile unanimity_instance() {
  std::vector<Ballot> ballots(6, CandidateSet::from_mask(0b0111));
  ballots.insert(ballots.end(), 2, CandidateSet::from_mask(0b1000));
  return Profile::from_ballots(4, ballots);
}

inline SuiteReport separation_suite(const RuleLibrary& library = default_library(), int threads = 1) {
  SuiteReport report;
  SearchBounds grid;
  grid.m_max = 4;
  grid.n_max = 2;
  grid.threads = threads;
  SearchBounds small = grid;
  small.m_max = 3;
  small.n_max = 3;
  small.k_set = {1};
  SearchBounds pairs = grid;
  pairs.n_max = 3;
  SearchBounds k2 = grid;
  k2.k_set = {2};

  auto describe = [](const SearchBounds& b) {
    std::string ks;
    for (int k : b.k_set) ks += (ks.empty() ? "" : ",") + std::to_string(k);
    return "m<=" + std::to_string(b.m_max) + " n<=" + std::to_string(b.n_max) + " k=" + (ks.empty() ? "all" : ks);
  };
  auto searched = [&](const std::string& rule, Axiom axiom, const SearchBounds& b, bool expect, bool degenerate) {
    RuleFactory factory = [&library, rule](int m, int k) { return library(rule, m, k); };
    SearchResult r = find_counterexample(factory, axiom, b);
    SuiteEntry e{rule, axiom_id(axiom), describe(b), expect, r.violation, r.instances, true, degenerate};
    if (r.violation) e.confirmed = confirms_violation(factory(r.m, r.k), *r.violation);
    report.entries.push_back(std::move(e));
  };
  auto single = [&](const std::string& rule, Axiom axiom, const Profile& profile, int k, bool expect) {
    const AnyRule f = library(rule, profile.m(), k);
    AxiomVerdict v = axiom == Axiom::aversion_unanimous ? check_aversion_unanimous(f, profile)
                                                        : check_unanimity_threshold(f, profile);
    SuiteEntry e{rule, axiom_id(axiom), "n1=6 |P1|=3 n2=2 k=2", expect, std::nullopt, 1, true, false};
    if (!v.passed) {
      e.confirmed = confirms_violation(f, v);
      e.violation = std::move(v);
    }
    report.entries.push_back(std::move(e));
  };

  searched("sav", Axiom::independence_of_losers, small, true, false);
  searched("sav", Axiom::choice_set_convexity, grid, false, false);
  searched("sav", Axiom::weak_efficiency, grid, false, false);
  searched("sav", Axiom::consistency, pairs, false, false);
  searched("pav", Axiom::choice_set_convexity, k2, true, false);
  searched("ccav", Axiom::choice_set_convexity, k2, true, false);
  searched("pav", Axiom::independence_of_losers, grid, false, false);
  searched("ccav", Axiom::independence_of_losers, grid, false, false);
  searched("min-approval", Axiom::weak_efficiency, grid, true, false);
  searched("av", Axiom::independence_of_losers, grid, false, false);
  searched("av", Axiom::choice_set_convexity, grid, false, false);
  searched("triv", Axiom::independence_of_losers, grid, false, true);
  searched("triv", Axiom::choice_set_convexity, grid, false, true);

  const Profile instance = unanimity_instance();
  single("pav", Axiom::aversion_unanimous, instance, 2, true);
  single("pav", Axiom::unanimity_threshold, instance, 2, false);
  single("sav", Axiom::aversion_unanimous, instance, 2, false);
  single("sav", Axiom::unanimity_threshold, instance, 2, true);
  single("msav", Axiom::aversion_unanimous, instance, 2, true);
  single("msav", Axiom::unanimity_threshold, instance, 2, false);

  report.notes.push_back("triv rows are degenerate: every committee ties, so IoL and convexity hold vacuously");
  report.notes.push_back(
      "uniqueness of AV among non-trivial rules in both classes quantifies over all rules and is not testable by "
      "search; only the memberships of the library rules are checked");
  return report;
}

}  // namespace abc
