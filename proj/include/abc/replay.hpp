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

// Re-checks a failing verdict by evaluating the rule on the witness alone.
// Nothing here reuses the checkers' iteration logic: each case restates the
// violated condition directly.

#pragma once

#include <algorithm>
#include <map>

#include "abc/axioms.hpp"
#include "abc/core.hpp"
#include "abc/partylist.hpp"
#include "abc/rules.hpp"

namespace abc {

namespace detail {

inline long supporters(const Profile& profile, CandidateSet party) {
  long n = 0;
  for (const Voter& v : profile.voters()) n += v.ballot == party;
  return n;
}

// Ballots pairwise equal or disjoint, and the witness parties are among them
// or unapproved singletons.
inline bool party_list_with(const Profile& profile, std::span<const CandidateSet> parties) {
  for (const Voter& a : profile.voters())
    for (const Voter& b : profile.voters())
      if (a.ballot != b.ballot && !(a.ballot & b.ballot).empty()) return false;
  for (CandidateSet p : parties) {
    if (p.empty()) return false;
    const bool supported = supporters(profile, p) > 0;
    const bool idle_singleton = p.size() == 1 && (p & profile.approved()).empty();
    if (!supported && !idle_singleton) return false;
  }
  return true;
}

inline bool is_voter_relabelling(const Profile& a, const Profile& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> la, lb;
  for (const Voter& v : a.voters()) la.push_back(v.label);
  for (const Voter& v : b.voters()) lb.push_back(v.label);
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  return la == lb && profile_to_vector(a) == profile_to_vector(b);
}

}  // namespace detail

// True when the witness reproduces the violation against `rule`.
template <ProfileRule R>
bool confirms_violation(const R& rule, const AxiomVerdict& verdict) {
  if (verdict.passed || !verdict.witness) return false;
  const Witness& w = *verdict.witness;
  auto f = [&](const Profile& p) { return ChoiceSet(rule(p)); };
  switch (verdict.axiom) {
    case Axiom::anonymity: {
      if (w.profiles.size() != 2 || !detail::is_voter_relabelling(w.profiles[0], w.profiles[1])) return false;
      return f(w.profiles[0]) != f(w.profiles[1]);
    }
    case Axiom::neutrality: {
      if (w.profiles.size() != 1 || !is_permutation_of_range(w.permutation, w.profiles[0].m())) return false;
      const Profile& a = w.profiles[0];
      const ChoiceSet moved = f(apply_candidate_permutation(a, w.permutation));
      std::vector<Committee> image;
      for (Committee c : f(a)) image.push_back(permute(c, w.permutation));
      return moved != ChoiceSet(image);
    }
    case Axiom::consistency: {
      if (w.profiles.size() != 2) return false;
      const ChoiceSet fa = f(w.profiles[0]), fb = f(w.profiles[1]);
      std::vector<Committee> common;
      for (Committee c : fa)
        if (fb.contains(c)) common.push_back(c);
      if (common.empty()) return false;
      return f(add_profiles(w.profiles[0], w.profiles[1])) != ChoiceSet(common);
    }
    case Axiom::continuity: {
      if (w.profiles.size() != 2 || !w.lambda || *w.lambda < 1) return false;
      const ChoiceSet fa = f(w.profiles[0]);
      for (long lambda = 1; lambda <= *w.lambda; ++lambda) {
        const ChoiceSet mixed = f(continuity_mix(w.profiles[0], w.profiles[1], lambda));
        const bool inside = std::all_of(mixed.begin(), mixed.end(), [&](Committee c) { return fa.contains(c); });
        if (inside) return false;
      }
      return true;
    }
    case Axiom::weak_efficiency: {
      if (w.profiles.size() != 1 || w.committees.size() != 2) return false;
      const Profile& a = w.profiles[0];
      const Committee winner = w.committees[0], swapped = w.committees[1];
      const CandidateSet out = winner - swapped, in = swapped - winner;
      if (out.size() != 1 || in.size() != 1) return false;
      if (!(out & a.approved()).empty()) return false;
      const ChoiceSet chosen = f(a);
      return chosen.contains(winner) && !chosen.contains(swapped);
    }
    case Axiom::independence_of_losers: {
      if (w.profiles.size() != 2 || w.committees.size() != 1) return false;
      const Profile &a = w.profiles[0], &reduced = w.profiles[1];
      const Committee winner = w.committees[0];
      if (a.size() != reduced.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const Voter &before = a.voters()[i], &after = reduced.voters()[i];
        if (before.label != after.label || !after.ballot.subset_of(before.ballot) ||
            (after.ballot & winner) != (before.ballot & winner))
          return false;
      }
      return f(a).contains(winner) && !f(reduced).contains(winner);
    }
    case Axiom::choice_set_convexity: {
      if (w.profiles.size() != 1 || w.committees.size() != 3) return false;
      const Committee a = w.committees[0], b = w.committees[1], between = w.committees[2];
      if (!(a & b).subset_of(between) || !between.subset_of(a | b) || between.size() != a.size()) return false;
      const ChoiceSet chosen = f(w.profiles[0]);
      return chosen.contains(a) && chosen.contains(b) && !chosen.contains(between);
    }
    case Axiom::excellence:
    case Axiom::party_proportionality: {
      if (w.profiles.size() != 1 || w.committees.size() != 1 || w.parties.size() != 2) return false;
      const Profile& a = w.profiles[0];
      if (!detail::party_list_with(a, w.parties)) return false;
      const CandidateSet pi = w.parties[0], pj = w.parties[1];
      const long ni = detail::supporters(a, pi), nj = detail::supporters(a, pj);
      const bool below = verdict.axiom == Axiom::excellence ? ni < nj : ni * pj.size() < nj * pi.size();
      const Committee winner = w.committees[0];
      return below && f(a).contains(winner) && pi.subset_of(winner) && !pj.subset_of(winner);
    }
    case Axiom::aversion_unanimous: {
      if (w.profiles.size() != 1 || w.parties.size() != 2) return false;
      const Profile& a = w.profiles[0];
      if (!detail::party_list_with(a, w.parties)) return false;
      const CandidateSet pi = w.parties[0], pj = w.parties[1];
      if (pj.size() != 1 || pi == pj) return false;
      const ChoiceSet chosen = f(a);
      const bool unanimous = std::all_of(chosen.begin(), chosen.end(), [&](Committee c) { return c.subset_of(pi); });
      return unanimous && detail::supporters(a, pi) <= detail::supporters(a, pj) * pi.size();
    }
    case Axiom::unanimity_threshold: {
      if (w.profiles.size() != 1 || w.parties.size() != 2) return false;
      const Profile& a = w.profiles[0];
      const CandidateSet pi = w.parties[0];
      const auto s = detect_party_structure(a);
      if (!s) return false;
      const ChoiceSet chosen = f(a);
      const int k = chosen.k();
      if (pi.size() < k) return false;
      long ni = -1;
      bool weak_singletons = true;
      for (std::size_t j = 0; j < s->size(); ++j) {
        if (s->parties[j] == pi) {
          ni = s->counts[j];
          continue;
        }
        if (s->parties[j].size() != 1) return false;
      }
      if (ni < 0) return false;
      for (std::size_t j = 0; j < s->size(); ++j)
        if (s->parties[j] != pi && s->counts[j] * k >= ni) weak_singletons = false;
      const bool unanimous = std::all_of(chosen.begin(), chosen.end(), [&](Committee c) { return c.subset_of(pi); });
      return unanimous != weak_singletons;
    }
  }
  return false;
}

}  // namespace abc
