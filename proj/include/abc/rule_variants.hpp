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

// Rules outside the ABC scoring family. Each one breaks exactly one of the
// axioms that scoring rules satisfy, which makes them useful as negative
// controls for the checkers and the separation suite.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "abc/core.hpp"
#include "abc/rules.hpp"

namespace abc {

// Elects the k candidates with the lowest approval scores.
inline AnyRule min_approval_rule(int k, int m) {
  const Rule av = named_rule("av", k, m);
  return AnyRule("min-approval", [av](const Profile& p) {
    return detail::argmax_committees(av.m(), av.k(), {}, [&](Committee w) {
      return -committee_score(av, p, w);
    });
  });
}

// Winners of `primary`, with ties broken by maximizing `secondary`'s score.
inline AnyRule lexicographic_refinement(const Rule& primary, const Rule& secondary) {
  return AnyRule(primary.name() + ">" + secondary.name(), [primary, secondary](const Profile& p) {
    const ChoiceSet first = winners(primary, p);
    Rational best;
    std::vector<Committee> out;
    for (Committee w : first) {
      const Rational s = committee_score(secondary, p, w);
      if (out.empty() || s > best) {
        out.assign({w});
        best = s;
      } else if (s == best) {
        out.push_back(w);
      }
    }
    return ChoiceSet(std::move(out));
  });
}

// Adds a fixed bonus to every committee containing `favored`.
inline AnyRule candidate_bonus_rule(const Rule& base, int favored, Rational bonus) {
  return AnyRule(base.name() + "+bonus" + std::to_string(favored), [=](const Profile& p) {
    return detail::argmax_committees(base.m(), base.k(), {}, [&](Committee w) {
      Rational s = committee_score(base, p, w);
      if (w.contains(favored)) s += bonus;
      return s;
    });
  });
}

// The voter with the smallest label decides alone.
inline AnyRule dictator_rule(const Rule& base) {
  return AnyRule(base.name() + "-dictator", [base](const Profile& p) {
    const Voter* first = &p.voters().front();
    for (const Voter& v : p.voters())
      if (v.label < first->label) first = &v;
    return winners(base, Profile(p.m(), {*first}));
  });
}

// Looks up the anonymized profile in a fixed table and falls back to `base`.
inline AnyRule table_rule(std::string name, const Rule& base,
                          std::vector<std::pair<Profile, ChoiceSet>> table) {
  std::vector<std::pair<ProfileVector, ChoiceSet>> keyed;
  for (auto& [profile, choice] : table) keyed.emplace_back(profile_to_vector(profile), choice);
  return AnyRule(std::move(name), [base, keyed = std::move(keyed)](const Profile& p) {
    const ProfileVector v = profile_to_vector(p);
    for (const auto& [key, choice] : keyed)
      if (key == v) return choice;
    return winners(base, p);
  });
}

}  // namespace abc
