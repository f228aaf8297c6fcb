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

// Party-list profiles and the axioms that only constrain them: excellence,
// party-proportionality, aversion to unanimous committees, and the
// k-threshold variant of the latter. Also generators for the profile
// families that separate AV, PAV and SAV from the rest of their classes.

#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/axioms.hpp"
#include "abc/core.hpp"
#include "abc/rules.hpp"

namespace abc {

// Parties partition 0..m-1. Candidates nobody approves form singleton
// parties with zero supporters.
struct PartyListStructure {
  std::vector<CandidateSet> parties;
  std::vector<long> counts;

  std::size_t size() const { return parties.size(); }
};

class NotPartyList : public std::invalid_argument {
 public:
  NotPartyList() : std::invalid_argument("profile is not a party-list profile") {}
};

inline std::optional<PartyListStructure> detect_party_structure(const Profile& profile) {
  std::vector<std::pair<CandidateSet, long>> supported;
  for (const Voter& v : profile.voters()) {
    auto it = std::find_if(supported.begin(), supported.end(),
                           [&](const auto& e) { return e.first == v.ballot; });
    if (it != supported.end()) {
      ++it->second;
      continue;
    }
    for (const auto& [party, count] : supported)
      if (!(party & v.ballot).empty()) return std::nullopt;
    supported.emplace_back(v.ballot, 1);
  }
  for (int c : (CandidateSet::full(profile.m()) - profile.approved()).members())
    supported.emplace_back(CandidateSet{c}, 0);
  std::sort(supported.begin(), supported.end());
  PartyListStructure out;
  for (const auto& [party, count] : supported) {
    out.parties.push_back(party);
    out.counts.push_back(count);
  }
  return out;
}

inline PartyListStructure require_party_structure(const Profile& profile) {
  auto structure = detect_party_structure(profile);
  if (!structure) throw NotPartyList();
  return *structure;
}

// "# party 0 1 n=2" lines for annotating exported profiles.
inline std::string format_party_comments(const PartyListStructure& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += "# party";
    for (int c : s.parties[i].members()) out += " " + std::to_string(c);
    out += " n=" + std::to_string(s.counts[i]) + "\n";
  }
  return out;
}

namespace detail {

inline Witness party_witness(const Profile& profile, std::optional<Committee> w, CandidateSet pi,
                             CandidateSet pj, std::string note) {
  Witness out{{profile}, {}, {}, {pi, pj}, std::nullopt, std::move(note)};
  if (w) out.committees.push_back(*w);
  return out;
}

// Shared shape of excellence and party-proportionality: whenever party i
// ranks strictly below party j, P_i inside W forces P_j inside W.
template <ProfileRule R, class Below>
AxiomVerdict check_party_implication(Axiom axiom, const R& rule, const Profile& profile, Below below) {
  const PartyListStructure s = require_party_structure(profile);
  const ChoiceSet chosen = rule(profile);
  std::uint64_t tested = 0;
  for (Committee w : chosen)
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s.parties[i].subset_of(w)) continue;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (i == j || !below(s, i, j)) continue;
        ++tested;
        if (!s.parties[j].subset_of(w))
          return AxiomVerdict::fail(axiom,
                                    party_witness(profile, w, s.parties[i], s.parties[j],
                                                  "winner contains " + to_string(s.parties[i]) +
                                                      " but not the stronger " + to_string(s.parties[j])),
                                    tested);
      }
    }
  return AxiomVerdict::pass(axiom, tested);
}

}  // namespace detail

template <ProfileRule R>
AxiomVerdict check_excellence(const R& rule, const Profile& profile) {
  return detail::check_party_implication(Axiom::excellence, rule, profile,
                                         [](const PartyListStructure& s, std::size_t i, std::size_t j) {
                                           return s.counts[i] < s.counts[j];
                                         });
}

template <ProfileRule R>
AxiomVerdict check_party_proportionality(const R& rule, const Profile& profile) {
  return detail::check_party_implication(
      Axiom::party_proportionality, rule, profile,
      [](const PartyListStructure& s, std::size_t i, std::size_t j) {
        // n_i / |P_i| < n_j / |P_j|
        return s.counts[i] * s.parties[j].size() < s.counts[j] * s.parties[i].size();
      });
}

namespace detail {

inline std::optional<std::size_t> unanimous_party(const PartyListStructure& s, const ChoiceSet& chosen) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::all_of(chosen.begin(), chosen.end(), [&](Committee w) { return w.subset_of(s.parties[i]); }))
      return i;
  return std::nullopt;
}

}  // namespace detail

// If every winner lies inside one party P_i, then n_i/|P_i| > n_j for every
// other singleton party P_j.
template <ProfileRule R>
AxiomVerdict check_aversion_unanimous(const R& rule, const Profile& profile) {
  const PartyListStructure s = require_party_structure(profile);
  const ChoiceSet chosen = rule(profile);
  const auto i = detail::unanimous_party(s, chosen);
  if (!i) return AxiomVerdict::pass(Axiom::aversion_unanimous, 0);
  std::uint64_t tested = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j == *i || s.parties[j].size() != 1) continue;
    ++tested;
    if (s.counts[*i] <= s.counts[j] * s.parties[*i].size())
      return AxiomVerdict::fail(Axiom::aversion_unanimous,
                                detail::party_witness(profile, std::nullopt, s.parties[*i], s.parties[j],
                                                      "all winners inside " + to_string(s.parties[*i]) +
                                                          " without enough support per member"),
                                tested);
  }
  return AxiomVerdict::pass(Axiom::aversion_unanimous, tested);
}

// k-threshold variant: on profiles made of one party P_i with |P_i| >= k
// plus singleton parties, every winner lies inside P_i exactly when
// n_j < n_i/k for all singleton parties P_j. Other profiles pass vacuously.
template <ProfileRule R>
AxiomVerdict check_unanimity_threshold(const R& rule, const Profile& profile) {
  const PartyListStructure s = require_party_structure(profile);
  const ChoiceSet chosen = rule(profile);
  const int k = chosen.k();
  std::uint64_t tested = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.parties[i].size() < k) continue;
    bool others_singletons = true;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (j != i && s.parties[j].size() != 1) others_singletons = false;
    if (!others_singletons) continue;
    ++tested;
    const bool unanimous =
        std::all_of(chosen.begin(), chosen.end(), [&](Committee w) { return w.subset_of(s.parties[i]); });
    std::optional<std::size_t> blocker;
    for (std::size_t j = 0; j < s.size() && !blocker; ++j)
      if (j != i && s.counts[j] * k >= s.counts[i]) blocker = j;
    if (unanimous == !blocker) continue;
    const CandidateSet pj = blocker ? s.parties[*blocker] : CandidateSet{};
    return AxiomVerdict::fail(Axiom::unanimity_threshold,
                              detail::party_witness(profile, std::nullopt, s.parties[i], pj,
                                                    unanimous ? "unanimous despite a strong singleton party"
                                                              : "not unanimous although every singleton is weak"),
                              tested);
  }
  return AxiomVerdict::pass(Axiom::unanimity_threshold, tested);
}

enum class WitnessCase { high, low };

namespace detail {

// `main_voters` voters approve {0..l-1}; every other candidate is a
// singleton party with t+1 (high) or t-1 (low) supporters.
inline Profile party_profile(int l, long main_voters, long t, int m, WitnessCase which) {
  std::vector<Ballot> ballots;
  Ballot main;
  for (int c = 0; c < l; ++c) main.insert(c);
  for (long i = 0; i < main_voters; ++i) ballots.push_back(main);
  const long singles = which == WitnessCase::high ? t + 1 : t - 1;
  for (int c = l; c < m; ++c)
    for (long i = 0; i < singles; ++i) ballots.push_back(Ballot{c});
  return Profile::from_ballots(m, ballots);
}

inline void require_range(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace detail

// Two voters approve {0}, one voter approves {1..k}: any rule ignoring
// single approvals (s(1) = 0 or alpha_1 = 0) elects {1..k}.
inline Profile gen_unit_score_witness_profile(int k, int m) {
  detail::require_range(k >= 1 && m > k, "need 1 <= k < m");
  Ballot rest;
  for (int c = 1; c <= k; ++c) rest.insert(c);
  return Profile::from_ballots(m, {Ballot{0}, Ballot{0}, rest});
}

// t voters on {0..l-1}, singletons at t+1 or t-1.
inline Profile gen_excellence_witness_profile(int l, long t, int k, int m, WitnessCase which) {
  detail::require_range(2 <= l && l <= k && t >= 2 && m > k && k >= 1,
                        "excellence witness needs 2 <= l <= k < m and t >= 2");
  return detail::party_profile(l, t, t, m, which);
}

// l*t voters on {0..l-1}, singletons at t+1 or t-1.
inline Profile gen_pav_witness_profile(int l, long t, int k, int m, WitnessCase which) {
  detail::require_range(2 <= l && l <= k && t >= 2 && m > k && k >= 1,
                        "PAV witness needs 2 <= l <= k < m and t >= 2");
  return detail::party_profile(l, l * t, t, m, which);
}

// l*t voters on {0..l-1}, singletons at t+1 or t-1; l may exceed k.
inline Profile gen_sav_witness_profile(int l, long t, int k, int m, WitnessCase which) {
  detail::require_range(2 <= l && l <= m - 1 && t >= 2 && k >= 1 && k <= m - 1,
                        "SAV witness needs 2 <= l <= m-1, 1 <= k <= m-1 and t >= 2");
  return detail::party_profile(l, l * t, t, m, which);
}

}  // namespace abc
