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

// Instance checkers for the basic axioms of ABC voting rules. A checker
// decides one concrete instance; quantifying over profiles is the job of
// the search module. Every failing verdict carries a witness that
// replay.hpp can re-verify against the rule.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/core.hpp"
#include "abc/rules.hpp"

namespace abc {

enum class Axiom {
  anonymity,
  neutrality,
  consistency,
  continuity,
  weak_efficiency,
  independence_of_losers,
  choice_set_convexity,
  excellence,
  party_proportionality,
  aversion_unanimous,
  unanimity_threshold,
};

inline const std::vector<std::pair<Axiom, std::string>>& axiom_ids() {
  static const std::vector<std::pair<Axiom, std::string>> ids{
      {Axiom::anonymity, "anonymity"},
      {Axiom::neutrality, "neutrality"},
      {Axiom::consistency, "consistency"},
      {Axiom::continuity, "continuity"},
      {Axiom::weak_efficiency, "weak-efficiency"},
      {Axiom::independence_of_losers, "iol"},
      {Axiom::choice_set_convexity, "convexity"},
      {Axiom::excellence, "excellence"},
      {Axiom::party_proportionality, "party-prop"},
      {Axiom::aversion_unanimous, "aversion"},
      {Axiom::unanimity_threshold, "unanimity-threshold"},
  };
  return ids;
}

inline const std::string& axiom_id(Axiom axiom) {
  for (const auto& [a, id] : axiom_ids())
    if (a == axiom) return id;
  throw std::logic_error("unnamed axiom");
}

inline Axiom parse_axiom(const std::string& id) {
  for (const auto& [a, name] : axiom_ids())
    if (name == id) return a;
  throw std::invalid_argument("unknown axiom '" + id + "'");
}

// Everything needed to replay a violation. Which fields are populated
// depends on the axiom; see replay.hpp.
struct Witness {
  std::vector<Profile> profiles;
  std::vector<Committee> committees;
  std::vector<int> permutation;
  std::vector<CandidateSet> parties;
  std::optional<long> lambda;
  std::string note;
};

struct AxiomVerdict {
  Axiom axiom;
  bool passed = true;
  std::optional<Witness> witness;
  // Sub-instances examined (permutations, splits, reductions, ...).
  std::uint64_t instances = 0;

  static AxiomVerdict pass(Axiom a, std::uint64_t instances = 1) { return {a, true, std::nullopt, instances}; }
  static AxiomVerdict fail(Axiom a, Witness w, std::uint64_t instances = 1) {
    return {a, false, std::move(w), instances};
  }
};

// Exhaustive enumeration or a seeded random sample of the tested objects.
struct Sampling {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t count = 0;

  static Sampling all() { return {}; }
  static Sampling sample(std::uint64_t seed, std::size_t count) { return {false, seed, count}; }
};

inline constexpr int kMaxExhaustivePermutation = 8;

namespace detail {

// Fisher-Yates driven directly by mt19937_64 so the sequence is identical
// across standard library implementations.
inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % static_cast<std::uint64_t>(i + 1)]);
  return perm;
}

// Calls visit(perm) for every tested permutation of 0..n-1 (identity
// excluded) until it returns false. Returns the number visited.
template <class Visit>
std::uint64_t for_each_permutation(int n, const Sampling& mode, Visit visit) {
  std::uint64_t visited = 0;
  if (mode.exhaustive) {
    if (n > kMaxExhaustivePermutation)
      throw std::length_error("exhaustive permutation mode limited to n <= " +
                              std::to_string(kMaxExhaustivePermutation));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
      ++visited;
      if (!visit(perm)) break;
    }
    return visited;
  }
  std::mt19937_64 rng(mode.seed);
  for (std::size_t i = 0; i < mode.count; ++i) {
    ++visited;
    if (!visit(random_permutation(n, rng))) break;
  }
  return visited;
}

// Subsets of `universe` with exactly r members, in increasing mask order.
inline std::vector<CandidateSet> subsets_of_size(CandidateSet universe, int r) {
  std::vector<CandidateSet> out;
  const std::vector<int> members = universe.members();
  const int n = static_cast<int>(members.size());
  if (r < 0 || r > n) return out;
  for (std::uint32_t pick = 0; pick < (1u << n); ++pick) {
    if (std::popcount(pick) != r) continue;
    CandidateSet s;
    for (int i = 0; i < n; ++i)
      if ((pick >> i) & 1u) s.insert(members[i]);
    out.push_back(s);
  }
  return out;
}

}  // namespace detail

// Voter at position i receives the label of position perm[i]. Voters are
// listed in label order afterwards.
inline Profile apply_voter_permutation(const Profile& profile, std::span<const int> perm) {
  if (!is_permutation_of_range(perm, static_cast<int>(profile.size())))
    throw std::invalid_argument("voter permutation is not a bijection");
  std::vector<Voter> voters;
  voters.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i)
    voters.push_back({profile.voters()[perm[i]].label, profile.voters()[i].ballot});
  std::sort(voters.begin(), voters.end(), [](const Voter& a, const Voter& b) { return a.label < b.label; });
  return Profile(profile.m(), std::move(voters));
}

template <ProfileRule R>
AxiomVerdict check_anonymity(const R& rule, const Profile& profile, const Sampling& mode = Sampling::all()) {
  const ChoiceSet base = rule(profile);
  std::optional<Witness> witness;
  const std::uint64_t n = detail::for_each_permutation(
      static_cast<int>(profile.size()), mode, [&](const std::vector<int>& perm) {
        const Profile permuted = apply_voter_permutation(profile, perm);
        if (ChoiceSet(rule(permuted)) == base) return true;
        witness = Witness{{profile, permuted}, {}, perm, {}, std::nullopt, "voter relabelling changes the outcome"};
        return false;
      });
  if (witness) return AxiomVerdict::fail(Axiom::anonymity, std::move(*witness), n);
  return AxiomVerdict::pass(Axiom::anonymity, n);
}

template <ProfileRule R>
AxiomVerdict check_neutrality(const R& rule, const Profile& profile, const Sampling& mode = Sampling::all()) {
  const ChoiceSet base = rule(profile);
  std::optional<Witness> witness;
  const std::uint64_t n = detail::for_each_permutation(profile.m(), mode, [&](const std::vector<int>& perm) {
    const ChoiceSet moved = rule(apply_candidate_permutation(profile, perm));
    if (moved == permute(base, perm)) return true;
    witness = Witness{{profile}, {}, perm, {}, std::nullopt, "renaming candidates does not rename the outcome"};
    return false;
  });
  if (witness) return AxiomVerdict::fail(Axiom::neutrality, std::move(*witness), n);
  return AxiomVerdict::pass(Axiom::neutrality, n);
}

// f(a + b) = f(a) & f(b) whenever the intersection is non-empty. b is
// relabelled when its labels collide with a's.
template <ProfileRule R>
AxiomVerdict check_consistency_pair(const R& rule, const Profile& a, const Profile& b) {
  bool overlap = false;
  for (const Voter& va : a.voters())
    for (const Voter& vb : b.voters()) overlap = overlap || va.label == vb.label;
  const Profile joint = add_profiles(a, b, overlap);
  const Profile b_disjoint = overlap ? Profile(b.m(), std::vector<Voter>(joint.voters().begin() + a.size(),
                                                                         joint.voters().end()))
                                     : b;
  const ChoiceSet fa = rule(a), fb = rule(b_disjoint);
  const std::vector<Committee> common = fa.intersection(fb);
  if (common.empty()) return AxiomVerdict::pass(Axiom::consistency);
  const ChoiceSet fj = rule(joint);
  if (fj == ChoiceSet(common)) return AxiomVerdict::pass(Axiom::consistency);
  return AxiomVerdict::fail(Axiom::consistency,
                            Witness{{a, b_disjoint}, {}, {}, {}, std::nullopt,
                                    "joint electorate does not choose the common winners"});
}

inline constexpr std::size_t kDefaultSplitVoterCap = 10;

// Every non-trivial bipartition of the electorate (2^(n-1) - 1 of them).
template <ProfileRule R>
AxiomVerdict check_consistency_splits(const R& rule, const Profile& profile,
                                      std::size_t max_voters = kDefaultSplitVoterCap) {
  const std::size_t n = profile.size();
  if (n > max_voters)
    throw std::length_error("consistency splits capped at " + std::to_string(max_voters) + " voters");
  std::uint64_t tested = 0;
  // Voter 0 always lands in the first part.
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); mask += 2) {
    std::vector<Voter> left, right;
    for (std::size_t i = 0; i < n; ++i)
      ((mask >> i) & 1u ? left : right).push_back(profile.voters()[i]);
    ++tested;
    AxiomVerdict v = check_consistency_pair(rule, Profile(profile.m(), left), Profile(profile.m(), right));
    if (!v.passed) {
      v.instances = tested;
      return v;
    }
  }
  return AxiomVerdict::pass(Axiom::consistency, tested);
}

// lambda*a + b with fresh labels.
inline Profile continuity_mix(const Profile& a, const Profile& b, long lambda) {
  return add_profiles(scale_profile(a, static_cast<int>(lambda)), b, true);
}

// Smallest lambda <= cap with f(lambda*a + b) contained in f(a).
template <ProfileRule R>
std::optional<long> find_min_continuity_lambda(const R& rule, const Profile& a, const Profile& b, long cap) {
  if (cap < 1) throw std::invalid_argument("lambda cap must be >= 1");
  const ChoiceSet fa = rule(a);
  for (long lambda = 1; lambda <= cap; ++lambda)
    if (ChoiceSet(rule(continuity_mix(a, b, lambda))).subset_of(fa)) return lambda;
  return std::nullopt;
}

// Fails when no lambda up to the cap works; continuity itself is only
// semi-decidable, so a failure here means "not found within cap".
template <ProfileRule R>
AxiomVerdict check_continuity(const R& rule, const Profile& a, const Profile& b, long cap) {
  const auto lambda = find_min_continuity_lambda(rule, a, b, cap);
  if (lambda) {
    AxiomVerdict v = AxiomVerdict::pass(Axiom::continuity, static_cast<std::uint64_t>(*lambda));
    return v;
  }
  return AxiomVerdict::fail(Axiom::continuity,
                            Witness{{a, b}, {}, {}, {}, cap, "no lambda within cap"},
                            static_cast<std::uint64_t>(cap));
}

template <ProfileRule R>
AxiomVerdict check_weak_efficiency(const R& rule, const Profile& profile) {
  const ChoiceSet chosen = rule(profile);
  const CandidateSet everyone = CandidateSet::full(profile.m());
  const CandidateSet unapproved = everyone - profile.approved();
  std::uint64_t tested = 0;
  for (Committee w : chosen) {
    for (int c : (w & unapproved).members()) {
      for (int c2 : (everyone - w).members()) {
        Committee swapped = w;
        swapped.erase(c);
        swapped.insert(c2);
        ++tested;
        if (!chosen.contains(swapped))
          return AxiomVerdict::fail(Axiom::weak_efficiency,
                                    Witness{{profile}, {w, swapped}, {}, {}, std::nullopt,
                                            "swapping out unapproved candidate " + std::to_string(c) +
                                                " for " + std::to_string(c2) + " loses"},
                                    tested);
      }
    }
  }
  return AxiomVerdict::pass(Axiom::weak_efficiency, tested);
}

inline constexpr std::uint64_t kIolExhaustiveCap = std::uint64_t{1} << 16;

namespace detail {

// Ways voter ballot b can shrink while keeping W & b: drop any subset of
// b - W as long as something remains. The first option is "drop nothing".
inline std::vector<Ballot> reductions(Ballot b, Committee w) {
  std::vector<Ballot> out;
  const CandidateSet droppable = b - w;
  const std::vector<int> members = droppable.members();
  const int n = static_cast<int>(members.size());
  for (std::uint32_t pick = 0; pick < (1u << n); ++pick) {
    Ballot r = b;
    for (int i = 0; i < n; ++i)
      if ((pick >> i) & 1u) r.erase(members[i]);
    if (!r.empty()) out.push_back(r);
  }
  return out;
}

}  // namespace detail

// For each winner W, every profile obtained by voters disapproving some
// candidates outside W must still choose W. Reductions are enumerated as
// an odometer with voter 0 as the fastest digit.
template <ProfileRule R>
AxiomVerdict check_independence_of_losers(const R& rule, const Profile& profile,
                                          const Sampling& mode = Sampling::all()) {
  const ChoiceSet chosen = rule(profile);
  const std::size_t n = profile.size();
  std::uint64_t tested = 0;
  std::mt19937_64 rng(mode.seed);
  for (Committee w : chosen) {
    std::vector<std::vector<Ballot>> options;
    std::uint64_t combos = 1;
    for (const Voter& v : profile.voters()) {
      options.push_back(detail::reductions(v.ballot, w));
      combos *= options.back().size();
      if (mode.exhaustive && combos > kIolExhaustiveCap)
        throw std::length_error("independence-of-losers reductions exceed 2^16 for committee " +
                                to_string(w) + "; use sampling");
    }
    auto test = [&](const std::vector<std::size_t>& digits) -> std::optional<AxiomVerdict> {
      std::vector<Voter> voters;
      voters.reserve(n);
      for (std::size_t i = 0; i < n; ++i)
        voters.push_back({profile.voters()[i].label, options[i][digits[i]]});
      const Profile reduced(profile.m(), std::move(voters));
      ++tested;
      if (ChoiceSet(rule(reduced)).contains(w)) return std::nullopt;
      return AxiomVerdict::fail(Axiom::independence_of_losers,
                                Witness{{profile, reduced}, {w}, {}, {}, std::nullopt,
                                        "winner " + to_string(w) + " drops out after losers are disapproved"},
                                tested);
    };
    std::vector<std::size_t> digits(n, 0);
    if (mode.exhaustive) {
      while (true) {
        std::size_t i = 0;
        while (i < n && ++digits[i] == options[i].size()) digits[i++] = 0;
        if (i == n) break;
        if (auto fail = test(digits)) return *fail;
      }
    } else {
      if (combos == 1) continue;
      for (std::size_t s = 0; s < mode.count; ++s) {
        for (std::size_t i = 0; i < n; ++i) digits[i] = rng() % options[i].size();
        if (auto fail = test(digits)) return *fail;
      }
    }
  }
  return AxiomVerdict::pass(Axiom::independence_of_losers, tested);
}

// Committees of size |lower|+r between lower and upper.
inline std::vector<Committee> committees_between(Committee lower, Committee upper, int k) {
  std::vector<Committee> out;
  for (CandidateSet extra : detail::subsets_of_size(upper - lower, k - lower.size()))
    out.push_back(lower | extra);
  return out;
}

// Least superset closed under taking committees between two members.
inline ChoiceSet convex_hull(const ChoiceSet& choices) {
  const int k = choices.k();
  std::set<Committee> hull(choices.begin(), choices.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Committee> current(hull.begin(), hull.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j)
        for (Committee between : committees_between(current[i] & current[j], current[i] | current[j], k))
          grew = hull.insert(between).second || grew;
  }
  return ChoiceSet(std::vector<Committee>(hull.begin(), hull.end()));
}

template <ProfileRule R>
AxiomVerdict check_choice_set_convexity(const R& rule, const Profile& profile) {
  const ChoiceSet chosen = rule(profile);
  const auto& ws = chosen.committees();
  std::uint64_t tested = 0;
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j)
      for (Committee between : committees_between(ws[i] & ws[j], ws[i] | ws[j], chosen.k())) {
        ++tested;
        if (!chosen.contains(between))
          return AxiomVerdict::fail(Axiom::choice_set_convexity,
                                    Witness{{profile}, {ws[i], ws[j], between}, {}, {}, std::nullopt,
                                            to_string(between) + " lies between two winners but loses"},
                                    tested);
      }
  return AxiomVerdict::pass(Axiom::choice_set_convexity, tested);
}

}  // namespace abc
