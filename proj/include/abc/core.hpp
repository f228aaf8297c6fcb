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

// Data model for approval-based committee elections: candidate sets,
// ballots, committees, profiles and their vector representation.

#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/rational.hpp"

namespace abc {

inline constexpr int kMaxCandidates = 31;

inline void require_candidate_count(int m) {
  if (m < 2 || m > kMaxCandidates)
    throw std::invalid_argument("candidate count m=" + std::to_string(m) +
                                " outside [2, " + std::to_string(kMaxCandidates) + "]");
}

// A set of candidates over 0..m-1, stored as a bitmask.
class CandidateSet {
 public:
  constexpr CandidateSet() = default;
  CandidateSet(std::initializer_list<int> members) {
    for (int c : members) insert(c);
  }
  explicit CandidateSet(std::span<const int> members) {
    for (int c : members) insert(c);
  }

  static constexpr CandidateSet from_mask(std::uint32_t mask) {
    CandidateSet s;
    s.bits_ = mask;
    return s;
  }
  static constexpr CandidateSet full(int m) {
    return from_mask(m >= 32 ? ~0u : ((1u << m) - 1u));
  }

  void insert(int c) {
    if (c < 0 || c >= kMaxCandidates)
      throw std::invalid_argument("candidate index " + std::to_string(c) + " out of range");
    bits_ |= 1u << c;
  }
  void erase(int c) { bits_ &= ~(1u << c); }

  constexpr std::uint32_t mask() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int c) const { return c >= 0 && c < 32 && ((bits_ >> c) & 1u); }
  // Largest member + 1, or 0 for the empty set.
  constexpr int span_bound() const { return 32 - std::countl_zero(bits_); }
  constexpr bool subset_of(CandidateSet other) const { return (bits_ & ~other.bits_) == 0; }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr CandidateSet operator&(CandidateSet a, CandidateSet b) {
    return from_mask(a.bits_ & b.bits_);
  }
  friend constexpr CandidateSet operator|(CandidateSet a, CandidateSet b) {
    return from_mask(a.bits_ | b.bits_);
  }
  friend constexpr CandidateSet operator-(CandidateSet a, CandidateSet b) {
    return from_mask(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(CandidateSet a, CandidateSet b) = default;

  // Lexicographic order of the sorted member lists.
  friend std::strong_ordering operator<=>(CandidateSet a, CandidateSet b) {
    std::uint32_t x = a.bits_, y = b.bits_;
    while (x && y) {
      const int cx = std::countr_zero(x), cy = std::countr_zero(y);
      if (cx != cy) return cx <=> cy;
      x &= x - 1;
      y &= y - 1;
    }
    return (x != 0) <=> (y != 0);
  }

 private:
  std::uint32_t bits_ = 0;
};

using Ballot = CandidateSet;
using Committee = CandidateSet;

// "{0,2}"
inline std::string to_string(CandidateSet s) {
  std::string out = "{";
  bool first = true;
  for (int c : s.members()) {
    if (!first) out += ',';
    out += std::to_string(c);
    first = false;
  }
  return out + "}";
}

inline std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) result = result * static_cast<std::uint64_t>(n - r + i) / i;
  return result;
}

// All size-k committees over m candidates in lexicographic order. This order
// is the canonical committee indexing used everywhere else.
inline std::vector<Committee> enumerate_committees(int m, int k) {
  require_candidate_count(m);
  if (k < 1 || k > m - 1)
    throw std::invalid_argument("committee size k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(m - 1) + "]");
  std::vector<Committee> out;
  out.reserve(binomial(m, k));
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(Committee(std::span<const int>(idx)));
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline std::uint64_t ballot_count(int m) { return (std::uint64_t{1} << m) - 1; }

// Fixed enumeration of the non-empty ballots: by size, then lexicographically.
inline std::uint64_t ballot_index(Ballot ballot, int m) {
  require_candidate_count(m);
  if (ballot.empty()) throw std::invalid_argument("empty ballot has no index");
  if (ballot.span_bound() > m)
    throw std::invalid_argument("ballot " + to_string(ballot) + " not valid for m=" +
                                std::to_string(m));
  const int size = ballot.size();
  std::uint64_t index = 0;
  for (int s = 1; s < size; ++s) index += binomial(m, s);
  // Lexicographic rank among size-subsets.
  int prev = -1, pos = 0;
  for (int c : ballot.members()) {
    for (int j = prev + 1; j < c; ++j) index += binomial(m - 1 - j, size - 1 - pos);
    prev = c;
    ++pos;
  }
  return index;
}

inline Ballot index_ballot(std::uint64_t index, int m) {
  require_candidate_count(m);
  if (index >= ballot_count(m))
    throw std::invalid_argument("ballot index " + std::to_string(index) + " out of range");
  int size = 1;
  while (index >= binomial(m, size)) index -= binomial(m, size++);
  Ballot out;
  int next = 0;
  for (int pos = 0; pos < size; ++pos) {
    for (int c = next;; ++c) {
      const std::uint64_t block = binomial(m - 1 - c, size - 1 - pos);
      if (index < block) {
        out.insert(c);
        next = c + 1;
        break;
      }
      index -= block;
    }
  }
  return out;
}

struct Voter {
  int label;
  Ballot ballot;
  friend bool operator==(const Voter&, const Voter&) = default;
};

// A finite electorate with one non-empty approval ballot per voter.
class Profile {
 public:
  Profile(int m, std::vector<Voter> voters) : m_(m), voters_(std::move(voters)) {
    require_candidate_count(m_);
    if (voters_.empty()) throw std::invalid_argument("profile needs at least one voter");
    std::vector<int> labels;
    labels.reserve(voters_.size());
    for (const Voter& v : voters_) {
      if (v.ballot.empty()) throw std::invalid_argument("empty ballot in profile");
      if (v.ballot.span_bound() > m_)
        throw std::invalid_argument("ballot " + to_string(v.ballot) + " not valid for m=" +
                                    std::to_string(m_));
      labels.push_back(v.label);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      throw std::invalid_argument("duplicate voter label in profile");
  }

  // Voters labelled 0,1,2,... in the given order.
  static Profile from_ballots(int m, std::span<const Ballot> ballots) {
    std::vector<Voter> voters;
    voters.reserve(ballots.size());
    for (std::size_t i = 0; i < ballots.size(); ++i)
      voters.push_back({static_cast<int>(i), ballots[i]});
    return Profile(m, std::move(voters));
  }
  static Profile from_ballots(int m, std::initializer_list<Ballot> ballots) {
    return from_ballots(m, std::span<const Ballot>(ballots.begin(), ballots.size()));
  }

  int m() const { return m_; }
  std::size_t size() const { return voters_.size(); }
  std::span<const Voter> voters() const { return voters_; }
  std::vector<Ballot> ballots() const {
    std::vector<Ballot> out;
    out.reserve(voters_.size());
    for (const Voter& v : voters_) out.push_back(v.ballot);
    return out;
  }
  int max_label() const {
    int best = voters_.front().label;
    for (const Voter& v : voters_) best = std::max(best, v.label);
    return best;
  }
  // Union of all ballots.
  CandidateSet approved() const {
    CandidateSet out;
    for (const Voter& v : voters_) out = out | v.ballot;
    return out;
  }

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  int m_;
  std::vector<Voter> voters_;
};

// Profile as a vector over ballot indices. Entries may be negative or
// fractional; absent entries are zero.
class ProfileVector {
 public:
  explicit ProfileVector(int m) : m_(m) { require_candidate_count(m); }

  int m() const { return m_; }
  const std::map<std::uint64_t, Rational>& entries() const { return entries_; }

  Rational at(std::uint64_t index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? Rational(0) : it->second;
  }
  void add(std::uint64_t index, const Rational& value) {
    if (index >= ballot_count(m_))
      throw std::invalid_argument("ballot index " + std::to_string(index) + " out of range");
    Rational& slot = entries_[index];
    slot += value;
    if (slot == 0) entries_.erase(index);
  }
  void set(std::uint64_t index, const Rational& value) {
    if (index >= ballot_count(m_))
      throw std::invalid_argument("ballot index " + std::to_string(index) + " out of range");
    if (value == 0) entries_.erase(index);
    else entries_[index] = value;
  }

  friend ProfileVector operator+(ProfileVector a, const ProfileVector& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("profile vectors over different m");
    for (const auto& [i, v] : b.entries_) a.add(i, v);
    return a;
  }
  friend ProfileVector operator*(const Rational& lambda, ProfileVector v) {
    if (lambda == 0) {
      v.entries_.clear();
      return v;
    }
    for (auto& [i, x] : v.entries_) x *= lambda;
    return v;
  }
  friend bool operator==(const ProfileVector&, const ProfileVector&) = default;

 private:
  int m_;
  std::map<std::uint64_t, Rational> entries_;
};

inline ProfileVector profile_to_vector(const Profile& profile) {
  ProfileVector v(profile.m());
  for (const Voter& voter : profile.voters()) v.add(ballot_index(voter.ballot, profile.m()), 1);
  return v;
}

// Inverse of profile_to_vector for non-negative integer vectors. Ballots are
// emitted in index order, voters labelled 0,1,2,...
inline Profile vector_to_profile(const ProfileVector& v) {
  std::vector<Ballot> ballots;
  for (const auto& [index, count] : v.entries()) {
    if (count < 0 || boost::multiprecision::denominator(count) != 1)
      throw std::invalid_argument("vector entry " + to_string(count) +
                                  " is not a voter multiplicity");
    const Ballot b = index_ballot(index, v.m());
    for (BigInt c = boost::multiprecision::numerator(count); c > 0; --c) ballots.push_back(b);
  }
  return Profile::from_ballots(v.m(), ballots);
}

// A + A'. With `relabel`, b's voters get fresh labels above a's.
inline Profile add_profiles(const Profile& a, const Profile& b, bool relabel = false) {
  if (a.m() != b.m()) throw std::invalid_argument("profiles over different candidate sets");
  std::vector<Voter> voters(a.voters().begin(), a.voters().end());
  int next = a.max_label() + 1;
  for (const Voter& v : b.voters()) voters.push_back({relabel ? next++ : v.label, v.ballot});
  if (!relabel) {
    try {
      return Profile(a.m(), std::move(voters));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("profiles share voter labels; pass relabel to disjoin them");
    }
  }
  return Profile(a.m(), std::move(voters));
}

// lambda copies of the profile with fresh labels 0,1,2,...
inline Profile scale_profile(const Profile& a, int lambda) {
  if (lambda < 1) throw std::invalid_argument("scale factor must be >= 1");
  std::vector<Voter> voters;
  voters.reserve(a.size() * static_cast<std::size_t>(lambda));
  int label = 0;
  for (int copy = 0; copy < lambda; ++copy)
    for (const Voter& v : a.voters()) voters.push_back({label++, v.ballot});
  return Profile(a.m(), std::move(voters));
}

inline bool is_permutation_of_range(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (int x : perm) {
    if (x < 0 || x >= n || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

inline CandidateSet permute(CandidateSet s, std::span<const int> perm) {
  std::uint32_t out = 0;
  for (std::uint32_t b = s.mask(); b; b &= b - 1) out |= 1u << perm[std::countr_zero(b)];
  return CandidateSet::from_mask(out);
}

inline Profile apply_candidate_permutation(const Profile& profile, std::span<const int> perm) {
  if (!is_permutation_of_range(perm, profile.m()))
    throw std::invalid_argument("candidate permutation is not a bijection on 0..m-1");
  std::vector<Voter> voters;
  voters.reserve(profile.size());
  for (const Voter& v : profile.voters()) voters.push_back({v.label, permute(v.ballot, perm)});
  return Profile(profile.m(), std::move(voters));
}

// Sorted ballot indices of the profile's multiset of ballots.
inline std::vector<std::uint64_t> ballot_index_sequence(std::span<const Ballot> ballots, int m) {
  std::vector<std::uint64_t> seq;
  seq.reserve(ballots.size());
  for (Ballot b : ballots) seq.push_back(ballot_index(b, m));
  std::sort(seq.begin(), seq.end());
  return seq;
}

// The full tied output of a rule: a non-empty set of equal-size committees,
// kept in committee enumeration order.
class ChoiceSet {
 public:
  explicit ChoiceSet(std::vector<Committee> committees) : committees_(std::move(committees)) {
    if (committees_.empty()) throw std::invalid_argument("choice set must be non-empty");
    const int k = committees_.front().size();
    for (Committee w : committees_)
      if (w.size() != k) throw std::invalid_argument("choice set mixes committee sizes");
    std::sort(committees_.begin(), committees_.end());
    committees_.erase(std::unique(committees_.begin(), committees_.end()), committees_.end());
  }
  ChoiceSet(std::initializer_list<Committee> committees)
      : ChoiceSet(std::vector<Committee>(committees)) {}

  int k() const { return committees_.front().size(); }
  std::size_t size() const { return committees_.size(); }
  std::span<const Committee> committees() const { return committees_; }
  auto begin() const { return committees_.begin(); }
  auto end() const { return committees_.end(); }

  bool contains(Committee w) const {
    return std::binary_search(committees_.begin(), committees_.end(), w);
  }
  bool subset_of(const ChoiceSet& other) const {
    return std::includes(other.committees_.begin(), other.committees_.end(),
                         committees_.begin(), committees_.end());
  }
  // Empty intersections are returned as an empty vector, not a ChoiceSet.
  std::vector<Committee> intersection(const ChoiceSet& other) const {
    std::vector<Committee> out;
    std::set_intersection(committees_.begin(), committees_.end(), other.committees_.begin(),
                          other.committees_.end(), std::back_inserter(out));
    return out;
  }

  friend bool operator==(const ChoiceSet&, const ChoiceSet&) = default;

 private:
  std::vector<Committee> committees_;
};

inline std::string to_string(const ChoiceSet& choices) {
  std::string out;
  for (Committee w : choices) {
    if (!out.empty()) out += ' ';
    out += to_string(w);
  }
  return out;
}

inline ChoiceSet permute(const ChoiceSet& choices, std::span<const int> perm) {
  std::vector<Committee> out;
  out.reserve(choices.size());
  for (Committee w : choices) out.push_back(permute(w, perm));
  return ChoiceSet(std::move(out));
}

inline constexpr int kMaxCanonicalCandidates = 8;

// Least representative of the profile's orbit under voter relabelling and
// candidate renaming. Profiles are ordered by their sorted ballot-index
// sequence; the result is the vector of the least one.
inline ProfileVector canonical_form(const Profile& profile) {
  const int m = profile.m();
  if (m > kMaxCanonicalCandidates)
    throw std::invalid_argument("canonical form limited to m <= 8");
  const std::vector<Ballot> ballots = profile.ballots();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint64_t> best = ballot_index_sequence(ballots, m);
  std::vector<Ballot> permuted(ballots.size());
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (std::size_t i = 0; i < ballots.size(); ++i) permuted[i] = permute(ballots[i], perm);
    auto seq = ballot_index_sequence(permuted, m);
    if (seq < best) best = std::move(seq);
  }
  ProfileVector out(m);
  for (std::uint64_t index : best) out.add(index, 1);
  return out;
}

}  // namespace abc
