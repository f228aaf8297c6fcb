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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "abc/core.hpp"
#include "oracle.hpp"

namespace abc {
namespace {

TEST(Committees, LexicographicOrder) {
  const auto c = enumerate_committees(3, 2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], Committee({0, 1}));
  EXPECT_EQ(c[1], Committee({0, 2}));
  EXPECT_EQ(c[2], Committee({1, 2}));
  const auto s = enumerate_committees(4, 1);
  ASSERT_EQ(s.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(s[i], Committee({i}));
  EXPECT_EQ(enumerate_committees(5, 2).size(), 10u);
}

TEST(Committees, CountsAndDistinctness) {
  for (int m = 2; m <= 12; ++m)
    for (int k = 1; k < m; ++k) {
      const auto c = enumerate_committees(m, k);
      EXPECT_EQ(c.size(), binomial(m, k));
      EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
      EXPECT_EQ(std::adjacent_find(c.begin(), c.end()), c.end());
      for (Committee w : c) EXPECT_EQ(w.size(), k);
    }
}

TEST(Committees, RejectsBadRange) {
  EXPECT_THROW(enumerate_committees(1, 1), std::invalid_argument);
  EXPECT_THROW(enumerate_committees(3, 0), std::invalid_argument);
  EXPECT_THROW(enumerate_committees(3, 3), std::invalid_argument);
}

TEST(BallotIndex, SizeThenLex) {
  EXPECT_EQ(ballot_index({0}, 2), 0u);
  EXPECT_EQ(ballot_index({1}, 2), 1u);
  EXPECT_EQ(ballot_index({0, 1}, 2), 2u);
  EXPECT_EQ(ballot_index({0, 2}, 3), 4u);
  const std::vector<Ballot> order{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (std::uint64_t i = 0; i < order.size(); ++i) {
    EXPECT_EQ(ballot_index(order[i], 3), i);
    EXPECT_EQ(index_ballot(i, 3), order[i]);
  }
}

TEST(BallotIndex, MatchesOracleOrderUpToTen) {
  for (int m = 2; m <= 10; ++m) {
    const auto order = oracle::ballot_order(m);
    ASSERT_EQ(order.size(), ballot_count(m));
    for (std::uint64_t i = 0; i < order.size(); ++i) {
      const Ballot b = CandidateSet::from_mask(order[i]);
      ASSERT_EQ(ballot_index(b, m), i) << "m=" << m;
      ASSERT_EQ(index_ballot(i, m), b);
    }
  }
}

TEST(BallotIndex, Errors) {
  EXPECT_THROW(ballot_index(Ballot{}, 3), std::invalid_argument);
  EXPECT_THROW(ballot_index({3}, 3), std::invalid_argument);
  EXPECT_THROW(index_ballot(7, 3), std::invalid_argument);
}

TEST(ProfileTest, Validation) {
  EXPECT_THROW(Profile(3, {}), std::invalid_argument);
  EXPECT_THROW(Profile(3, {{0, {0}}, {0, {1}}}), std::invalid_argument);
  EXPECT_THROW(Profile(3, {{0, Ballot{}}}), std::invalid_argument);
  EXPECT_THROW(Profile(3, {{0, {3}}}), std::invalid_argument);
  EXPECT_THROW(Profile(1, {{0, {0}}}), std::invalid_argument);
  EXPECT_NO_THROW(Profile(3, {{5, {2}}, {1, {0, 1}}}));
}

TEST(ProfileVectorTest, Counts) {
  const ProfileVector v = profile_to_vector(Profile::from_ballots(2, {{0}, {0}, {0, 1}}));
  EXPECT_EQ(v.entries().size(), 2u);
  EXPECT_EQ(v.at(0), 2);
  EXPECT_EQ(v.at(2), 1);
  const ProfileVector single = profile_to_vector(Profile::from_ballots(3, {{0, 1, 2}}));
  EXPECT_EQ(single.entries().size(), 1u);
  EXPECT_EQ(single.at(6), 1);
}

TEST(ProfileVectorTest, AllBallotsOnce) {
  std::vector<Ballot> all;
  for (std::uint64_t i = 0; i < ballot_count(3); ++i) all.push_back(index_ballot(i, 3));
  const ProfileVector v = profile_to_vector(Profile::from_ballots(3, all));
  EXPECT_EQ(v.entries().size(), 7u);
  for (std::uint64_t i = 0; i < 7; ++i) EXPECT_EQ(v.at(i), 1);
}

TEST(ProfileVectorTest, RoundTripAndRationalEntries) {
  const Profile p = Profile::from_ballots(3, {{1, 2}, {0}, {1, 2}});
  EXPECT_EQ(profile_to_vector(vector_to_profile(profile_to_vector(p))), profile_to_vector(p));
  ProfileVector v(2);
  v.set(0, Rational(-1, 3));
  v.add(1, 1);
  EXPECT_EQ(v.at(0), Rational(-1, 3));
  EXPECT_THROW(vector_to_profile(v), std::invalid_argument);
  v.add(0, Rational(1, 3));
  EXPECT_EQ(v.entries().size(), 1u);
  EXPECT_THROW(v.set(3, 1), std::invalid_argument);
}

TEST(ProfileAlgebra, AddProfiles) {
  const Profile a = Profile::from_ballots(2, {{0}});
  const Profile b(2, {{1, {1}}});
  const Profile sum = add_profiles(a, b);
  EXPECT_EQ(sum.size(), 2u);
  ProfileVector expected(2);
  expected.set(0, 1);
  expected.set(1, 1);
  EXPECT_EQ(profile_to_vector(sum), expected);
  EXPECT_THROW(add_profiles(a, a), std::invalid_argument);
  EXPECT_EQ(profile_to_vector(add_profiles(a, a, true)), Rational(2) * profile_to_vector(a));
  EXPECT_THROW(add_profiles(a, Profile::from_ballots(3, {{0}}), true), std::invalid_argument);
}

TEST(ProfileAlgebra, ScaleProfile) {
  const Profile s = scale_profile(Profile::from_ballots(3, {{0, 1}}), 3);
  EXPECT_EQ(s.size(), 3u);
  for (const Voter& v : s.voters()) EXPECT_EQ(v.ballot, Ballot({0, 1}));
  const Profile a = Profile::from_ballots(3, {{0}, {1, 2}});
  EXPECT_EQ(profile_to_vector(scale_profile(a, 1)), profile_to_vector(a));
  EXPECT_THROW(scale_profile(a, 0), std::invalid_argument);
}

Profile random_profile(std::mt19937_64& rng, int m, int n) {
  std::uniform_int_distribution<std::uint64_t> pick(0, ballot_count(m) - 1);
  std::vector<Ballot> ballots;
  for (int i = 0; i < n; ++i) ballots.push_back(index_ballot(pick(rng), m));
  return Profile::from_ballots(m, ballots);
}

TEST(ProfileAlgebra, VectorAdditivityAndScaling) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const Profile a = random_profile(rng, m, 1 + static_cast<int>(rng() % 4));
    const Profile b = random_profile(rng, m, 1 + static_cast<int>(rng() % 4));
    EXPECT_EQ(profile_to_vector(add_profiles(a, b, true)), profile_to_vector(a) + profile_to_vector(b));
    EXPECT_EQ(profile_to_vector(scale_profile(a, 5)), Rational(5) * profile_to_vector(a));
  }
}

TEST(Permutation, Apply) {
  const std::vector<int> swap{1, 0};
  const Profile p(2, {{3, {0}}, {8, {0, 1}}});
  const Profile q = apply_candidate_permutation(p, swap);
  EXPECT_EQ(q.voters()[0].ballot, Ballot({1}));
  EXPECT_EQ(q.voters()[1].ballot, Ballot({0, 1}));
  EXPECT_EQ(q.voters()[0].label, 3);
  EXPECT_EQ(q.voters()[1].label, 8);
  EXPECT_EQ(apply_candidate_permutation(q, swap), p);
  const std::vector<int> id{0, 1};
  EXPECT_EQ(apply_candidate_permutation(p, id), p);
  const std::vector<int> bad{0, 0};
  EXPECT_THROW(apply_candidate_permutation(p, bad), std::invalid_argument);
}

TEST(Canonical, Examples) {
  EXPECT_EQ(canonical_form(Profile::from_ballots(2, {{1}})), canonical_form(Profile::from_ballots(2, {{0}})));
  EXPECT_EQ(canonical_form(Profile::from_ballots(2, {{0}, {0, 1}})),
            canonical_form(Profile::from_ballots(2, {{1}, {0, 1}})));
  const Profile sym = Profile::from_ballots(2, {{0}, {1}});
  EXPECT_EQ(canonical_form(sym), profile_to_vector(sym));
  EXPECT_NE(canonical_form(Profile::from_ballots(3, {{0}, {0}})), canonical_form(Profile::from_ballots(3, {{0}, {1}})));
}

TEST(Canonical, InvariantUnderRelabellingAndRenaming) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const Profile p = random_profile(rng, m, 1 + static_cast<int>(rng() % 5));
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Voter> voters(p.voters().begin(), p.voters().end());
    std::shuffle(voters.begin(), voters.end(), rng);
    for (Voter& v : voters) v.label += 100;
    const Profile q = apply_candidate_permutation(Profile(m, voters), perm);
    ASSERT_EQ(canonical_form(p), canonical_form(q));
  }
}

TEST(Canonical, SeparatesOrbits) {
  // Equal canonical forms exactly when some renaming maps one multiset to the other.
  const int m = 3;
  std::vector<Profile> all;
  for (std::uint64_t i = 0; i < ballot_count(m); ++i)
    for (std::uint64_t j = i; j < ballot_count(m); ++j)
      all.push_back(Profile::from_ballots(m, {index_ballot(i, m), index_ballot(j, m)}));
  auto same_orbit = [&](const Profile& a, const Profile& b) {
    std::vector<int> perm{0, 1, 2};
    do {
      if (profile_to_vector(apply_candidate_permutation(a, perm)) == profile_to_vector(b)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  for (const Profile& a : all)
    for (const Profile& b : all) EXPECT_EQ(canonical_form(a) == canonical_form(b), same_orbit(a, b));
}

TEST(ChoiceSetTest, SortedUniqueAndOps) {
  const ChoiceSet c(std::vector<Committee>{{0, 3}, {0, 2}, {0, 3}});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.committees()[0], Committee({0, 2}));
  EXPECT_EQ(to_string(c), "{0,2} {0,3}");
  EXPECT_EQ(c.k(), 2);
  EXPECT_TRUE(c.contains({0, 3}));
  EXPECT_FALSE(c.contains({1, 3}));
  EXPECT_THROW(ChoiceSet(std::vector<Committee>{}), std::invalid_argument);
  EXPECT_THROW(ChoiceSet(std::vector<Committee>{{0}, {0, 1}}), std::invalid_argument);
}

}  // namespace
}  // namespace abc
