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

#include <random>

#include "abc/identify.hpp"
#include "abc/io.hpp"
#include "abc/partylist.hpp"
#include "abc/rational.hpp"

namespace abc {
namespace {

int error_line(const std::string& text) {
  try {
    parse_profile(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(ProfileFormat, Parses) {
  const Profile p = parse_profile("# comment\nm=4\n0 1\n\n0\n# another\n2 3\n");
  EXPECT_EQ(p.m(), 4);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p.voters()[0].ballot, Ballot({0, 1}));
  EXPECT_EQ(p.voters()[2].ballot, Ballot({2, 3}));
  EXPECT_EQ(p.voters()[2].label, 2);
}

TEST(ProfileFormat, ToleratesCrLf) {
  const Profile p = parse_profile("m=2\r\n0 1\r\n");
  EXPECT_EQ(p.voters()[0].ballot, Ballot({0, 1}));
}

TEST(ProfileFormat, LineNumberedErrors) {
  EXPECT_EQ(error_line("m=3\n0 1\n1 0\n"), 3);
  EXPECT_EQ(error_line("m=3\n0 0\n"), 2);
  EXPECT_EQ(error_line("m=3\n0 3\n"), 2);
  EXPECT_EQ(error_line("m=3\n0 x\n"), 2);
  EXPECT_EQ(error_line("# c\nmm=3\n"), 2);
  EXPECT_EQ(error_line("m=1\n0\n"), 1);
  EXPECT_EQ(error_line("m=3\n"), 1);
  EXPECT_EQ(error_line("m=3\n\n-1\n"), 3);
  EXPECT_NE(error_line(""), 0);
}

TEST(ProfileFormat, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 6);
    std::vector<Ballot> ballots;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 6); i < n; ++i)
      ballots.push_back(index_ballot(rng() % ballot_count(m), m));
    const Profile p = Profile::from_ballots(m, ballots);
    const Profile q = parse_profile(format_profile(p));
    EXPECT_EQ(p, q);
    EXPECT_EQ(profile_to_vector(p), profile_to_vector(q));
  }
}

TEST(PartyComments, Format) {
  const auto s = detect_party_structure(Profile::from_ballots(3, {{0, 1}, {0, 1}, {2}}));
  ASSERT_TRUE(s);
  EXPECT_EQ(format_party_comments(*s), "# party 0 1 n=2\n# party 2 n=1\n");
}

TEST(RationalFormat, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("3/2")), "3/2");
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("4/2")), "2");
  EXPECT_EQ(to_string(parse_rational("-1/3")), "-1/3");
  EXPECT_EQ(to_string(parse_rational("0")), "0");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/"), std::invalid_argument);
}

TEST(ObservationFormat, ParsesBlocks) {
  const auto obs = parse_observations(
      "# two observations\nm=4\n0 1\n0\n2 3\nchosen: {0,2},{0,3}\n\nm=3\n0\nchosen: {0}\n");
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0].m(), 4);
  EXPECT_EQ(obs[0].k(), 2);
  EXPECT_EQ(to_string(obs[0].chosen), "{0,2} {0,3}");
  EXPECT_EQ(obs[1].k(), 1);
}

TEST(ObservationFormat, Errors) {
  auto line_of = [](const std::string& text) {
    try {
      parse_observations(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("m=3\n0\nchosen: {0},{0,1}\n"), 3);
  EXPECT_EQ(line_of("m=3\n0\nchosen: {0,1,2}\n"), 3);
  EXPECT_EQ(line_of("m=3\n0\nchosen: 0\n"), 3);
  EXPECT_EQ(line_of("m=3\n0\nchosen:\n"), 3);
  EXPECT_NE(line_of("m=3\n0\n"), 0);
}

TEST(ObservationFormat, RoundTrip) {
  const Profile p = Profile::from_ballots(4, {{0, 1}, {0}, {2, 3}});
  const ChoiceSet c(std::vector<Committee>{{0, 2}, {0, 3}});
  const std::string text = format_observation(p, c);
  EXPECT_EQ(text, "m=4\n0 1\n0\n2 3\nchosen: {0,2},{0,3}\n");
  const auto obs = parse_observations(text);
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs[0].profile, profile_to_vector(p));
  EXPECT_EQ(obs[0].chosen, c);
}

}  // namespace
}  // namespace abc
