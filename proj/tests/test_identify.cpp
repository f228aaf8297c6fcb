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
#include "abc/search.hpp"

namespace abc {
namespace {

using fm::Inequality;

std::vector<Rational> rationals(std::initializer_list<Rational> xs) { return xs; }

// Independent Farkas check: y >= 0, y^T A = 0, y^T b > 0.
bool farkas_holds(int unknowns, const std::vector<Inequality>& system, const fm::Certificate& cert) {
  std::vector<Rational> combo(unknowns);
  Rational rhs = 0;
  for (const auto& [row, y] : cert.multipliers) {
    if (row >= system.size() || y < 0) return false;
    for (int j = 0; j < unknowns; ++j) combo[j] += y * system[row].coeffs[j];
    rhs += y * system[row].rhs;
  }
  for (const Rational& c : combo)
    if (c != 0) return false;
  return rhs > 0;
}

bool satisfies(const std::vector<Inequality>& system, const std::vector<Rational>& x) {
  for (const Inequality& row : system) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += row.coeffs[j] * x[j];
    if (lhs < row.rhs) return false;
  }
  return true;
}

std::vector<Observation> observe(const std::string& rule, int m, int k, int n_max) {
  std::vector<Observation> out;
  for (int n = 1; n <= n_max; ++n)
    for (const Profile& p : enumerate_profiles(m, n, true)) out.emplace_back(p, winners(named_rule(rule, k, m), p));
  return out;
}

TEST(FourierMotzkin, Infeasible) {
  const std::vector<Inequality> sys{{{1}, 1}, {{-1}, 0}};
  const fm::Result r = fm::solve(1, sys);
  ASSERT_FALSE(r.feasible());
  ASSERT_TRUE(r.infeasible);
  EXPECT_TRUE(farkas_holds(1, sys, *r.infeasible));
  EXPECT_TRUE(fm::verify_certificate(1, sys, *r.infeasible));
}

TEST(FourierMotzkin, MidpointPolicy) {
  const std::vector<Inequality> sys{{{1, -1}, 1}, {{0, 1}, 0}};
  const fm::Result r = fm::solve(2, sys);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(*r.point, rationals({1, 0}));
  // Two-sided bounds take the midpoint.
  const std::vector<Inequality> box{{{1}, 2}, {{-1}, -5}};
  EXPECT_EQ(*fm::solve(1, box).point, rationals({Rational(7, 2)}));
  // Half-lines take their finite end; unbounded unknowns take 0.
  EXPECT_EQ(*fm::solve(2, {{{1, 0}, -3}}).point, rationals({-3, 0}));
}

TEST(FourierMotzkin, UnknownCap) {
  EXPECT_THROW(fm::solve(9, {}), std::length_error);
  EXPECT_THROW(fm::solve(2, {{{1}, 0}}), std::invalid_argument);
}

TEST(FourierMotzkin, RandomFeasibleSystems) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    std::vector<Rational> x0(n);
    for (Rational& v : x0) v = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
    std::vector<Inequality> sys;
    for (int i = 0, rows = 1 + static_cast<int>(rng() % 8); i < rows; ++i) {
      Inequality row{std::vector<Rational>(n), 0};
      Rational value = 0;
      for (int j = 0; j < n; ++j) {
        row.coeffs[j] = static_cast<long>(rng() % 7) - 3;
        value += row.coeffs[j] * x0[j];
      }
      row.rhs = value - static_cast<long>(rng() % 3);
      sys.push_back(row);
    }
    const fm::Result r = fm::solve(n, sys);
    ASSERT_TRUE(r.feasible());
    EXPECT_TRUE(satisfies(sys, *r.point));
  }
}

TEST(FourierMotzkin, RandomInfeasibleSystemsCarryCertificates) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    std::vector<Inequality> sys;
    // a.x >= b and -a.x >= -b + 1 contradict each other; pad with noise rows.
    Inequality a{std::vector<Rational>(n), static_cast<long>(rng() % 5)};
    for (Rational& c : a.coeffs) c = static_cast<long>(rng() % 5) - 2;
    if (std::all_of(a.coeffs.begin(), a.coeffs.end(), [](const Rational& c) { return c == 0; })) a.coeffs[0] = 1;
    Inequality neg{a.coeffs, -a.rhs + 1};
    for (Rational& c : neg.coeffs) c = -c;
    for (int i = 0, rows = static_cast<int>(rng() % 5); i < rows; ++i) {
      Inequality noise{std::vector<Rational>(n), static_cast<long>(rng() % 5) - 10};
      for (Rational& c : noise.coeffs) c = static_cast<long>(rng() % 5) - 2;
      sys.push_back(noise);
    }
    sys.insert(sys.begin() + static_cast<long>(rng() % (sys.size() + 1)), a);
    sys.insert(sys.begin() + static_cast<long>(rng() % (sys.size() + 1)), neg);
    const fm::Result r = fm::solve(n, sys);
    ASSERT_FALSE(r.feasible());
    ASSERT_TRUE(r.infeasible);
    EXPECT_TRUE(farkas_holds(n, sys, *r.infeasible));
  }
}

TEST(BuildSystem, FullTieGivesOnlyWeakRows) {
  const Observation obs(Profile::from_ballots(3, {{0, 1, 2}}), ChoiceSet(enumerate_committees(3, 1)));
  const ConstraintSystem sys = build_system({obs}, Family::thiele, 3, 1);
  EXPECT_TRUE(sys.strict.empty());
  EXPECT_EQ(sys.weak.size(), 6u);
  for (const auto& row : sys.weak)
    for (const Rational& c : row) EXPECT_EQ(c, 0);
}

TEST(BuildSystem, PavExample) {
  const Profile p = Profile::from_ballots(4, {{0, 1}, {0}, {2, 3}});
  const Observation obs(p, winners(named_rule("pav", 2, 4), p));
  const ConstraintSystem sys = build_system({obs}, Family::thiele, 4, 2);
  EXPECT_EQ(sys.unknowns, (std::vector<std::string>{"s1", "s2"}));
  EXPECT_EQ(sys.weak.size(), 2u * 5u);
  ASSERT_EQ(sys.strict.size(), 4u);
  // Designated winner {0,2} scores 3*s1; {0,1} scores s2 + s1.
  EXPECT_EQ(sys.strict[0], rationals({2, -1}));
  EXPECT_EQ(sys.side, (std::vector<std::vector<Rational>>{rationals({1, 0}), rationals({-1, 1})}));
}

TEST(BuildSystem, EmptyAndMismatched) {
  const ConstraintSystem sys = build_system({}, Family::bswav, 4, 2);
  EXPECT_TRUE(sys.weak.empty());
  EXPECT_TRUE(sys.strict.empty());
  EXPECT_EQ(sys.side.size(), 4u);
  const Observation obs(Profile::from_ballots(3, {{0}}), ChoiceSet(std::vector<Committee>{{0}}));
  EXPECT_THROW(build_system({obs}, Family::thiele, 4, 1), std::invalid_argument);
  EXPECT_THROW(build_system({obs}, Family::thiele, 3, 2), std::invalid_argument);
}

TEST(Solve, RandomPavObservationsAreFeasible) {
  std::mt19937_64 rng(41);
  std::vector<Observation> obs;
  for (int i = 0; i < 20; ++i) {
    std::vector<Ballot> ballots;
    for (int v = 0, n = 1 + static_cast<int>(rng() % 5); v < n; ++v) ballots.push_back(index_ballot(rng() % 15, 4));
    const Profile p = Profile::from_ballots(4, ballots);
    obs.emplace_back(p, winners(named_rule("pav", 2, 4), p));
  }
  const ConstraintSystem sys = build_system(obs, Family::thiele, 4, 2);
  const Feasibility f = solve_feasibility(sys);
  ASSERT_TRUE(f.point);
  EXPECT_TRUE(satisfies(sys.inequalities(), *f.point));
}

TEST(FitThiele, PavOnGrid) {
  const auto fit = fit_thiele(observe("pav", 4, 2, 2), 4, 2);
  ASSERT_TRUE(fit.feasible());
  EXPECT_EQ(fit.parameters->values(), rationals({0, 1, Rational(3, 2)}));
  const auto fit3 = fit_thiele(observe("pav", 4, 3, 4), 4, 3);
  ASSERT_TRUE(fit3.feasible());
  EXPECT_EQ(fit3.parameters->values(), rationals({0, 1, Rational(3, 2), Rational(11, 6)}));
}

TEST(FitThiele, AvOnGrid) {
  const auto fit = fit_thiele(observe("av", 4, 2, 2), 4, 2);
  ASSERT_TRUE(fit.feasible());
  EXPECT_EQ(fit.parameters->values(), rationals({0, 1, 2}));
}

TEST(FitThiele, SavPairIsInfeasible) {
  const std::vector<Observation> obs{
      Observation(Profile::from_ballots(3, {{0, 1}, {0, 1}, {2}}), ChoiceSet(enumerate_committees(3, 1))),
      Observation(Profile::from_ballots(3, {{0}, {0, 1}, {2}}), ChoiceSet(std::vector<Committee>{{0}}))};
  for (const Observation& o : obs)
    EXPECT_EQ(winners_from_vector(named_rule("sav", 1, 3), o.profile, 1), o.chosen);
  const auto fit = fit_thiele(obs, 3, 1);
  ASSERT_FALSE(fit.feasible());
  ASSERT_TRUE(fit.certificate);
  EXPECT_TRUE(verify_certificate(fit.system, *fit.certificate));
  EXPECT_TRUE(farkas_holds(1, fit.system.inequalities(), *fit.certificate));
  EXPECT_TRUE(fit_bswav(obs, 3, 1).feasible());
}

TEST(FitBswav, SavAndAvOnGrid) {
  const auto sav = fit_bswav(observe("sav", 4, 2, 4), 4, 2);
  ASSERT_TRUE(sav.feasible());
  EXPECT_EQ(sav.parameters->values(), rationals({1, Rational(1, 2), Rational(1, 3), Rational(1, 4)}));
  const auto av = fit_bswav(observe("av", 4, 2, 4), 4, 2);
  ASSERT_TRUE(av.feasible());
  EXPECT_EQ(av.parameters->values(), rationals({1, 1, 1, Rational(1, 4)}));
}

TEST(FitBswav, SmallGridLeavesWeightsLoose) {
  // With at most two voters SAV's alpha_2 is only bracketed, not pinned.
  const auto sav = fit_bswav(observe("sav", 4, 2, 2), 4, 2);
  ASSERT_TRUE(sav.feasible());
  EXPECT_EQ(sav.parameters->values(), rationals({1, Rational(2, 3), Rational(1, 3), Rational(1, 4)}));
}

TEST(FitBswav, PavConvexityViolationIsInfeasible) {
  const Profile p = Profile::from_ballots(4, {{0, 1}, {2, 3}});
  const std::vector<Observation> obs{Observation(p, winners(named_rule("pav", 2, 4), p))};
  const auto fit = fit_bswav(obs, 4, 2);
  ASSERT_FALSE(fit.feasible());
  EXPECT_TRUE(verify_certificate(fit.system, *fit.certificate));
  EXPECT_TRUE(fit_thiele(obs, 4, 2).feasible());
}

TEST(Fit, SelfConsistencyOnHeldOutProfiles) {
  std::mt19937_64 rng(43);
  for (const char* name : {"av", "pav", "ccav", "sav", "msav"}) {
    const Rule original = named_rule(name, 2, 4);
    const auto obs = observe(name, 4, 2, 4);
    const bool thiele = original.is_thiele();
    const Rule fitted = thiele ? Rule::thiele("fit", 4, *fit_thiele(obs, 4, 2).parameters)
                               : Rule::bswav("fit", 2, *fit_bswav(obs, 4, 2).parameters);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Ballot> ballots;
      for (int v = 0, n = 5 + static_cast<int>(rng() % 4); v < n; ++v) ballots.push_back(index_ballot(rng() % 15, 4));
      const Profile p = Profile::from_ballots(4, ballots);
      ASSERT_EQ(winners(fitted, p), winners(original, p)) << name;
    }
  }
}

TEST(Fit, OrderOfObservationsDoesNotMatter) {
  auto obs = observe("pav", 4, 2, 3);
  const auto a = fit_thiele(obs, 4, 2);
  std::reverse(obs.begin(), obs.end());
  const auto b = fit_thiele(obs, 4, 2);
  ASSERT_TRUE(a.feasible() && b.feasible());
  EXPECT_EQ(a.parameters->values(), b.parameters->values());
}

TEST(Fit, ReproducesEveryObservation) {
  for (int k = 1; k <= 3; ++k) {
    const auto obs = observe("ccav", 4, k, 3);
    const auto fit = fit_thiele(obs, 4, k);
    ASSERT_TRUE(fit.feasible());
    const Rule r = Rule::thiele("fit", 4, *fit.parameters);
    for (const Observation& o : obs) EXPECT_EQ(winners_from_vector(r, o.profile, k), o.chosen);
  }
}

}  // namespace
}  // namespace abc
