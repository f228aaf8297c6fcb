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

// Command-line front end. Everything lives here so tests can drive the
// tool in-process; tools/abc.cpp only forwards argv.
//
// Exit codes: 0 success or pass, 1 violation or infeasible, 2 usage error.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abc/axioms.hpp"
#include "abc/format.hpp"
#include "abc/identify.hpp"
#include "abc/io.hpp"
#include "abc/json.hpp"
#include "abc/partylist.hpp"
#include "abc/rule_variants.hpp"
#include "abc/rules.hpp"
#include "abc/search.hpp"

namespace abc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad rational '" + item + "' in rule parameters");
    }
  }
  if (out.empty()) throw UsageError("empty rule parameter list");
  return out;
}

// Rule spec: a named rule, min-approval, thiele:s0,s1,...,sk or
// bswav:a1,...,am.
struct RuleSpec {
  std::string text;
  std::string name;
  std::vector<Rational> values;

  bool parametric() const { return !values.empty(); }

  static RuleSpec parse(const std::string& text) {
    RuleSpec spec{text, text, {}};
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
      spec.name = text.substr(0, colon);
      if (spec.name != "thiele" && spec.name != "bswav") throw UsageError("unknown rule family '" + spec.name + "'");
      spec.values = parse_rational_list(text.substr(colon + 1));
      return spec;
    }
    if (spec.name == "min-approval") return spec;
    const auto& names = named_rule_names();
    if (std::find(names.begin(), names.end(), spec.name) == names.end())
      throw UsageError("unknown rule '" + text + "'");
    return spec;
  }

  // Scoring rule for (m, k); nullopt for rules without a scoring function.
  std::optional<Rule> scoring(int m, int k) const {
    if (name == "min-approval") return std::nullopt;
    if (name == "thiele") {
      if (static_cast<int>(values.size()) != k + 1)
        throw UsageError("thiele rule needs k+1 = " + std::to_string(k + 1) + " values");
      return Rule::thiele(text, m, ThieleScore(values));
    }
    if (name == "bswav") {
      if (static_cast<int>(values.size()) != m) throw UsageError("bswav rule needs m = " + std::to_string(m) + " weights");
      return Rule::bswav(text, k, BswavWeights(values));
    }
    return named_rule(name, k, m);
  }

  AnyRule any(int m, int k) const {
    if (auto r = scoring(m, k)) return *r;
    return min_approval_rule(k, m);
  }
};

inline Profile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return parse_profile(in);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline std::vector<Observation> read_observations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return parse_observations(in);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline Committee parse_committee_arg(std::string text, int m) {
  for (char& c : text)
    if (c == ',' || c == '{' || c == '}') c = ' ';
  try {
    return io::parse_ballot({0, text}, m);
  } catch (const ParseError& e) {
    throw UsageError(std::string("bad committee: ") + e.what());
  }
}

struct Options {
  std::string rule = "pav";
  int k = 0;
  std::string profile;
  std::string profile2;
  bool splits = false;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  int threads = 1;
  long lambda_cap = 0;
  std::string axiom;
  std::string committee;
  int min_m = 2;
  int max_m = 4;
  int max_n = 2;
  std::vector<int> k_list;
  std::string family;
  std::string observations;
  std::size_t split_cap = kDefaultSplitVoterCap;
};

inline int run_winners(const Options& o, std::ostream& out) {
  const Profile p = read_profile_file(o.profile);
  const RuleSpec spec = RuleSpec::parse(o.rule);
  const auto rule = spec.scoring(p.m(), o.k);
  if (!rule) throw UsageError("rule '" + o.rule + "' has no scores; use check or search");
  const ChoiceSet chosen = winners(*rule, p, {24, o.threads});
  const Rational score = committee_score(*rule, p, chosen.committees().front());
  if (o.format == "json") {
    out << nlohmann::json{{"rule", o.rule}, {"k", o.k}, {"winners", json::choice_set(chosen)},
                          {"score", to_string(score)}}
               .dump(2)
        << "\n";
  } else {
    out << to_string(chosen) << "  score " << to_string(score) << "\n";
  }
  return kExitOk;
}

inline int run_score(const Options& o, std::ostream& out) {
  const Profile p = read_profile_file(o.profile);
  const auto rule = RuleSpec::parse(o.rule).scoring(p.m(), o.k);
  if (!rule) throw UsageError("rule '" + o.rule + "' has no scores");
  const Committee w = parse_committee_arg(o.committee, p.m());
  if (w.size() != o.k) throw UsageError("committee size differs from --k");
  const Rational score = committee_score(*rule, p, w);
  if (o.format == "json")
    out << nlohmann::json{{"rule", o.rule}, {"k", o.k}, {"committee", json::committee(w)}, {"score", to_string(score)}}
               .dump(2)
        << "\n";
  else
    out << to_string(w) << "  score " << to_string(score) << "\n";
  return kExitOk;
}

inline int run_check(const Options& o, std::ostream& out) {
  Axiom axiom;
  try {
    axiom = parse_axiom(o.axiom);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Profile a = read_profile_file(o.profile);
  const RuleSpec spec = RuleSpec::parse(o.rule);
  const AnyRule rule = spec.any(a.m(), o.k);
  const Sampling mode = o.samples ? Sampling::sample(o.seed, o.samples) : Sampling::all();
  std::optional<Profile> b;
  if (!o.profile2.empty()) {
    b = read_profile_file(o.profile2);
    if (b->m() != a.m()) throw UsageError("profiles have different candidate counts");
  }
  AxiomVerdict v = AxiomVerdict::pass(axiom);
  try {
    switch (axiom) {
      case Axiom::anonymity: v = check_anonymity(rule, a, mode); break;
      case Axiom::neutrality: v = check_neutrality(rule, a, mode); break;
      case Axiom::consistency:
        if (b) v = check_consistency_pair(rule, a, *b);
        else if (o.splits) v = check_consistency_splits(rule, a, o.split_cap);
        else throw UsageError("consistency needs --profile2 or --splits");
        break;
      case Axiom::continuity: {
        if (!b) throw UsageError("continuity needs --profile2");
        long cap = o.lambda_cap;
        if (cap <= 0) {
          if (const Rule* s = rule.scoring_rule()) cap = continuity_lambda_bound(*s, a, *b).convert_to<long>();
          else cap = 64;
        }
        v = check_continuity(rule, a, *b, cap);
        break;
      }
      case Axiom::weak_efficiency: v = check_weak_efficiency(rule, a); break;
      case Axiom::independence_of_losers: v = check_independence_of_losers(rule, a, mode); break;
      case Axiom::choice_set_convexity: v = check_choice_set_convexity(rule, a); break;
      case Axiom::excellence: v = check_excellence(rule, a); break;
      case Axiom::party_proportionality: v = check_party_proportionality(rule, a); break;
      case Axiom::aversion_unanimous: v = check_aversion_unanimous(rule, a); break;
      case Axiom::unanimity_threshold: v = check_unanimity_threshold(rule, a); break;
    }
  } catch (const NotPartyList& e) {
    throw UsageError(o.profile + ": " + e.what());
  }
  if (o.format == "json") out << json::verdict(v).dump(2) << "\n";
  else out << format_verdict(v);
  return v.passed ? kExitOk : kExitViolation;
}

inline int run_search(const Options& o, std::ostream& out) {
  Axiom axiom;
  try {
    axiom = parse_axiom(o.axiom);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const RuleSpec spec = RuleSpec::parse(o.rule);
  SearchBounds b;
  b.m_min = o.min_m;
  b.m_max = o.max_m;
  b.n_max = o.max_n;
  b.k_set = o.k_list;
  b.threads = o.threads;
  if (o.lambda_cap > 0) b.lambda_cap = o.lambda_cap;
  if (o.samples) b.iol_mode = Sampling::sample(o.seed, o.samples);
  if (spec.name == "thiele") {
    const int k = static_cast<int>(spec.values.size()) - 1;
    if (!b.k_set.empty() && b.k_set != std::vector<int>{k}) throw UsageError("thiele rule fixes k=" + std::to_string(k));
    b.k_set = {k};
  } else if (spec.name == "bswav") {
    b.m_min = b.m_max = static_cast<int>(spec.values.size());
  }
  if (b.m_min < 2 || b.m_max > kMaxSearchCandidates || b.m_min > b.m_max || b.n_max < 1 ||
      b.n_max > kMaxSearchVoters)
    throw UsageError("search bounds must satisfy 2 <= min-m <= max-m <= " + std::to_string(kMaxSearchCandidates) +
                     " and 1 <= max-n <= " + std::to_string(kMaxSearchVoters));
  const SearchResult r = find_counterexample([&spec](int m, int k) { return spec.any(m, k); }, axiom, b);
  if (o.format == "json") out << json::search_result(r).dump(2) << "\n";
  else out << format_search_result(r);
  return r.found() ? kExitViolation : kExitOk;
}

inline int run_separations(const Options& o, std::ostream& out) {
  const SuiteReport r = separation_suite(default_library(), o.threads);
  if (o.format == "json") out << json::report(r).dump(2) << "\n";
  else out << format_report(r);
  return r.passed() ? kExitOk : kExitViolation;
}

inline int run_fit(const Options& o, std::ostream& out) {
  const std::vector<Observation> obs = read_observations_file(o.observations);
  if (obs.empty()) throw UsageError(o.observations + ": no observations");
  const int m = obs.front().m();
  for (const Observation& x : obs) {
    if (x.m() != m) throw UsageError("observations disagree on m");
    if (x.k() != o.k) throw UsageError("observation committee size differs from --k");
  }
  std::optional<std::vector<Rational>> params;
  std::optional<fm::Certificate> cert;
  const char* label = o.family == "thiele" ? "s" : "alpha";
  if (o.family == "thiele") {
    auto f = fit_thiele(obs, m, o.k);
    if (f.parameters) params = f.parameters->values();
    cert = f.certificate;
  } else if (o.family == "bswav") {
    auto f = fit_bswav(obs, m, o.k);
    if (f.parameters) params = f.parameters->values();
    cert = f.certificate;
  } else {
    throw UsageError("--family must be thiele or bswav");
  }
  if (o.format == "json") {
    nlohmann::json j{{"family", o.family}, {"k", o.k}, {"m", m}, {"feasible", params.has_value()}};
    if (params) {
      std::vector<std::string> v;
      for (const Rational& r : *params) v.push_back(to_string(r));
      j[label] = v;
    } else if (cert) {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [row, mult] : cert->multipliers) rows.push_back({{"row", row}, {"multiplier", to_string(mult)}});
      j["certificate"] = rows;
    }
    out << j.dump(2) << "\n";
  } else if (params) {
    out << label << ": " << format_rationals(*params) << "\n";
  } else {
    out << "infeasible\n";
    if (cert)
      for (const auto& [row, mult] : cert->multipliers)
        out << "# row " << row << " multiplier " << to_string(mult) << "\n";
  }
  return params ? kExitOk : kExitViolation;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact approval-based committee elections", "abc"};
  app.require_subcommand(1);
  Options o;
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", o.threads, "worker threads (output is unaffected)")->check(CLI::Range(1, 64));
  };
  auto rule_k = [&](CLI::App* sub, bool k_required) {
    sub->add_option("--rule", o.rule, "av|pav|ccav|sav|msav|triv|min-approval|thiele:s0,..,sk|bswav:a1,..,am");
    auto* k = sub->add_option("--k", o.k, "committee size");
    if (k_required) k->required();
  };

  auto* winners_cmd = app.add_subcommand("winners", "winning committees and their score");
  rule_k(winners_cmd, true);
  winners_cmd->add_option("--profile", o.profile, "profile file")->required();
  format(winners_cmd);

  auto* score_cmd = app.add_subcommand("score", "score of one committee");
  rule_k(score_cmd, true);
  score_cmd->add_option("--profile", o.profile, "profile file")->required();
  score_cmd->add_option("--committee", o.committee, "committee, e.g. 0,2")->required();
  format(score_cmd);

  auto* check_cmd = app.add_subcommand("check", "check one axiom on a profile");
  check_cmd->add_option("--axiom", o.axiom, "axiom id")->required();
  rule_k(check_cmd, true);
  check_cmd->add_option("--profile", o.profile, "profile file")->required();
  check_cmd->add_option("--profile2", o.profile2, "second profile (consistency, continuity)");
  check_cmd->add_flag("--splits", o.splits, "consistency over splits of --profile");
  check_cmd->add_option("--split-cap", o.split_cap, "largest profile split exhaustively");
  check_cmd->add_option("--lambda-cap", o.lambda_cap, "continuity cap (default: analytic bound)");
  check_cmd->add_option("--samples", o.samples, "sample this many permutations/reductions instead of all");
  check_cmd->add_option("--seed", o.seed, "sampling seed");
  format(check_cmd);

  auto* search_cmd = app.add_subcommand("search", "bounded counterexample search");
  search_cmd->add_option("--axiom", o.axiom, "axiom id")->required();
  rule_k(search_cmd, false);
  search_cmd->remove_option(search_cmd->get_option("--k"));
  search_cmd->add_option("--k", o.k_list, "committee sizes (default all)")->delimiter(',');
  search_cmd->add_option("--min-m", o.min_m, "smallest candidate count");
  search_cmd->add_option("--max-m", o.max_m, "largest candidate count");
  search_cmd->add_option("--max-n", o.max_n, "largest voter count");
  search_cmd->add_option("--lambda-cap", o.lambda_cap, "continuity cap for rules without scores");
  search_cmd->add_option("--samples", o.samples, "sample IoL reductions");
  search_cmd->add_option("--seed", o.seed, "sampling seed");
  format(search_cmd);

  auto* sep_cmd = app.add_subcommand("separations", "run the separation suite");
  format(sep_cmd);

  auto* fit_cmd = app.add_subcommand("fit", "fit Thiele scores or BSWAV weights to observations");
  fit_cmd->add_option("--family", o.family, "thiele or bswav")->required()->check(CLI::IsMember({"thiele", "bswav"}));
  fit_cmd->add_option("--k", o.k, "committee size")->required();
  fit_cmd->add_option("--observations", o.observations, "observations file")->required();
  format(fit_cmd);

  std::vector<const char*> argv{"abc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    if (winners_cmd->parsed()) return run_winners(o, out);
    if (score_cmd->parsed()) return run_score(o, out);
    if (check_cmd->parsed()) return run_check(o, out);
    if (search_cmd->parsed()) return run_search(o, out);
    if (sep_cmd->parsed()) return run_separations(o, out);
    if (fit_cmd->parsed()) return run_fit(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace abc::cli
