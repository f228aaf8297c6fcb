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

// JSON encodings; field names are listed in docs/json-schema.json.

#pragma once

#include <json.hpp>

#include "abc/axioms.hpp"
#include "abc/io.hpp"
#include "abc/search.hpp"

namespace abc::json {

using nlohmann::json;

inline json committee(Committee w) { return w.members(); }

inline json choice_set(const ChoiceSet& c) {
  json out = json::array();
  for (Committee w : c) out.push_back(committee(w));
  return out;
}

inline json witness(const Witness& w) {
  json out{{"profiles", json::array()}, {"committees", json::array()}};
  for (const Profile& p : w.profiles) out["profiles"].push_back(format_profile(p));
  for (Committee c : w.committees) out["committees"].push_back(committee(c));
  if (!w.permutation.empty()) out["permutation"] = w.permutation;
  if (!w.parties.empty()) {
    out["parties"] = json::array();
    for (CandidateSet p : w.parties) out["parties"].push_back(p.members());
  }
  if (w.lambda) out["lambda"] = *w.lambda;
  if (!w.note.empty()) out["note"] = w.note;
  return out;
}

inline json verdict(const AxiomVerdict& v) {
  json out{{"axiom", axiom_id(v.axiom)}, {"passed", v.passed}, {"instances", v.instances}};
  out["witness"] = v.witness ? witness(*v.witness) : json(nullptr);
  return out;
}

inline json search_result(const SearchResult& r) {
  json out{{"rule", r.rule}, {"axiom", axiom_id(r.axiom)}, {"found", r.found()}, {"instances", r.instances}};
  if (r.found()) {
    out["m"] = r.m;
    out["k"] = r.k;
    out["witness"] = witness(*r.violation->witness);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

inline json report(const SuiteReport& r) {
  json entries = json::array();
  for (const SuiteEntry& e : r.entries) {
    entries.push_back({{"rule", e.rule},
                       {"axiom", e.axiom},
                       {"scope", e.scope},
                       {"expected", e.expect_violation ? "violation" : "pass"},
                       {"observed", e.observed_violation() ? "violation" : "pass"},
                       {"instances", e.instances},
                       {"confirmed", e.confirmed},
                       {"degenerate", e.degenerate},
                       {"met", e.met()},
                       {"witness", e.violation ? witness(*e.violation->witness) : json(nullptr)}});
  }
  return {{"passed", r.passed()}, {"entries", entries}, {"notes", r.notes}};
}

}  // namespace abc::json
