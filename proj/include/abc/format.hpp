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

// Plain-text rendering of verdicts, search results and suite reports.
// Witness profiles are printed in the profile file format so they can be
// fed back to the tools.

#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include "abc/axioms.hpp"
#include "abc/io.hpp"
#include "abc/search.hpp"

namespace abc {

inline std::string format_permutation(const std::vector<int>& perm) {
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) out += (i ? " " : "") + std::to_string(perm[i]);
  return out;
}

inline std::string format_witness(const Witness& w) {
  std::ostringstream out;
  if (!w.note.empty()) out << "# " << w.note << "\n";
  for (Committee c : w.committees) out << "# committee " << to_string(c) << "\n";
  if (!w.permutation.empty()) out << "# permutation " << format_permutation(w.permutation) << "\n";
  for (CandidateSet p : w.parties) out << "# party " << to_string(p) << "\n";
  if (w.lambda) out << "# lambda " << *w.lambda << "\n";
  for (std::size_t i = 0; i < w.profiles.size(); ++i) {
    out << "# profile " << i + 1 << "\n";
    out << format_profile(w.profiles[i]);
  }
  return out.str();
}

inline std::string format_verdict(const AxiomVerdict& v) {
  std::string out = axiom_id(v.axiom) + ": " + (v.passed ? "pass" : "violation") + " (" +
                    std::to_string(v.instances) + " instances)\n";
  if (v.witness) out += format_witness(*v.witness);
  return out;
}

inline std::string format_search_result(const SearchResult& r) {
  if (!r.found())
    return r.rule + " " + axiom_id(r.axiom) + ": exhausted after " + std::to_string(r.instances) + " instances\n";
  return r.rule + " " + axiom_id(r.axiom) + ": witness at m=" + std::to_string(r.m) + " k=" + std::to_string(r.k) +
         " after " + std::to_string(r.instances) + " instances\n" + format_witness(*r.violation->witness);
}

inline std::string format_report(const SuiteReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-13s %-20s %-22s %-10s %-10s %-12s %s\n", "rule", "axiom", "scope", "expected",
                "observed", "count", "status");
  out << line;
  for (const SuiteEntry& e : report.entries) {
    const char* expected = e.expect_violation ? "violation" : "pass";
    const char* observed = e.observed_violation() ? "violation" : "pass";
    std::string status = e.met() ? "ok" : (e.confirmed ? "MISMATCH" : "UNCONFIRMED");
    if (e.degenerate) status += " (degenerate)";
    std::snprintf(line, sizeof line, "%-13s %-20s %-22s %-10s %-10s %-12llu %s\n", e.rule.c_str(), e.axiom.c_str(),
                  e.scope.c_str(), expected, observed, static_cast<unsigned long long>(e.instances), status.c_str());
    out << line;
  }
  for (const SuiteEntry& e : report.entries) {
    if (!e.violation) continue;
    out << "\n" << e.rule << " " << e.axiom << " witness\n" << format_witness(*e.violation->witness);
  }
  for (const std::string& n : report.notes) out << "\nnote: " << n;
  out << "\n" << (report.passed() ? "all expectations met" : "expectations NOT met") << "\n";
  return out.str();
}

}  // namespace abc
