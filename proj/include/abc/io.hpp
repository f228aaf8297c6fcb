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

// Profile text format:
//
//   # comment
//   m=4
//   0 1
//   2
//   0 1
//
// One ballot per line as strictly increasing 0-based candidate indices.
// Voters are labelled 0,1,2,... in file order.

#pragma once

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abc/core.hpp"

namespace abc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace io {

struct Line {
  int number;
  std::string text;
};

inline std::vector<Line> read_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    lines.push_back({++number, text});
  }
  return lines;
}

inline bool is_comment(std::string_view s) { return !s.empty() && s.front() == '#'; }
inline bool is_blank(std::string_view s) { return s.find_first_not_of(" \t") == std::string_view::npos; }

inline std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Space-separated, strictly increasing indices in [0, m).
inline Ballot parse_ballot(const Line& line, int m) {
  Ballot ballot;
  int previous = -1;
  std::string_view rest = line.text;
  while (!rest.empty()) {
    const auto start = rest.find_first_not_of(' ');
    if (start == std::string_view::npos) break;
    rest.remove_prefix(start);
    const auto end = std::min(rest.find(' '), rest.size());
    const std::string_view token = rest.substr(0, end);
    rest.remove_prefix(end);
    const auto value = parse_int(token);
    if (!value || *value < 0)
      throw ParseError(line.number, "invalid candidate index '" + std::string(token) + "'");
    if (*value >= m)
      throw ParseError(line.number, "candidate " + std::to_string(*value) + " out of range for m=" +
                                        std::to_string(m));
    if (*value <= previous)
      throw ParseError(line.number, "ballot indices must be strictly increasing");
    ballot.insert(*value);
    previous = *value;
  }
  if (ballot.empty()) throw ParseError(line.number, "empty ballot");
  return ballot;
}

// Parses one profile starting at lines[pos]. Stops before the first line for
// which `stop` returns true, or at end of input. Advances pos.
template <class StopPredicate>
Profile parse_profile_block(const std::vector<Line>& lines, std::size_t& pos, StopPredicate stop) {
  while (pos < lines.size() && (is_comment(lines[pos].text) || is_blank(lines[pos].text))) ++pos;
  if (pos == lines.size())
    throw ParseError(lines.empty() ? 1 : lines.back().number + 1, "expected 'm=<int>'");
  const Line& header = lines[pos];
  if (header.text.rfind("m=", 0) != 0)
    throw ParseError(header.number, "expected 'm=<int>', got '" + header.text + "'");
  const auto m = parse_int(std::string_view(header.text).substr(2));
  if (!m || *m < 2 || *m > kMaxCandidates)
    throw ParseError(header.number, "invalid candidate count '" + header.text + "'");
  ++pos;
  std::vector<Ballot> ballots;
  for (; pos < lines.size() && !stop(lines[pos]); ++pos) {
    if (is_comment(lines[pos].text) || is_blank(lines[pos].text)) continue;
    ballots.push_back(parse_ballot(lines[pos], *m));
  }
  if (ballots.empty()) throw ParseError(header.number, "profile has no ballots");
  return Profile::from_ballots(*m, ballots);
}

}  // namespace io

inline Profile parse_profile(std::istream& in) {
  const auto lines = io::read_lines(in);
  std::size_t pos = 0;
  return io::parse_profile_block(lines, pos, [](const io::Line&) { return false; });
}

inline Profile parse_profile(const std::string& text) {
  std::istringstream in(text);
  return parse_profile(in);
}

inline std::string format_ballot(Ballot b) {
  std::string out;
  for (int c : b.members()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c);
  }
  return out;
}

inline std::string format_profile(const Profile& profile) {
  std::string out = "m=" + std::to_string(profile.m()) + "\n";
  for (const Voter& v : profile.voters()) out += format_ballot(v.ballot) + "\n";
  return out;
}

}  // namespace abc
