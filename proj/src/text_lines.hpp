#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "orbends/errors.hpp"

namespace orbends::detail {

struct TextLine {
  int number = 0;
  std::string body; // comment stripped, trimmed
  std::vector<std::string> tokens;
};

/// Non-blank lines with `#` comments removed.
inline std::vector<TextLine> read_lines(std::istream &in) {
  std::vector<TextLine> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    auto last = raw.find_last_not_of(" \t\r");
    TextLine line;
    line.number = number;
    line.body = raw.substr(first, last - first + 1);
    std::istringstream words(line.body);
    for (std::string w; words >> w;)
      line.tokens.push_back(w);
    lines.push_back(std::move(line));
  }
  return lines;
}

inline long long parse_integer(const std::string &token, int line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception &) {
    throw parse_error(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size())
    throw parse_error(line, "expected an integer, got '" + token + "'");
  return value;
}

/// Text after the first token of a line, trimmed.
inline std::string rest_of_line(const TextLine &line) {
  auto space = line.body.find_first_of(" \t");
  if (space == std::string::npos)
    return {};
  auto start = line.body.find_first_not_of(" \t", space);
  return start == std::string::npos ? std::string{} : line.body.substr(start);
}

} // namespace orbends::detail
