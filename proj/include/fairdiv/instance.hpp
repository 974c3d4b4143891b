#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

/// A fair-division problem: n agents with additive valuations over m goods.
/// values[i][g] is agent i's value for the singleton {g}; entries are >= 0.
struct Instance {
  int num_agents = 0;
  int num_goods = 0;
  std::vector<std::vector<Rational>> values;

  bool operator==(const Instance&) const = default;
};

inline void check_instance(const Instance& inst) {
  if (inst.num_agents < 1) throw DimensionError("instance needs at least one agent");
  if (inst.num_goods < 0) throw DimensionError("negative number of goods");
  if (static_cast<int>(inst.values.size()) != inst.num_agents)
    throw DimensionError("value matrix row count does not match agent count");
  for (const auto& row : inst.values) {
    if (static_cast<int>(row.size()) != inst.num_goods)
      throw DimensionError("value matrix column count does not match good count");
    for (const auto& v : row)
      if (v < 0) throw DomainError("negative value entry");
  }
}

namespace detail {

inline std::vector<std::string> tokenize_line(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace detail

/// Parses the instance text format. Comments start with '#'. Throws ParseError
/// with a 1-based line number on malformed input; rejects negative entries.
inline Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    header = detail::tokenize_line(line);
  }
  if (header.empty()) throw ParseError("missing header line", line_no == 0 ? 1 : line_no);
  if (header.size() != 2) throw ParseError("header must be '<n> <m>'", line_no);
  Instance inst;
  try {
    inst.num_agents = std::stoi(header[0]);
    inst.num_goods = std::stoi(header[1]);
  } catch (const std::exception&) {
    throw ParseError("header must hold two decimal integers", line_no);
  }
  if (inst.num_agents < 1) throw ParseError("agent count must be positive", line_no);
  if (inst.num_goods < 0) throw ParseError("good count must be non-negative", line_no);

  for (int i = 0; i < inst.num_agents; ++i) {
    std::vector<std::string> tokens;
    while (tokens.empty() && std::getline(in, line)) {
      ++line_no;
      tokens = detail::tokenize_line(line);
    }
    if (tokens.empty()) {
      if (inst.num_goods == 0) {
        inst.values.emplace_back();
        continue;
      }
      throw ParseError("missing valuation row for agent " + std::to_string(i + 1), line_no + 1);
    }
    if (static_cast<int>(tokens.size()) != inst.num_goods)
      throw ParseError("expected " + std::to_string(inst.num_goods) + " values, found " +
                           std::to_string(tokens.size()),
                       line_no);
    std::vector<Rational> row;
    row.reserve(tokens.size());
    for (const auto& tok : tokens) {
      auto r = parse_rational(tok);
      if (!r) throw ParseError("malformed rational '" + tok + "'", line_no);
      if (*r < 0) throw ParseError("negative value '" + tok + "'", line_no);
      row.push_back(std::move(*r));
    }
    inst.values.push_back(std::move(row));
  }
  // Trailing content other than comments/blank lines is a format violation.
  while (std::getline(in, line)) {
    ++line_no;
    if (!detail::tokenize_line(line).empty())
      throw ParseError("unexpected extra row", line_no);
  }
  return inst;
}

/// Canonical text form; parse_instance(serialize_instance(x)) == x.
inline std::string serialize_instance(const Instance& inst) {
  std::string out = std::to_string(inst.num_agents) + " " + std::to_string(inst.num_goods) + "\n";
  for (const auto& row : inst.values) {
    for (std::size_t g = 0; g < row.size(); ++g) {
      if (g) out += ' ';
      out += format_rational(row[g]);
    }
    if (!row.empty()) out += '\n';
  }
  return out;
}

/// Exact sum of singleton values over `bundle` (0-based goods); empty sum is 0.
inline Rational bundle_value(const Instance& inst, int agent, const std::vector<int>& bundle) {
  if (agent < 0 || agent >= inst.num_agents) throw DimensionError("agent index out of range");
  Rational total = 0;
  for (int g : bundle) {
    if (g < 0 || g >= inst.num_goods) throw DimensionError("good index out of range");
    total += inst.values[agent][g];
  }
  return total;
}

inline Rational row_total(const Instance& inst, int agent) {
  Rational total = 0;
  for (const auto& v : inst.values[agent]) total += v;
  return total;
}

/// The common total C when every agent values the full set at C, else nullopt.
inline std::optional<Rational> is_normalized(const Instance& inst) {
  Rational c = row_total(inst, 0);
  for (int i = 1; i < inst.num_agents; ++i)
    if (row_total(inst, i) != c) return std::nullopt;
  return c;
}

inline bool identical_rows(const Instance& inst) {
  for (int i = 1; i < inst.num_agents; ++i)
    if (inst.values[i] != inst.values[0]) return false;
  return true;
}

}  // namespace fairdiv
