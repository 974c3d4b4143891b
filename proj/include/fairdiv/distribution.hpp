#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/allocation.hpp"
#include "fairdiv/errors.hpp"

namespace fairdiv {

/// A lottery over allocations: finite support with strictly positive exact
/// probabilities summing to 1, allocations pairwise distinct.
struct Distribution {
  std::vector<std::pair<Allocation, Rational>> support;

  bool operator==(const Distribution&) const = default;
};

inline void check_distribution(const Distribution& dist) {
  if (dist.support.empty()) throw DomainError("distribution has empty support");
  Rational total = 0;
  std::set<Allocation> seen;
  for (const auto& [alloc, p] : dist.support) {
    if (p <= 0) throw DomainError("non-positive probability in support");
    if (!seen.insert(alloc).second) throw DomainError("repeated allocation in support");
    total += p;
  }
  if (total != 1) throw DomainError("probabilities sum to " + format_rational(total) + ", not 1");
}

inline void check_distribution(const Instance& inst, const Distribution& dist) {
  check_distribution(dist);
  for (const auto& [alloc, p] : dist.support) check_allocation(inst, alloc);
}

/// Point mass on a single allocation.
inline Distribution point_mass(const Allocation& alloc) {
  return Distribution{{{alloc, Rational(1)}}};
}

/// Merges duplicate allocations (summing probabilities) and orders the
/// support lexicographically; drops zero-probability entries.
inline Distribution normalize_support(std::vector<std::pair<Allocation, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Distribution dist;
  for (auto& [alloc, p] : entries) {
    if (p == 0) continue;
    if (!dist.support.empty() && dist.support.back().first == alloc)
      dist.support.back().second += p;
    else
      dist.support.emplace_back(std::move(alloc), std::move(p));
  }
  return dist;
}

/// One support atom per line: "<p/q> : <1-based owner list>".
inline std::string format_distribution(const Distribution& dist) {
  std::string out;
  for (const auto& [alloc, p] : dist.support) {
    out += format_rational(p);
    out += " : ";
    out += format_allocation(alloc);
    out += '\n';
  }
  return out;
}

inline Distribution parse_distribution(const std::string& text, int num_agents, int num_goods) {
  Distribution dist;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (detail::tokenize_line(line).empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("missing ':' separator", line_no);
    auto prob_tokens = detail::tokenize_line(line.substr(0, colon));
    if (prob_tokens.size() != 1) throw ParseError("expected a single probability", line_no);
    auto p = parse_rational(prob_tokens[0]);
    if (!p) throw ParseError("malformed probability '" + prob_tokens[0] + "'", line_no);
    Allocation alloc;
    try {
      alloc = parse_allocation(line.substr(colon + 1), num_agents, num_goods);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    dist.support.emplace_back(std::move(alloc), std::move(*p));
  }
  check_distribution(dist);
  return dist;
}

}  // namespace fairdiv
