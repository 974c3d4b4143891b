#pragma once

#include <compare>
#include <string>
#include <vector>

#include "fairdiv/errors.hpp"
#include "fairdiv/instance.hpp"

namespace fairdiv {

/// A total assignment of goods to agents: owner[g] is the 0-based agent that
/// holds good g. Bundles may be empty. External text is 1-based.
struct Allocation {
  std::vector<int> owner;

  auto operator<=>(const Allocation&) const = default;
};

using ValueVector = std::vector<Rational>;

inline void check_allocation(const Instance& inst, const Allocation& alloc) {
  if (static_cast<int>(alloc.owner.size()) != inst.num_goods)
    throw DimensionError("allocation length does not match good count");
  for (int o : alloc.owner)
    if (o < 0 || o >= inst.num_agents) throw DimensionError("owner index out of range");
}

/// Goods held by `agent`, in increasing good order.
inline std::vector<int> agent_bundle(const Allocation& alloc, int agent) {
  std::vector<int> bundle;
  for (int g = 0; g < static_cast<int>(alloc.owner.size()); ++g)
    if (alloc.owner[g] == agent) bundle.push_back(g);
  return bundle;
}

/// Entry i is v_i(A_i).
inline ValueVector value_vector(const Instance& inst, const Allocation& alloc) {
  check_allocation(inst, alloc);
  ValueVector entries(inst.num_agents, Rational(0));
  for (int g = 0; g < inst.num_goods; ++g) entries[alloc.owner[g]] += inst.values[alloc.owner[g]][g];
  return entries;
}

/// The n allocations obtained by rotating bundle ownership; shift 0 is the
/// identity. Duplicates appear only when the rotated assignments coincide.
inline std::vector<Allocation> cyclic_shifts(const Allocation& alloc, int n) {
  std::vector<Allocation> shifts;
  shifts.reserve(n);
  for (int s = 0; s < n; ++s) {
    Allocation shifted = alloc;
    for (int& o : shifted.owner) o = (o + s) % n;
    shifts.push_back(std::move(shifted));
  }
  return shifts;
}

inline std::string format_allocation(const Allocation& alloc) {
  std::string out;
  for (std::size_t g = 0; g < alloc.owner.size(); ++g) {
    if (g) out += ' ';
    out += std::to_string(alloc.owner[g] + 1);
  }
  return out;
}

/// Parses m whitespace-separated 1-based agent indices.
inline Allocation parse_allocation(const std::string& text, int num_agents, int num_goods) {
  auto tokens = detail::tokenize_line(text);
  if (static_cast<int>(tokens.size()) != num_goods)
    throw ParseError("expected " + std::to_string(num_goods) + " owner entries, found " +
                     std::to_string(tokens.size()));
  Allocation alloc;
  alloc.owner.reserve(tokens.size());
  for (const auto& tok : tokens) {
    int o;
    try {
      o = std::stoi(tok);
    } catch (const std::exception&) {
      throw ParseError("malformed owner index '" + tok + "'");
    }
    if (o < 1 || o > num_agents) throw ParseError("owner index '" + tok + "' out of range");
    alloc.owner.push_back(o - 1);
  }
  return alloc;
}

}  // namespace fairdiv
