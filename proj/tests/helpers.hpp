#pragma once

#include <set>
#include <vector>

#include "fairdiv/search.hpp"

namespace testutil {

using namespace fairdiv;

inline Instance random_instance(SplitMix64& rng, int n, int m, std::uint64_t lo, std::uint64_t hi,
                                bool identical) {
  SearchConfig cfg;
  cfg.num_agents = n;
  cfg.num_goods = m;
  cfg.value_min = lo;
  cfg.value_max = hi;
  cfg.identical = identical;
  cfg.seed = rng.next();
  return fairdiv::random_instance(cfg, 0);
}

inline Allocation random_allocation(SplitMix64& rng, int n, int m) {
  Allocation alloc;
  alloc.owner.reserve(m);
  for (int g = 0; g < m; ++g) alloc.owner.push_back(static_cast<int>(rng.in_range(0, n - 1)));
  return alloc;
}

/// Random lottery over up to `atoms` distinct random allocations, with
/// positive rational weights summing to one.
inline Distribution random_distribution(SplitMix64& rng, int n, int m, int atoms = 4) {
  if (auto count = checked_pow(n, m, 64)) atoms = std::min<int>(atoms, static_cast<int>(*count));
  std::set<Allocation> support;
  while (static_cast<int>(support.size()) < atoms) support.insert(random_allocation(rng, n, m));
  std::vector<std::pair<Allocation, Rational>> entries;
  Rational total = 0;
  for (const auto& alloc : support) {
    Rational w(BigInt(rng.in_range(1, 20)));
    total += w;
    entries.emplace_back(alloc, w);
  }
  for (auto& [alloc, w] : entries) w /= total;
  return normalize_support(std::move(entries));
}

/// Random ex-ante proportional lottery for identical rows: a mixture of
/// uniform cyclic-shift families, each of which already meets every agent's
/// share exactly.
inline Distribution random_proportional_mixture(SplitMix64& rng, const Instance& inst,
                                                int families = 3) {
  std::vector<std::pair<Allocation, Rational>> entries;
  std::vector<Rational> weights;
  Rational total = 0;
  for (int f = 0; f < families; ++f) {
    weights.emplace_back(BigInt(rng.in_range(1, 10)));
    total += weights.back();
  }
  for (int f = 0; f < families; ++f) {
    Allocation base = random_allocation(rng, inst.num_agents, inst.num_goods);
    Rational share = weights[f] / (total * inst.num_agents);
    for (auto& shift : cyclic_shifts(base, inst.num_agents))
      entries.emplace_back(std::move(shift), share);
  }
  return normalize_support(std::move(entries));
}

inline std::set<Allocation> allocation_set(const std::vector<DistanceRecord>& records) {
  std::set<Allocation> out;
  for (const auto& rec : records) out.insert(rec.alloc);
  return out;
}

}  // namespace testutil
