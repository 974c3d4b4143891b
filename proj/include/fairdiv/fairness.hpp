#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/distribution.hpp"
#include "fairdiv/limits.hpp"

namespace fairdiv {

struct FairnessCriterion {
  enum class Kind { Proportional, EF1, EFX, MMS, RhoMMS };
  Kind kind = Kind::Proportional;
  Rational rho = 1;  // only meaningful for RhoMMS, 0 < rho <= 1

  static FairnessCriterion proportional() { return {Kind::Proportional, 1}; }
  static FairnessCriterion ef1() { return {Kind::EF1, 1}; }
  static FairnessCriterion efx() { return {Kind::EFX, 1}; }
  static FairnessCriterion mms() { return {Kind::MMS, 1}; }
  static FairnessCriterion rho_mms(Rational rho) {
    if (rho <= 0 || rho > 1) throw DomainError("rho must lie in (0, 1]");
    return {Kind::RhoMMS, std::move(rho)};
  }
};

/// CLI names: prop, ef1, efx, mms, rho-mms:<p/q>.
inline FairnessCriterion parse_criterion(const std::string& name) {
  if (name == "prop") return FairnessCriterion::proportional();
  if (name == "ef1") return FairnessCriterion::ef1();
  if (name == "efx") return FairnessCriterion::efx();
  if (name == "mms") return FairnessCriterion::mms();
  if (name.rfind("rho-mms:", 0) == 0) {
    auto rho = parse_rational(name.substr(8));
    if (!rho) throw ParseError("malformed rho in '" + name + "'");
    return FairnessCriterion::rho_mms(*rho);
  }
  throw ParseError("unknown criterion '" + name + "'");
}

inline std::string criterion_name(const FairnessCriterion& crit) {
  switch (crit.kind) {
    case FairnessCriterion::Kind::Proportional: return "prop";
    case FairnessCriterion::Kind::EF1: return "ef1";
    case FairnessCriterion::Kind::EFX: return "efx";
    case FairnessCriterion::Kind::MMS: return "mms";
    case FairnessCriterion::Kind::RhoMMS: return "rho-mms:" + format_rational(crit.rho);
  }
  return "?";
}

struct CheckOptions {
  // EFX normally requires envy to vanish when any positive-valued good is
  // removed; strict mode demands it for zero-valued goods as well.
  bool efx_strict = false;
};

/// v_agent(M) / n.
inline Rational proportional_share(const Instance& inst, int agent) {
  if (agent < 0 || agent >= inst.num_agents) throw DimensionError("agent index out of range");
  return row_total(inst, agent) / inst.num_agents;
}

/// Exact MMS by exhaustive partition search over the given goods (empty
/// bundles allowed). Bundles are unlabeled, so the search only visits
/// canonical assignments: each good may open at most one new bundle.
inline Rational maximin_share(const std::vector<Rational>& values, int n,
                              const std::vector<int>& goods, const Limits& limits = {}) {
  if (n < 1) throw DomainError("agent count must be positive");
  for (int g : goods)
    if (g < 0 || g >= static_cast<int>(values.size()))
      throw DimensionError("good index out of range");
  if (!checked_pow(n, goods.size(), limits.max_states))
    throw ResourceLimitError("partition space exceeds max_states");
  if (goods.empty()) return 0;
  if (n == 1) {
    Rational total = 0;
    for (int g : goods) total += values[g];
    return total;
  }

  std::vector<Rational> sums(n, Rational(0));
  Rational best = 0;  // every partition with an empty bundle scores 0
  std::function<void(std::size_t, int)> assign = [&](std::size_t depth, int used) {
    if (depth == goods.size()) {
      Rational low = sums[0];
      for (int b = 1; b < n; ++b)
        if (sums[b] < low) low = sums[b];
      if (low > best) best = low;
      return;
    }
    int reach = std::min(n - 1, used);  // may reuse bundles 0..used-1 or open bundle `used`
    for (int b = 0; b <= reach; ++b) {
      sums[b] += values[goods[depth]];
      assign(depth + 1, std::max(used, b + 1));
      sums[b] -= values[goods[depth]];
    }
  };
  assign(0, 0);
  return best;
}

inline Rational maximin_share(const Instance& inst, int agent, const Limits& limits = {}) {
  std::vector<int> all(inst.num_goods);
  for (int g = 0; g < inst.num_goods; ++g) all[g] = g;
  return maximin_share(inst.values[agent], inst.num_agents, all, limits);
}

namespace detail {

inline bool envy_after_removal_ok(const Instance& inst, const ValueVector& vv,
                                  const Allocation& alloc, int i, int l, bool efx,
                                  bool efx_strict) {
  // i views l's bundle through i's own valuation.
  Rational other = bundle_value(inst, i, agent_bundle(alloc, l));
  if (vv[i] >= other) return true;
  Rational removable;  // the value whose removal the criterion guarantees
  bool found = false;
  for (int g = 0; g < inst.num_goods; ++g) {
    if (alloc.owner[g] != l) continue;
    const Rational& v = inst.values[i][g];
    if (efx && !efx_strict && v == 0) continue;
    if (!found) {
      removable = v;
      found = true;
    } else if (efx ? (v < removable) : (v > removable)) {
      removable = v;
    }
  }
  if (!found) return !efx;  // envied bundle with nothing removable
  return vv[i] >= other - removable;
}

}  // namespace detail

/// Exact check of a single allocation against a criterion.
inline bool check_fairness(const Instance& inst, const Allocation& alloc,
                           const FairnessCriterion& crit, const Limits& limits = {},
                           const CheckOptions& opts = {}) {
  check_allocation(inst, alloc);
  ValueVector vv = value_vector(inst, alloc);
  switch (crit.kind) {
    case FairnessCriterion::Kind::Proportional:
      for (int i = 0; i < inst.num_agents; ++i)
        if (vv[i] < proportional_share(inst, i)) return false;
      return true;
    case FairnessCriterion::Kind::EF1:
    case FairnessCriterion::Kind::EFX: {
      bool efx = crit.kind == FairnessCriterion::Kind::EFX;
      for (int i = 0; i < inst.num_agents; ++i)
        for (int l = 0; l < inst.num_agents; ++l)
          if (i != l && !detail::envy_after_removal_ok(inst, vv, alloc, i, l, efx, opts.efx_strict))
            return false;
      return true;
    }
    case FairnessCriterion::Kind::MMS:
    case FairnessCriterion::Kind::RhoMMS: {
      Rational rho = crit.kind == FairnessCriterion::Kind::MMS ? Rational(1) : crit.rho;
      for (int i = 0; i < inst.num_agents; ++i)
        if (vv[i] < rho * maximin_share(inst, i, limits)) return false;
      return true;
    }
  }
  return false;
}

/// min_i v_i(A_i)/MMS_i over agents with positive MMS. `ratio` is absent when
/// every agent's MMS is zero (nothing to approximate). Agents with MMS_i = 0
/// are skipped; `zero_mms_agent_got_zero` records whether any of them also
/// received zero value.
struct MmsRatioResult {
  std::optional<Rational> ratio;
  bool zero_mms_agent_got_zero = false;
};

inline MmsRatioResult mms_ratio(const Instance& inst, const Allocation& alloc,
                                const Limits& limits = {}) {
  ValueVector vv = value_vector(inst, alloc);
  MmsRatioResult result;
  for (int i = 0; i < inst.num_agents; ++i) {
    Rational mms = maximin_share(inst, i, limits);
    if (mms == 0) {
      if (vv[i] == 0) result.zero_mms_agent_got_zero = true;
      continue;
    }
    Rational r = vv[i] / mms;
    if (!result.ratio || r < *result.ratio) result.ratio = std::move(r);
  }
  return result;
}

/// Expected value and exact variance of agent i's bundle value under dist.
inline Rational expected_value(const Instance& inst, const Distribution& dist, int agent) {
  Rational mean = 0;
  for (const auto& [alloc, p] : dist.support)
    mean += p * bundle_value(inst, agent, agent_bundle(alloc, agent));
  return mean;
}

inline bool check_exante_proportional(const Instance& inst, const Distribution& dist) {
  check_distribution(inst, dist);
  for (int i = 0; i < inst.num_agents; ++i)
    if (expected_value(inst, dist, i) < proportional_share(inst, i)) return false;
  return true;
}

/// True iff every allocation in the support satisfies crit.
inline bool check_expost_property(const Instance& inst, const Distribution& dist,
                                  const FairnessCriterion& crit, const Limits& limits = {},
                                  const CheckOptions& opts = {}) {
  check_distribution(inst, dist);
  for (const auto& [alloc, p] : dist.support)
    if (!check_fairness(inst, alloc, crit, limits, opts)) return false;
  return true;
}

}  // namespace fairdiv
