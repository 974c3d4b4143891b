#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairdiv/fairness.hpp"

namespace fairdiv {

/// Lexicographic stream over all n^m assignments. Memory is one allocation;
/// nothing is materialized.
class AllocationStream {
 public:
  AllocationStream(int n, int m, const Limits& limits = {}) : n_(n) {
    if (n < 1) throw DomainError("agent count must be positive");
    if (m < 0) throw DimensionError("negative number of goods");
    if (!checked_pow(n, m, limits.max_states))
      throw ResourceLimitError("allocation space exceeds max_states");
    current_.owner.assign(m, 0);
  }

  /// The next allocation in lexicographic owner order, or nullopt at the end.
  std::optional<Allocation> next() {
    if (done_) return std::nullopt;
    Allocation out = current_;
    advance();
    return out;
  }

 private:
  void advance() {
    for (int g = static_cast<int>(current_.owner.size()) - 1; g >= 0; --g) {
      if (++current_.owner[g] < n_) return;
      current_.owner[g] = 0;
    }
    done_ = true;
  }

  int n_;
  Allocation current_;
  bool done_ = false;
};

/// Calls fn(alloc) for every allocation in lexicographic order.
template <typename F>
void for_each_allocation(int n, int m, const Limits& limits, F&& fn) {
  AllocationStream stream(n, m, limits);
  while (auto alloc = stream.next()) fn(*alloc);
}

/// Calls fn(alloc, totals) with per-agent bundle totals maintained
/// incrementally across the lexicographic walk.
template <typename F>
void for_each_allocation_with_totals(const Instance& inst, const Limits& limits, F&& fn) {
  check_instance(inst);
  const int n = inst.num_agents;
  const int m = inst.num_goods;
  if (!checked_pow(n, m, limits.max_states))
    throw ResourceLimitError("allocation space exceeds max_states");
  Allocation alloc;
  alloc.owner.assign(m, 0);
  std::vector<Rational> totals(n, Rational(0));
  for (int g = 0; g < m; ++g) totals[0] += inst.values[0][g];
  while (true) {
    fn(static_cast<const Allocation&>(alloc), static_cast<const std::vector<Rational>&>(totals));
    int g = m - 1;
    for (; g >= 0; --g) {
      int o = alloc.owner[g];
      totals[o] -= inst.values[o][g];
      if (o + 1 < n) {
        alloc.owner[g] = o + 1;
        totals[o + 1] += inst.values[o + 1][g];
        break;
      }
      alloc.owner[g] = 0;
      totals[0] += inst.values[0][g];
    }
    if (g < 0) return;
  }
}

/// True when the owner sequence is the canonical representative of its
/// agent-relabeling class: agents are numbered in order of first use.
inline bool canonical_agent_labels(const Allocation& alloc) {
  int used = 0;
  for (int o : alloc.owner) {
    if (o > used) return false;
    if (o == used) ++used;
  }
  return true;
}

/// Materialized Π(n, M) in lexicographic order. With symmetry_reduced only
/// one representative per agent-permutation class is kept; default off so
/// counts match n^m exactly.
inline std::vector<Allocation> all_allocations(int n, int m, const Limits& limits = {},
                                               bool symmetry_reduced = false) {
  std::vector<Allocation> out;
  if (auto count = checked_pow(n, m, limits.max_states))
    if (!symmetry_reduced) out.reserve(*count);
  for_each_allocation(n, m, limits, [&](const Allocation& a) {
    if (!symmetry_reduced || canonical_agent_labels(a)) out.push_back(a);
  });
  return out;
}

/// An allocation with its value vector and exact squared Euclidean distance
/// to the all-PS vector.
struct DistanceRecord {
  Allocation alloc;
  ValueVector vector;
  Rational dist_sq;
};

namespace detail {

inline void require_identical_rows(const Instance& inst) {
  if (!identical_rows(inst)) throw DomainError("valuation rows are not identical");
}

inline Rational dist_sq_from_totals(const std::vector<Rational>& totals, const Rational& ps) {
  Rational d = 0;
  for (const auto& t : totals) {
    Rational gap = t - ps;
    d += gap * gap;
  }
  return d;
}

}  // namespace detail

/// || v(A) - (PS)^n ||^2, exact. Requires identical valuation rows.
inline Rational distance_sq_to_ps(const Instance& inst, const Allocation& alloc) {
  detail::require_identical_rows(inst);
  ValueVector vv = value_vector(inst, alloc);
  return detail::dist_sq_from_totals(vv, proportional_share(inst, 0));
}

/// All allocations achieving the minimum squared distance to (PS)^n, in
/// lexicographic order; with restrict_to_mms the minimum is taken over the
/// MMS-fair allocations only (one always exists for identical rows).
inline std::vector<DistanceRecord> min_distance_allocations(const Instance& inst,
                                                            bool restrict_to_mms,
                                                            const Limits& limits = {}) {
  detail::require_identical_rows(inst);
  const Rational ps = proportional_share(inst, 0);
  std::optional<Rational> mms;
  if (restrict_to_mms) mms = maximin_share(inst, 0, limits);

  std::optional<Rational> best;
  std::vector<DistanceRecord> ties;
  for_each_allocation_with_totals(inst, limits, [&](const Allocation& alloc,
                                                    const std::vector<Rational>& totals) {
    if (mms) {
      for (const auto& t : totals)
        if (t < *mms) return;
    }
    Rational d = detail::dist_sq_from_totals(totals, ps);
    if (!best || d < *best) {
      best = d;
      ties.clear();
    }
    if (d == *best) ties.push_back({alloc, totals, d});
  });
  return ties;
}

/// All 2-bundle splits of the goods minimizing |v(S_1) - v(S_2)|, as n=2
/// allocations in lexicographic order (a split and its swap both appear).
inline std::vector<Allocation> difference_minimizing_partitions(const std::vector<Rational>& values,
                                                                const Limits& limits = {}) {
  Instance two;
  two.num_agents = 2;
  two.num_goods = static_cast<int>(values.size());
  two.values = {values, values};
  std::optional<Rational> best;
  std::vector<Allocation> ties;
  for_each_allocation_with_totals(two, limits, [&](const Allocation& alloc,
                                                   const std::vector<Rational>& totals) {
    Rational diff = totals[0] >= totals[1] ? totals[0] - totals[1] : totals[1] - totals[0];
    if (!best || diff < *best) {
      best = diff;
      ties.clear();
    }
    if (diff == *best) ties.push_back(alloc);
  });
  return ties;
}

/// CSV rows "allocation,v_1,...,v_n,dist_sq" with the allocation as the
/// 1-based owner list.
inline std::string records_to_csv(const std::vector<DistanceRecord>& records, int num_agents) {
  std::string out = "allocation";
  for (int i = 1; i <= num_agents; ++i) out += ",v_" + std::to_string(i);
  out += ",dist_sq\n";
  for (const auto& rec : records) {
    out += format_allocation(rec.alloc);
    for (const auto& v : rec.vector) out += "," + format_rational(v);
    out += "," + format_rational(rec.dist_sq) + "\n";
  }
  return out;
}

}  // namespace fairdiv
