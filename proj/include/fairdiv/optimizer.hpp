#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fairdiv/objectives.hpp"
#include "fairdiv/polytope.hpp"

namespace fairdiv {

struct MinimizeOptions {
  std::optional<std::vector<Allocation>> atoms;  // support candidates; default is all of Π(n, M)
  bool prefilter_identical = true;               // identical rows: restrict atoms to distance minimizers
  Limits limits;
};

struct MinimizeResult {
  ObjectiveValue optimum;
  std::vector<Distribution> minimizers;
  bool unique = false;
  // Set for objectives without a vertex-optimality guarantee (max-var, vov,
  // std-of-stds): the result is the best point found, not a certified optimum.
  bool heuristic = false;
};

/// First proportional allocation in lexicographic order, if any exists. A
/// point mass on it has zero variance for every agent, the global floor of
/// each objective.
inline std::optional<Allocation> deterministic_proportional(const Instance& inst,
                                                            const Limits& limits = {}) {
  check_instance(inst);
  std::vector<Rational> shares;
  for (int i = 0; i < inst.num_agents; ++i) shares.push_back(proportional_share(inst, i));
  std::optional<Allocation> found;
  for_each_allocation_with_totals(inst, limits,
                                  [&](const Allocation& alloc, const std::vector<Rational>& totals) {
                                    if (found) return;
                                    for (int i = 0; i < inst.num_agents; ++i)
                                      if (totals[i] < shares[i]) return;
                                    found = alloc;
                                  });
  return found;
}

namespace detail {

inline std::vector<Rational> variances_at(const PropPolytope& poly, const std::vector<Rational>& p,
                                          const std::vector<Rational>& ratio_divisors) {
  std::vector<Rational> vars;
  vars.reserve(poly.num_agents());
  for (int i = 0; i < poly.num_agents(); ++i) {
    Rational mean = 0, second = 0;
    for (int j = 0; j < poly.num_atoms(); ++j) {
      if (p[j] == 0) continue;
      const Rational& v = poly.atom_values[i][j];
      mean += p[j] * v;
      second += p[j] * v * v;
    }
    Rational var = second - mean * mean;
    if (!ratio_divisors.empty()) var /= ratio_divisors[i];
    vars.push_back(std::move(var));
  }
  return vars;
}

inline std::vector<Rational> ratio_divisors_for(const Instance& inst, ObjectiveKind kind) {
  std::vector<Rational> divisors;
  if (kind != ObjectiveKind::SoVoR) return divisors;
  for (int i = 0; i < inst.num_agents; ++i) {
    Rational total = row_total(inst, i);
    if (total == 0) throw DomainError("sovor undefined when an agent values all goods at 0");
    divisors.push_back(total * total);
  }
  return divisors;
}

inline bool exactness_guaranteed(ObjectiveKind kind) {
  // Sum-of-variances is strongly concave in the probabilities, so its minimum
  // over the polytope sits at a vertex; sovor is the same function scaled by
  // per-agent constants. Sum-of-stds is the sum of square roots of concave
  // non-negative functions, hence concave as well, which keeps the vertex
  // argument valid. (The extension beyond sum-of-variances is an
  // implementation-level argument, not a quoted result.)
  return kind == ObjectiveKind::SoV || kind == ObjectiveKind::SoVoR ||
         kind == ObjectiveKind::SumOfStds;
}

/// Orders candidate variance vectors for argmin selection.
inline Ordering order_or_throw(ObjectiveKind kind, const std::vector<Rational>& a,
                               const std::vector<Rational>& b, const Limits& limits) {
  CompareResult cmp = compare_variances(kind, a, b, limits);
  if (cmp.order == Ordering::Undecided)
    throw DomainError("objective comparison undecided at max_bits");
  return cmp.order;
}

inline ObjectiveValue value_from_variances(ObjectiveKind kind, const std::vector<Rational>& vars,
                                           const Limits& limits) {
  if (auto exact = exact_objective(kind, vars)) return *exact;
  return interval_objective(kind, vars, limits.bits);
}

struct ScanResult {
  std::vector<std::size_t> argmin;          // indices into the candidate list
  std::vector<Rational> best_vars;
};

inline ScanResult scan_candidates(ObjectiveKind kind,
                                  const std::vector<std::vector<Rational>>& candidate_vars,
                                  const Limits& limits) {
  ScanResult scan;
  for (std::size_t idx = 0; idx < candidate_vars.size(); ++idx) {
    if (scan.argmin.empty()) {
      scan.argmin.push_back(idx);
      scan.best_vars = candidate_vars[idx];
      continue;
    }
    switch (order_or_throw(kind, candidate_vars[idx], scan.best_vars, limits)) {
      case Ordering::Less:
        scan.argmin.assign(1, idx);
        scan.best_vars = candidate_vars[idx];
        break;
      case Ordering::Equal:
        scan.argmin.push_back(idx);
        break;
      default:
        break;
    }
  }
  return scan;
}

inline MinimizeResult minimize_identical_fast_path(const Instance& inst, ObjectiveKind kind,
                                                   const MinimizeOptions& options) {
  auto records = min_distance_allocations(inst, /*restrict_to_mms=*/false, options.limits);
  Rational optimum = records.front().dist_sq;
  if (kind == ObjectiveKind::SoVoR) {
    Rational total = row_total(inst, 0);
    if (total == 0 && inst.num_goods > 0) throw DomainError("sovor undefined for zero totals");
    if (total != 0) optimum /= total * total;
  }

  MinimizeResult result;
  result.optimum = optimum;
  if (records.front().dist_sq == 0) {
    // A proportional allocation exists; its point mass already has zero
    // variance everywhere.
    for (const auto& rec : records) result.minimizers.push_back(point_mass(rec.alloc));
    result.unique = records.size() == 1;
    return result;
  }

  // One lottery per cyclic-shift orbit: picking one of the n shifts uniformly
  // is ex-ante proportional and keeps every supported allocation at the
  // minimum distance.
  std::set<Allocation> covered;
  const Rational share(1, inst.num_agents);
  for (const auto& rec : records) {
    if (covered.count(rec.alloc)) continue;
    std::vector<std::pair<Allocation, Rational>> entries;
    for (auto& shift : cyclic_shifts(rec.alloc, inst.num_agents)) {
      covered.insert(shift);
      entries.emplace_back(std::move(shift), share);
    }
    result.minimizers.push_back(normalize_support(std::move(entries)));
  }

  if (result.minimizers.size() > 1) {
    result.unique = false;
  } else {
    // Every feasible mixture of distance minimizers is optimal, so the
    // optimum is unique exactly when the restricted polytope is a point.
    std::vector<Allocation> atoms;
    for (const auto& rec : records) atoms.push_back(rec.alloc);
    auto poly = build_prop_polytope(inst, std::move(atoms), options.limits);
    result.unique = polytope_vertices(poly, options.limits).vertices.size() == 1;
  }
  return result;
}

}  // namespace detail

/// Minimizes the objective over all ex-ante proportional lotteries supported
/// on the atom list (default: every allocation). For sov/sovor with identical
/// rows the distance characterization gives the optimum directly; otherwise
/// every polytope vertex is evaluated and all exact argmin vertices are
/// returned. max-var, vov and std-of-stds get a best-effort scan plus local
/// refinement, flagged as heuristic.
inline MinimizeResult minimize(const Instance& inst, ObjectiveKind kind,
                               const MinimizeOptions& options = {}) {
  check_instance(inst);
  const Limits& limits = options.limits;

  bool identical = identical_rows(inst);
  bool sov_like = kind == ObjectiveKind::SoV || kind == ObjectiveKind::SoVoR;
  if (identical && sov_like && !options.atoms && options.prefilter_identical)
    return detail::minimize_identical_fast_path(inst, kind, options);

  std::vector<Allocation> atoms;
  if (options.atoms) {
    atoms = *options.atoms;
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  } else {
    auto count = checked_pow(inst.num_agents, inst.num_goods,
                             static_cast<std::uint64_t>(limits.max_atoms));
    if (!count) throw ResourceLimitError("allocation space exceeds max_atoms; pass atoms");
    atoms = all_allocations(inst.num_agents, inst.num_goods, limits);
  }

  auto poly = build_prop_polytope(inst, std::move(atoms), limits);
  auto enumeration = polytope_vertices(poly, limits);
  if (!enumeration.feasible) throw DomainError("no ex-ante proportional lottery over the atoms");

  std::vector<Rational> divisors = detail::ratio_divisors_for(inst, kind);
  std::vector<std::vector<Rational>> candidate_vars;
  candidate_vars.reserve(enumeration.vertices.size());
  for (const auto& v : enumeration.vertices)
    candidate_vars.push_back(detail::variances_at(poly, v.probabilities, divisors));

  auto scan = detail::scan_candidates(kind, candidate_vars, limits);

  MinimizeResult result;
  result.heuristic = !detail::exactness_guaranteed(kind);

  if (!result.heuristic) {
    result.optimum = detail::value_from_variances(kind, scan.best_vars, limits);
    for (std::size_t idx : scan.argmin)
      result.minimizers.push_back(vertex_distribution(poly, enumeration.vertices[idx]));
    result.unique = scan.argmin.size() == 1;
    return result;
  }

  // Non-concave objectives can dip inside the polytope. Walk convex
  // combinations of the most promising points; every combination stays
  // feasible, so no constraint checking is needed.
  std::vector<std::vector<Rational>> pool;
  for (const auto& v : enumeration.vertices) pool.push_back(v.probabilities);
  std::vector<Rational> best_point = pool[scan.argmin.front()];
  std::vector<Rational> best_vars = scan.best_vars;
  const Rational lambdas[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (int round = 0; round < 2; ++round) {
    std::vector<std::vector<Rational>> next_pool = pool;
    for (std::size_t a = 0; a < pool.size(); ++a) {
      for (std::size_t b = a + 1; b < pool.size(); ++b) {
        for (const auto& lambda : lambdas) {
          std::vector<Rational> mix(poly.num_atoms());
          for (int j = 0; j < poly.num_atoms(); ++j)
            mix[j] = lambda * pool[a][j] + (1 - lambda) * pool[b][j];
          auto vars = detail::variances_at(poly, mix, divisors);
          // An undecided comparison simply means "no certified improvement".
          if (detail::compare_variances(kind, vars, best_vars, limits).order == Ordering::Less) {
            best_vars = vars;
            best_point = mix;
            next_pool.push_back(std::move(mix));
          }
        }
      }
    }
    pool = std::move(next_pool);
  }

  result.optimum = detail::value_from_variances(kind, best_vars, limits);
  std::vector<std::pair<Allocation, Rational>> entries;
  for (int j = 0; j < poly.num_atoms(); ++j)
    if (best_point[j] != 0) entries.emplace_back(poly.atoms[j], best_point[j]);
  result.minimizers.push_back(normalize_support(std::move(entries)));
  result.unique = false;
  return result;
}

/// True iff the candidate is feasible, attains the vertex-enumeration
/// optimum, and every other vertex is strictly worse.
inline bool verify_unique_minimizer(const Instance& inst, const Distribution& candidate,
                                    ObjectiveKind kind, const MinimizeOptions& options = {}) {
  if (!detail::exactness_guaranteed(kind))
    throw DomainError("uniqueness verification needs an exactness-guaranteed objective");
  if (!check_exante_proportional(inst, candidate)) return false;

  MinimizeResult result = minimize(inst, kind, options);
  if (result.minimizers.empty()) return false;

  bool ratios = kind == ObjectiveKind::SoVoR;
  std::vector<Rational> candidate_vars = agent_variances(inst, candidate, ratios);
  std::vector<Rational> best_vars = agent_variances(inst, result.minimizers.front(), ratios);
  if (detail::order_or_throw(kind, candidate_vars, best_vars, options.limits) != Ordering::Equal)
    return false;
  if (!result.unique) return false;
  Distribution normalized = normalize_support(candidate.support);
  return normalized == result.minimizers.front();
}

}  // namespace fairdiv
