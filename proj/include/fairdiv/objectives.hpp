#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fairdiv/certified.hpp"
#include "fairdiv/enumeration.hpp"

namespace fairdiv {

enum class ObjectiveKind { SoV, SoVoR, MaxVar, VoV, StdOfStds, SumOfStds };

inline ObjectiveKind parse_objective(const std::string& name) {
  if (name == "sov") return ObjectiveKind::SoV;
  if (name == "sovor") return ObjectiveKind::SoVoR;
  if (name == "max-var") return ObjectiveKind::MaxVar;
  if (name == "vov") return ObjectiveKind::VoV;
  if (name == "std-of-stds") return ObjectiveKind::StdOfStds;
  if (name == "sum-of-stds") return ObjectiveKind::SumOfStds;
  throw ParseError("unknown objective '" + name + "'");
}

inline std::string objective_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::SoV: return "sov";
    case ObjectiveKind::SoVoR: return "sovor";
    case ObjectiveKind::MaxVar: return "max-var";
    case ObjectiveKind::VoV: return "vov";
    case ObjectiveKind::StdOfStds: return "std-of-stds";
    case ObjectiveKind::SumOfStds: return "sum-of-stds";
  }
  return "?";
}

/// SoV, SoVoR, MaxVar and VoV are rational-valued on rational inputs; the two
/// standard-deviation objectives are generally not and come back certified.
using ObjectiveValue = std::variant<Rational, CertifiedReal>;

inline std::string format_objective_value(const ObjectiveValue& value) {
  if (const auto* r = std::get_if<Rational>(&value)) return format_rational(*r);
  return format_certified(std::get<CertifiedReal>(value));
}

struct AgentStats {
  Rational mean;
  Rational variance;
};

/// Exact mean and variance of agent i's bundle value under the lottery.
inline AgentStats agent_stats(const Instance& inst, const Distribution& dist, int agent) {
  check_distribution(inst, dist);
  if (agent < 0 || agent >= inst.num_agents) throw DimensionError("agent index out of range");
  Rational mean = 0, second = 0;
  for (const auto& [alloc, p] : dist.support) {
    Rational v = bundle_value(inst, agent, agent_bundle(alloc, agent));
    mean += p * v;
    second += p * v * v;
  }
  return {mean, second - mean * mean};
}

/// Per-agent variances; for SoVoR the bundle values are first divided by the
/// agent's total, so the result is the variance of the value fraction.
inline std::vector<Rational> agent_variances(const Instance& inst, const Distribution& dist,
                                             bool of_ratios = false) {
  check_distribution(inst, dist);
  std::vector<Rational> vars;
  vars.reserve(inst.num_agents);
  for (int i = 0; i < inst.num_agents; ++i) {
    AgentStats stats = agent_stats(inst, dist, i);
    if (of_ratios) {
      Rational total = row_total(inst, i);
      if (total == 0) throw DomainError("sovor undefined when an agent values all goods at 0");
      stats.variance /= total * total;
    }
    vars.push_back(std::move(stats.variance));
  }
  return vars;
}

namespace detail {

inline Rational vov_from_variances(const std::vector<Rational>& vars) {
  int n = static_cast<int>(vars.size());
  Rational mean = 0;
  for (const auto& v : vars) mean += v;
  mean /= n;
  Rational out = 0;
  for (const auto& v : vars) {
    Rational gap = v - mean;
    out += gap * gap;
  }
  return out / n;
}

inline CertifiedReal sum_of_stds_interval(const std::vector<Rational>& vars, unsigned bits) {
  CertifiedReal total = CertifiedReal::exact(0, bits);
  for (const auto& v : vars) total = total + certified_sqrt(v, bits);
  total.bits = bits;
  return total;
}

inline CertifiedReal std_of_stds_interval(const std::vector<Rational>& vars, unsigned bits) {
  int n = static_cast<int>(vars.size());
  std::vector<CertifiedReal> sigmas;
  sigmas.reserve(vars.size());
  CertifiedReal mean = CertifiedReal::exact(0, bits);
  for (const auto& v : vars) {
    sigmas.push_back(certified_sqrt(v, bits));
    mean = mean + sigmas.back();
  }
  mean = scale(mean, Rational(1, n));
  CertifiedReal spread = CertifiedReal::exact(0, bits);
  for (const auto& s : sigmas) spread = spread + square(s - mean);
  spread = scale(spread, Rational(1, n));
  CertifiedReal out = certified_sqrt(spread, bits);
  out.bits = bits;
  return out;
}

/// Exact value when the kind is rational-valued, or when every radicand in a
/// standard-deviation objective happens to be a perfect square.
inline std::optional<Rational> exact_objective(ObjectiveKind kind,
                                               const std::vector<Rational>& vars) {
  switch (kind) {
    case ObjectiveKind::SoV:
    case ObjectiveKind::SoVoR: {
      Rational total = 0;
      for (const auto& v : vars) total += v;
      return total;
    }
    case ObjectiveKind::MaxVar: {
      Rational best = 0;
      for (const auto& v : vars) best = std::max(best, v);
      return best;
    }
    case ObjectiveKind::VoV:
      return vov_from_variances(vars);
    case ObjectiveKind::SumOfStds: {
      Rational total = 0;
      for (const auto& v : vars) {
        auto s = exact_sqrt(v);
        if (!s) return std::nullopt;
        total += *s;
      }
      return total;
    }
    case ObjectiveKind::StdOfStds: {
      int n = static_cast<int>(vars.size());
      // Equal variances leave zero spread whether or not the roots are nice.
      bool all_equal = true;
      for (const auto& v : vars)
        if (v != vars.front()) all_equal = false;
      if (all_equal) return Rational(0);
      std::vector<Rational> sigmas;
      Rational mean = 0;
      for (const auto& v : vars) {
        auto s = exact_sqrt(v);
        if (!s) return std::nullopt;
        mean += *s;
        sigmas.push_back(std::move(*s));
      }
      mean /= n;
      Rational spread = 0;
      for (const auto& s : sigmas) spread += (s - mean) * (s - mean);
      return exact_sqrt(spread / n);
    }
  }
  return std::nullopt;
}

inline CertifiedReal interval_objective(ObjectiveKind kind, const std::vector<Rational>& vars,
                                        unsigned bits) {
  if (kind == ObjectiveKind::SumOfStds) return sum_of_stds_interval(vars, bits);
  if (kind == ObjectiveKind::StdOfStds) return std_of_stds_interval(vars, bits);
  return CertifiedReal::exact(*exact_objective(kind, vars), bits);
}

}  // namespace detail

/// Exact where the value is rational, certified enclosure otherwise.
inline ObjectiveValue evaluate(const Instance& inst, const Distribution& dist, ObjectiveKind kind,
                               const Limits& limits = {}) {
  std::vector<Rational> vars = agent_variances(inst, dist, kind == ObjectiveKind::SoVoR);
  if (auto exact = detail::exact_objective(kind, vars)) return *exact;
  return detail::interval_objective(kind, vars, limits.bits);
}

/// Σ_j p_j ||v(A_j) - (PS)^n||^2 for identical rows and an ex-ante
/// proportional lottery; precondition violations are reported, not computed
/// through.
inline Rational sov_distance_form(const Instance& inst, const Distribution& dist) {
  detail::require_identical_rows(inst);
  if (!check_exante_proportional(inst, dist))
    throw DomainError("distribution is not ex-ante proportional");
  Rational total = 0;
  for (const auto& [alloc, p] : dist.support) total += p * distance_sq_to_ps(inst, alloc);
  return total;
}

enum class Ordering { Less, Equal, Greater, Undecided };

inline std::string ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Less: return "LT";
    case Ordering::Equal: return "EQ";
    case Ordering::Greater: return "GT";
    case Ordering::Undecided: return "UNDECIDED";
  }
  return "?";
}

struct CompareResult {
  Ordering order = Ordering::Undecided;
  // Populated when precision escalation stopped without separating the sides.
  std::optional<std::pair<CertifiedReal, CertifiedReal>> intervals;
};

namespace detail {

/// Orders two objective values given their variance vectors. Structurally
/// identical radicand multisets certify equality without any escalation;
/// otherwise intervals are refined until they separate or the bit cap falls.
inline CompareResult compare_variances(ObjectiveKind kind, std::vector<Rational> vars_a,
                                       std::vector<Rational> vars_b, const Limits& limits) {
  auto exact_a = exact_objective(kind, vars_a);
  auto exact_b = exact_objective(kind, vars_b);
  if (exact_a && exact_b) {
    if (*exact_a < *exact_b) return {Ordering::Less, std::nullopt};
    if (*exact_a > *exact_b) return {Ordering::Greater, std::nullopt};
    return {Ordering::Equal, std::nullopt};
  }
  std::vector<Rational> sorted_a = vars_a, sorted_b = vars_b;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a == sorted_b) return {Ordering::Equal, std::nullopt};

  unsigned bits = limits.bits;
  CertifiedReal a = interval_objective(kind, vars_a, bits);
  CertifiedReal b = interval_objective(kind, vars_b, bits);
  while (true) {
    if (certainly_less(a, b)) return {Ordering::Less, std::nullopt};
    if (certainly_less(b, a)) return {Ordering::Greater, std::nullopt};
    if (bits >= limits.max_bits) break;
    bits = std::min(bits * 2, limits.max_bits);
    a = interval_objective(kind, vars_a, bits);
    b = interval_objective(kind, vars_b, bits);
  }
  return {Ordering::Undecided, std::make_pair(a, b)};
}

}  // namespace detail

/// Exact ordering of two lotteries under an objective.
inline CompareResult compare(const Instance& inst, const Distribution& d1, const Distribution& d2,
                             ObjectiveKind kind, const Limits& limits = {}) {
  bool ratios = kind == ObjectiveKind::SoVoR;
  return detail::compare_variances(kind, agent_variances(inst, d1, ratios),
                                   agent_variances(inst, d2, ratios), limits);
}

}  // namespace fairdiv
