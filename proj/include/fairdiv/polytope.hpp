#pragma once

#include <optional>
#include <set>
#include <vector>

#include "fairdiv/distribution.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/limits.hpp"

namespace fairdiv {

/// The ex-ante proportionality polytope over a fixed list of support
/// candidates: the probability simplex intersected with the per-agent
/// expectation constraints sum_j p_j v_i(A_i^(j)) >= PS_i.
struct PropPolytope {
  std::vector<Allocation> atoms;
  std::vector<std::vector<Rational>> atom_values;  // [agent][atom]
  std::vector<Rational> ps;

  int num_atoms() const { return static_cast<int>(atoms.size()); }
  int num_agents() const { return static_cast<int>(ps.size()); }
};

inline PropPolytope build_prop_polytope(const Instance& inst, std::vector<Allocation> atoms,
                                        const Limits& limits = {}) {
  if (static_cast<int>(atoms.size()) > limits.max_atoms)
    throw ResourceLimitError("atom count exceeds max_atoms");
  if (atoms.empty()) throw DomainError("polytope needs at least one atom");
  PropPolytope poly;
  poly.atom_values.assign(inst.num_agents, {});
  for (const auto& alloc : atoms) {
    ValueVector vv = value_vector(inst, alloc);
    for (int i = 0; i < inst.num_agents; ++i) poly.atom_values[i].push_back(vv[i]);
  }
  for (int i = 0; i < inst.num_agents; ++i) poly.ps.push_back(proportional_share(inst, i));
  poly.atoms = std::move(atoms);
  return poly;
}

/// A feasible point determined by a full set of linearly independent tight
/// constraints. zero_atoms and tight_agents list everything tight at the
/// point, not just the defining subset.
struct Vertex {
  std::vector<Rational> probabilities;
  std::vector<int> zero_atoms;
  std::vector<int> tight_agents;
};

struct VertexEnumeration {
  std::vector<Vertex> vertices;
  bool feasible = false;  // false means the polytope is empty
};

/// Gaussian elimination with exact pivoting; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a,
                                                         std::vector<Rational> b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      Rational factor = a[row][col] / a[col][col];
      for (int j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (int row = n - 1; row >= 0; --row) {
    Rational acc = b[row];
    for (int j = row + 1; j < n; ++j) acc -= a[row][j] * x[j];
    x[row] = acc / a[row][row];
  }
  return x;
}

namespace detail {

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (result > cap) return cap + 1;
    result = result * (n - k + i) / i;
  }
  return result;
}

template <typename F>
void for_each_subset(int n, int k, F&& fn) {
  if (k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(static_cast<const std::vector<int>&>(idx));
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool point_feasible(const PropPolytope& poly, const std::vector<Rational>& p) {
  for (const auto& prob : p)
    if (prob < 0) return false;
  for (int i = 0; i < poly.num_agents(); ++i) {
    Rational expectation = 0;
    for (int j = 0; j < poly.num_atoms(); ++j)
      if (p[j] != 0) expectation += p[j] * poly.atom_values[i][j];
    if (expectation < poly.ps[i]) return false;
  }
  return true;
}

}  // namespace detail

/// All vertices of the polytope, each solved exactly from a maximal
/// linearly independent tight set; duplicates from different tight sets are
/// merged. A vertex keeps t expectation constraints tight and all but t+1
/// probabilities at zero, so the search walks support sets of size t+1
/// against agent subsets of size t and solves the small dense system.
inline VertexEnumeration polytope_vertices(const PropPolytope& poly, const Limits& limits = {}) {
  const int k = poly.num_atoms();
  const int n = poly.num_agents();
  if (k > limits.max_atoms) throw ResourceLimitError("atom count exceeds max_atoms");

  std::uint64_t combos = 0;
  for (int t = 0; t <= n; ++t) {
    combos += detail::binomial_capped(n, t, limits.max_vertex_combos) *
              detail::binomial_capped(k, t + 1, limits.max_vertex_combos);
    if (combos > limits.max_vertex_combos)
      throw ResourceLimitError("tight-set combinations exceed max_vertex_combos");
  }

  std::set<std::vector<Rational>> points;
  for (int t = 0; t <= n && t + 1 <= k; ++t) {
    detail::for_each_subset(n, t, [&](const std::vector<int>& agents) {
      detail::for_each_subset(k, t + 1, [&](const std::vector<int>& support) {
        const int dim = t + 1;
        std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim));
        std::vector<Rational> b(dim);
        for (int j = 0; j < dim; ++j) a[0][j] = 1;
        b[0] = 1;
        for (int r = 0; r < t; ++r) {
          for (int j = 0; j < dim; ++j) a[r + 1][j] = poly.atom_values[agents[r]][support[j]];
          b[r + 1] = poly.ps[agents[r]];
        }
        auto solution = solve_linear(std::move(a), std::move(b));
        if (!solution) return;
        std::vector<Rational> p(k, Rational(0));
        for (int j = 0; j < dim; ++j) p[support[j]] = (*solution)[j];
        if (detail::point_feasible(poly, p)) points.insert(std::move(p));
      });
    });
  }

  VertexEnumeration result;
  result.feasible = !points.empty();
  for (const auto& p : points) {
    Vertex v;
    v.probabilities = p;
    for (int j = 0; j < k; ++j)
      if (p[j] == 0) v.zero_atoms.push_back(j);
    for (int i = 0; i < n; ++i) {
      Rational expectation = 0;
      for (int j = 0; j < k; ++j)
        if (p[j] != 0) expectation += p[j] * poly.atom_values[i][j];
      if (expectation == poly.ps[i]) v.tight_agents.push_back(i);
    }
    result.vertices.push_back(std::move(v));
  }
  return result;
}

/// The lottery a vertex represents; zero-probability atoms are dropped.
inline Distribution vertex_distribution(const PropPolytope& poly, const Vertex& vertex) {
  std::vector<std::pair<Allocation, Rational>> entries;
  for (int j = 0; j < poly.num_atoms(); ++j)
    if (vertex.probabilities[j] != 0) entries.emplace_back(poly.atoms[j], vertex.probabilities[j]);
  return normalize_support(std::move(entries));
}

}  // namespace fairdiv
