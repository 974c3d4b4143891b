#pragma once

#include "fairdiv/distribution.hpp"

namespace fairdiv::fixtures {

// Embedded case studies used by the golden reproduction suite and the tests.
// Allocations are written as 0-based owner lists; the value vectors below
// each lottery pin what the supports are worth to the agents.

/// Three agents sharing one additive valuation over six goods.
inline Instance identical_three_agents() {
  Instance inst;
  inst.num_agents = 3;
  inst.num_goods = 6;
  std::vector<Rational> row = {825, 552, 528, 384, 360, 351};
  inst.values = {row, row, row};
  return inst;
}

/// Two agents, two goods, normalized to 100 but far from identical.
inline Instance skewed_two_agents() {
  Instance inst;
  inst.num_agents = 2;
  inst.num_goods = 2;
  inst.values = {{4, 96}, {38, 62}};
  return inst;
}

/// Two agents, two goods; the case where sum-of-stds minimization fails.
inline Instance stds_two_agents() {
  Instance inst;
  inst.num_agents = 2;
  inst.num_goods = 2;
  inst.values = {{90, 10}, {55, 45}};
  return inst;
}

/// {25/31 on the (96,38) allocation, 6/31 on the (0,100) allocation}.
inline Distribution skewed_min_lottery() {
  return Distribution{{
      {Allocation{{1, 0}}, Rational(25, 31)},
      {Allocation{{1, 1}}, Rational(6, 31)},
  }};
}

/// Fair coin over the two one-good-each allocations, (96,38) and (4,62).
inline Distribution skewed_balanced_lottery() {
  return Distribution{{
      {Allocation{{0, 1}}, Rational(1, 2)},
      {Allocation{{1, 0}}, Rational(1, 2)},
  }};
}

/// {10/11 on the (90,45) allocation, 1/11 on the (0,100) allocation}.
inline Distribution stds_min_lottery() {
  return Distribution{{
      {Allocation{{0, 1}}, Rational(10, 11)},
      {Allocation{{1, 1}}, Rational(1, 11)},
  }};
}

/// Fair coin over (90,45) and (10,55).
inline Distribution stds_balanced_lottery() {
  return Distribution{{
      {Allocation{{0, 1}}, Rational(1, 2)},
      {Allocation{{1, 0}}, Rational(1, 2)},
  }};
}

}  // namespace fairdiv::fixtures
