#pragma once

#include <cstdint>
#include <optional>

namespace fairdiv {

/// Resource caps shared across the enumeration-heavy operations.
struct Limits {
  std::uint64_t max_states = 10'000'000;     // cap on n^m for allocation/partition spaces
  int max_atoms = 64;                        // cap on polytope support candidates
  std::uint64_t max_vertex_combos = 5'000'000;  // cap on tight-set combinations
  unsigned bits = 128;                       // starting precision for certified values
  unsigned max_bits = 4096;                  // escalation ceiling for comparisons
};

/// n^m if it stays within cap, nullopt otherwise.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t cap) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return std::nullopt;
    result *= base;
    if (result > cap) return std::nullopt;
  }
  return result;
}

}  // namespace fairdiv
