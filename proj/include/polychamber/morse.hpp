#pragma once

// Critical points of the Morse function on V_d(a), Euler data and connectivity.

#include "polychamber/combinatorics.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polychamber {

struct CriticalPoint {
  SubsetMask j;
  int index = 0;  // (d-1)(|J|-1)
};

struct MorseInventory {
  int m = 0;
  int d = 0;
  std::vector<CriticalPoint> points;  // one per J in S_m(α), increasing bit order
  std::int64_t euler_v = 0;
  std::map<int, int> histogram;  // index -> count
};

/// Throws DomainError if d < 2.
MorseInventory morse_inventory(const GeneticCode& code, int d);

struct ConnectivityReport {
  int d = 0;
  bool exceptional = false;
  int components = 1;
  /// k such that Ch is k-connected; -1 when disconnected.
  int connected_through = 0;
  /// Degree n with π_n ≅ ℤ for the exceptional chamber when d >= 3.
  std::optional<int> infinite_cyclic_degree;
  std::string summary;
};

/// Throws EmptyChamber for ⟨⟩ and DomainError if d < 2.
ConnectivityReport connectivity(const GeneticCode& code, int d);

struct CheckResult {
  bool passed = false;
  std::int64_t chain_euler = 0;  // χ(Ch²)
  std::int64_t expected = 0;     // 2·χ(V₂) for odd m, 0 for even m
  std::string detail;
};

/// χ(Ch²) against the boundary identity for V₂. Throws UnknownDescription when
/// the chain space has no description.
CheckResult euler_boundary_check(const GeneticCode& code);

}  // namespace polychamber
