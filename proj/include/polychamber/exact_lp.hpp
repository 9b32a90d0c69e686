#pragma once

// Exact rational feasibility for systems of linear inequalities.

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

namespace polychamber {

/// coeffs · x >= rhs
struct LinearConstraint {
  std::vector<mpq_class> coeffs;
  mpq_class rhs;
};

/// Returns a point x >= 0 satisfying every constraint, or nullopt if none exists.
/// Phase-one simplex over exact rationals with Bland's rule, so it terminates.
std::optional<std::vector<mpq_class>> find_feasible_point(int num_vars,
                                                          std::span<const LinearConstraint> constraints);

}  // namespace polychamber
