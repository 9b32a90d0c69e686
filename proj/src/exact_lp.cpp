#include "polychamber/exact_lp.hpp"

#include "polychamber/errors.hpp"

namespace polychamber {

std::optional<std::vector<mpq_class>> find_feasible_point(int num_vars,
                                                          std::span<const LinearConstraint> constraints) {
  const int rows = static_cast<int>(constraints.size());
  for (const auto& c : constraints)
    if (static_cast<int>(c.coeffs.size()) != num_vars) throw DomainError("constraint arity mismatch");
  if (rows == 0) return std::vector<mpq_class>(static_cast<std::size_t>(num_vars), 0);

  // Columns: x (num_vars), surplus (rows), artificial (one per row needing it), rhs.
  std::vector<int> artificial_of(static_cast<std::size_t>(rows), -1);
  int num_art = 0;
  for (int i = 0; i < rows; ++i)
    if (constraints[static_cast<std::size_t>(i)].rhs > 0) artificial_of[static_cast<std::size_t>(i)] = num_art++;
  const int surplus0 = num_vars;
  const int art0 = num_vars + rows;
  const int cols = art0 + num_art;
  const int rhs_col = cols;

  std::vector<std::vector<mpq_class>> t(static_cast<std::size_t>(rows),
                                        std::vector<mpq_class>(static_cast<std::size_t>(cols + 1), 0));
  std::vector<int> basis(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    auto& row = t[static_cast<std::size_t>(i)];
    const auto& c = constraints[static_cast<std::size_t>(i)];
    if (c.rhs > 0) {
      // A x - s + r = b
      for (int v = 0; v < num_vars; ++v) row[static_cast<std::size_t>(v)] = c.coeffs[static_cast<std::size_t>(v)];
      row[static_cast<std::size_t>(surplus0 + i)] = -1;
      int a = art0 + artificial_of[static_cast<std::size_t>(i)];
      row[static_cast<std::size_t>(a)] = 1;
      row[static_cast<std::size_t>(rhs_col)] = c.rhs;
      basis[static_cast<std::size_t>(i)] = a;
    } else {
      // -A x + s = -b >= 0
      for (int v = 0; v < num_vars; ++v) row[static_cast<std::size_t>(v)] = -c.coeffs[static_cast<std::size_t>(v)];
      row[static_cast<std::size_t>(surplus0 + i)] = 1;
      row[static_cast<std::size_t>(rhs_col)] = -c.rhs;
      basis[static_cast<std::size_t>(i)] = surplus0 + i;
    }
  }

  // Objective: minimise the sum of artificials. Reduced cost row z_j = -sum over
  // artificial-basic rows of t[i][j] for non-artificial columns.
  std::vector<mpq_class> z(static_cast<std::size_t>(cols + 1), 0);
  for (int i = 0; i < rows; ++i) {
    if (basis[static_cast<std::size_t>(i)] < art0) continue;
    const auto& row = t[static_cast<std::size_t>(i)];
    for (int j = 0; j <= cols; ++j) {
      if (j >= art0 && j < cols) continue;
      z[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)];
    }
  }

  while (true) {
    // Bland: smallest index with negative reduced cost enters.
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (z[static_cast<std::size_t>(j)] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    mpq_class best;
    for (int i = 0; i < rows; ++i) {
      const auto& a = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
      if (a <= 0) continue;
      mpq_class ratio = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(rhs_col)] / a;
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur for a bounded-below phase one

    auto& prow = t[static_cast<std::size_t>(leave)];
    mpq_class pivot = prow[static_cast<std::size_t>(enter)];
    for (auto& v : prow) v /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      auto& row = t[static_cast<std::size_t>(i)];
      mpq_class f = row[static_cast<std::size_t>(enter)];
      if (f == 0) continue;
      for (int j = 0; j <= cols; ++j) {
        if (prow[static_cast<std::size_t>(j)] != 0) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      }
    }
    mpq_class f = z[static_cast<std::size_t>(enter)];
    for (int j = 0; j <= cols; ++j) {
      if (prow[static_cast<std::size_t>(j)] != 0) z[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  // z[rhs] holds minus the objective value.
  if (z[static_cast<std::size_t>(rhs_col)] != 0) return std::nullopt;

  std::vector<mpq_class> x(static_cast<std::size_t>(num_vars), 0);
  for (int i = 0; i < rows; ++i) {
    int b = basis[static_cast<std::size_t>(i)];
    if (b < num_vars) x[static_cast<std::size_t>(b)] = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(rhs_col)];
  }
  return x;
}

}  // namespace polychamber
