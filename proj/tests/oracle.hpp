#pragma once

// Brute-force reference implementations, written straight from the definitions
// and sharing no code with the library: subsets are plain element lists, sums
// are plain rationals and the hook order is checked by trying every map.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Set = std::vector<int>;  // elements in decreasing order

inline Set elements(std::uint32_t bits) {
  Set out;
  for (int i = 31; i >= 0; --i)
    if ((bits >> i) & 1u) out.push_back(i + 1);
  return out;
}

/// Every subset of {1..m} containing m.
inline std::vector<Set> sets_with_top(int m) {
  std::vector<Set> out;
  for (std::uint32_t s = 0; s < (1u << (m - 1)); ++s) out.push_back(elements(s | (1u << (m - 1))));
  return out;
}

/// A ↪ B: some injective order-preserving φ: A → B with φ(x) >= x. Tries every
/// |A|-subset of B as the image.
inline bool hook(const Set& a, const Set& b) {
  if (a.size() > b.size()) return false;
  std::vector<bool> pick(b.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(a.size()), true);
  do {
    Set image;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (pick[i]) image.push_back(b[i]);
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = image[i] >= a[i];
    if (ok) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

/// Sum over J of the entries (1-based elements).
inline mpq_class sum(const std::vector<mpq_class>& a, const Set& j) {
  mpq_class s = 0;
  for (int i : j) s += a[static_cast<std::size_t>(i - 1)];
  return s;
}

/// Replaces zero entries by one common tiny value, below every nonzero gap
/// between complementary sums. nullopt when some complementary pair ties
/// exactly in the rational parts (then the tiny values would decide).
inline std::optional<std::vector<mpq_class>> with_epsilon(const std::vector<mpq_class>& a) {
  const int m = static_cast<int>(a.size());
  mpq_class total = 0;
  for (const auto& x : a) total += x;
  mpq_class gap = total > 0 ? total : mpq_class(1);
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    mpq_class diff = total - 2 * sum(a, elements(s));
    if (diff == 0) return std::nullopt;
    gap = std::min(gap, mpq_class(abs(diff)));
  }
  mpq_class eps = gap / (4 * m);
  auto out = a;
  for (auto& x : out)
    if (x == 0) x = eps;
  return out;
}

/// Short subsets containing m, or nullopt when the vector is not generic in
/// the sense of with_epsilon.
inline std::optional<std::vector<Set>> short_with_top(const std::vector<mpq_class>& raw) {
  auto a = with_epsilon(raw);
  if (!a) return std::nullopt;
  const int m = static_cast<int>(a->size());
  mpq_class total = 0;
  for (const auto& x : *a) total += x;
  std::vector<Set> out;
  for (const auto& j : sets_with_top(m))
    if (2 * sum(*a, j) < total) out.push_back(j);
  return out;
}

/// Hook-maximal members of a family.
inline std::set<Set> maximal(const std::vector<Set>& family) {
  std::set<Set> out;
  for (const auto& a : family) {
    bool dominated = false;
    for (const auto& b : family)
      if (b != a && hook(a, b)) dominated = true;
    if (!dominated) out.insert(a);
  }
  return out;
}

inline std::optional<std::set<Set>> genes(const std::vector<mpq_class>& a) {
  auto s = short_with_top(a);
  if (!s) return std::nullopt;
  return maximal(*s);
}

/// Every J ∋ m lying hook-below some gene.
inline std::set<Set> down_closure(int m, const std::set<Set>& g) {
  std::set<Set> out;
  for (const auto& j : sets_with_top(m))
    for (const auto& gene : g)
      if (hook(j, gene)) out.insert(j);
  return out;
}

/// Nondecreasing integer vectors of length m with the given total, lexicographically.
inline void for_each_sorted(int m, long total, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> v(static_cast<std::size_t>(m));
  std::function<void(int, long, long)> rec = [&](int i, long lo, long left) {
    if (i == m - 1) {
      if (left >= lo) {
        v.back() = left;
        f(v);
      }
      return;
    }
    for (long x = lo; x * (m - i) <= left; ++x) {
      v[static_cast<std::size_t>(i)] = x;
      rec(i + 1, x, left - x);
    }
  };
  rec(0, 0, total);
}

inline std::vector<mpq_class> rationals(const std::vector<long>& v) {
  std::vector<mpq_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

/// Scans integer vectors by total, then lexicographically, up to max_total and
/// records the first vector reaching each gene set: the minimal representatives.
inline std::vector<std::pair<std::set<Set>, std::vector<long>>> first_representatives(int m, long max_total) {
  std::vector<std::pair<std::set<Set>, std::vector<long>>> out;
  std::set<std::vector<Set>> seen;  // short families; each determines its chamber
  for (long total = 0; total <= max_total; ++total) {
    for_each_sorted(m, total, [&](const std::vector<long>& v) {
      auto s = short_with_top(rationals(v));
      if (s && seen.insert(*s).second) out.emplace_back(maximal(*s), v);
    });
  }
  return out;
}

/// Euler characteristic helpers from first principles.
inline long chi_sphere(int n) { return n % 2 == 0 ? 2 : 0; }
inline long chi_connected_sum(long a, long b, int dim) { return a + b - chi_sphere(dim); }

}  // namespace oracle
