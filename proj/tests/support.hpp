#pragma once

// Conversions between library values and the oracle's plain representations.

#include "oracle.hpp"
#include "polychamber/chambers.hpp"

#include <random>
#include <set>

namespace support {

inline std::set<oracle::Set> genes_of(const polychamber::GeneticCode& code) {
  std::set<oracle::Set> out;
  for (const auto& g : code.genes()) out.insert(g.elements_desc());
  return out;
}

inline std::set<oracle::Set> sets_of(const std::vector<polychamber::SubsetMask>& family) {
  std::set<oracle::Set> out;
  for (const auto& j : family) out.insert(j.elements_desc());
  return out;
}

inline polychamber::LengthVector from_longs(const std::vector<long>& v) {
  std::vector<std::int64_t> w(v.begin(), v.end());
  return polychamber::LengthVector::from_integers(w);
}

/// Sorted positive rationals p/q with 1 <= p <= 40, 1 <= q <= 12.
inline std::vector<mpq_class> random_sorted_rationals(std::mt19937& rng, int m) {
  std::uniform_int_distribution<int> num(1, 40), den(1, 12);
  std::vector<mpq_class> v;
  for (int i = 0; i < m; ++i) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    v.push_back(q);
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace support
