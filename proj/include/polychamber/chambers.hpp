#pragma once

// Chambers of the sorted cone: realizability, enumeration, minimal integral
// representatives, the tiny-edge map and wall crossings.

#include "polychamber/combinatorics.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace polychamber {

inline constexpr int kMaxEnumerationEdges = 9;

struct Chamber {
  GeneticCode code;
  LengthVector a_min;    // integral, zeros standing for ε
  LengthVector witness;  // strictly positive rationals
};

/// A crossing of the wall H_J with S_m(to) = S_m(from) ∪ {J}.
struct WallCrossing {
  GeneticCode from;
  GeneticCode to;
  SubsetMask j;

  int surgery_index(int d) const;    // (d-1)(|J|-1)-1
  int cosurgery_index(int d) const;  // (m-1-|J|)(d-1)
};

/// Strictly positive sorted witness for the chamber with these genes, or nullopt
/// when the genes are not a canonical antichain or the wall system is infeasible.
std::optional<LengthVector> realizable(int m, std::span<const SubsetMask> genes);
std::optional<LengthVector> realizable(const GeneticCode& code);

struct EnumerationOptions {
  bool allow_large_m = false;
};

/// Every chamber of the sorted cone for m edges, in canonical (table) order.
/// Results are cached per m; safe to call concurrently.
const std::vector<Chamber>& enumerate_chambers(int m, EnumerationOptions options = {});

/// Index of a code within enumerate_chambers(code.m()), or nullopt.
std::optional<std::size_t> chamber_index(const GeneticCode& code);

/// First nondecreasing integral vector (by total, then lexicographically) whose
/// code is `code`. Zero entries are ε; a candidate is admitted only when no two
/// complementary rational parts tie, so the ε never decide a comparison.
/// Throws DomainError if code is not a chamber.
LengthVector a_min(const GeneticCode& code);

/// The + map: every gene element is incremented and 1 is adjoined.
GeneticCode tiny_edge(const GeneticCode& code);
/// Left inverse of tiny_edge; nullopt unless every gene contains 1.
std::optional<GeneticCode> tiny_edge_reduce(const GeneticCode& code);

/// J when down_closure(to) = down_closure(from) ∪ {J}.
std::optional<SubsetMask> adjacent_by_pair(const GeneticCode& from, const GeneticCode& to);

/// (A, B) = ((d-1)(|J|-1)-1, (m-1-|J|)(d-1)). Requires m ∈ J, 2 <= |J| <= m-2, d >= 2.
std::pair<int, int> surgery_indices(const SubsetMask& j, int m, int d);

// Named chambers.
GeneticCode single_gene_code(int m);   // ⟨m⟩
GeneticCode exceptional_code(int m);   // ⟨{m, m-3, ..., 1}⟩
GeneticCode mdot2_code(int m);         // ⟨{m, m-3, ..., 2}⟩
GeneticCode pair_code(int m, int p);   // ⟨{m, p}⟩, ⟨m⟩ when p = 0
bool is_exceptional(const GeneticCode& code);

/// Chamber reached from `code` by adding one size-two set containing m, if any.
std::optional<GeneticCode> pair_successor(const GeneticCode& code);

}  // namespace polychamber
