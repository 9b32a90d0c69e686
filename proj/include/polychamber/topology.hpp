#pragma once

// Chain-space and polygon-space descriptions of chambers, derived from the base
// chambers by the tiny-edge and |J| = 2 connected-sum rules.

#include "polychamber/chambers.hpp"
#include "polychamber/space_expr.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polychamber {

inline constexpr int kMaxDescriptionEdges = 7;

enum class Target { Chain, Planar, Spatial };

struct SpaceQuery {
  Target target = Target::Chain;
  std::optional<int> d;  // Chain only; nullopt renders formulas in d

  static SpaceQuery chain(std::optional<int> d = std::nullopt) { return {Target::Chain, d}; }
  static SpaceQuery planar() { return {Target::Planar, std::nullopt}; }
  static SpaceQuery spatial() { return {Target::Spatial, std::nullopt}; }
};

enum class Rule {
  EmptyBase,        // ⟨⟩
  SingleBase,       // ⟨m⟩
  ExceptionalBase,  // ⟨{m,m-3,…,1}⟩
  ConnectedSum,     // crossing a wall H_J with |J| = 2
  Mdot2Base,        // ⟨{m,m-3,…,2}⟩
  TinyEdge,         // α⁺ from α
  None,
};

const char* rule_name(Rule rule);

struct Derivation {
  Rule rule = Rule::None;
  std::optional<GeneticCode> source;  // same m for ConnectedSum, m-1 for TinyEdge
  std::optional<SubsetMask> j;
};

struct ChamberDescription {
  GeneticCode code;
  Derivation derivation;
  std::vector<Derivation> alternatives;  // other rules that also apply
  SpaceExpr chain;                       // symbolic in d
  SpaceExpr spatial;
};

/// One consistency check performed while deriving the table.
struct EngineCheck {
  enum class Kind { PathIndependence, ConnectedSumEuler };
  Kind kind;
  GeneticCode code;
  bool passed;
  bool skipped;  // comparison involved an opaque expression
  std::string detail;
};

struct DescriptionTable {
  int m = 0;
  std::vector<ChamberDescription> rows;  // same order as enumerate_chambers(m)
  std::vector<EngineCheck> checks;
};

struct DescribeOptions {
  bool allow_large_m = false;
};

/// Derives every chamber of m (and, recursively, of m-1, …, 3). Cached per m.
/// Throws BoundExceeded above kMaxDescriptionEdges unless overridden.
const DescriptionTable& description_table(int m, DescribeOptions options = {});

/// Normal-form description; Unknown when no implemented rule reaches the chamber.
/// Throws DomainError for codes that are not chambers.
SpaceExpr describe(const GeneticCode& code, SpaceQuery query, DescribeOptions options = {});

/// (described, total) over enumerate_chambers(m).
std::pair<std::size_t, std::size_t> coverage(int m, SpaceQuery query, DescribeOptions options = {});

/// Expected dimension of the target space: (m-2)(d-1)-1, m-3 or 2(m-3).
Dim expected_dimension(int m, SpaceQuery query);

}  // namespace polychamber
