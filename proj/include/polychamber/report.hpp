#pragma once

// Composed reports behind the command-line tool: classification of a length
// vector, chamber tables, enumeration listings and the verification suites.

#include "polychamber/chambers.hpp"
#include "polychamber/morse.hpp"
#include "polychamber/topology.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polychamber {

enum class Format { Text, Json, Tsv };

/// "text" | "json" | "tsv"; throws ParseError.
Format parse_format(std::string_view name);
/// "chain" | "planar" | "spatial"; throws ParseError.
Target parse_target(std::string_view name);

// ---- tables ---------------------------------------------------------------

/// "⟨41⟩ (0,1,1,1) S^1 u S^1 / S^2 / S^{d-1} x S^{d-2}"; d = nullopt keeps Ch symbolic.
std::string render_table(int m, std::optional<int> d, Format format, DescribeOptions options = {});

std::string render_enumeration(int m, Format format, EnumerationOptions options = {});

// ---- classify -------------------------------------------------------------

struct ClassifyOptions {
  std::optional<int> d;            // nullopt: symbolic Ch, Morse data at d = 2 and 3
  std::optional<Target> target;    // nullopt: all three descriptions
  bool allow_large_m = false;
};

struct ClassifyReport {
  ClassifyReport(LengthVector input_, LengthVector sorted_) : input(std::move(input_)), sorted(std::move(sorted_)) {}

  LengthVector input;
  LengthVector sorted;
  bool reordered = false;
  std::optional<SubsetMask> wall;  // set when nongeneric; nothing below is filled then
  std::optional<GeneticCode> code;
  std::optional<LengthVector> a_min;
  std::vector<MorseInventory> inventories;
  std::vector<ConnectivityReport> connectivity;
  std::optional<int> d;
  std::optional<SpaceExpr> chain, planar, spatial;
  std::vector<std::string> notes;

  bool generic() const { return !wall.has_value(); }
};

ClassifyReport classify(const LengthVector& lengths, ClassifyOptions options = {});
std::string render_classify(const ClassifyReport& report, Format format);

/// "{3,4}"
std::string wall_string(const SubsetMask& j);

// ---- verify ---------------------------------------------------------------

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::vector<std::string> failures;  // first few
  bool passed() const { return failed == 0; }
};

struct VerifyReport {
  int m = 0;
  std::size_t chambers = 0;
  std::size_t described = 0;
  std::vector<SuiteResult> suites;  // fixed order regardless of scheduling
  bool passed() const;
};

/// Worker count from POLYCHAMBER_THREADS, else the hardware concurrency.
unsigned worker_count();

/// Runs every invariant suite for m (3 <= m <= 7).
VerifyReport verify(int m, unsigned threads = worker_count());
std::string render_verify(const VerifyReport& report, Format format);

/// Chamber counts and described counts quoted for m = 3..7.
std::optional<std::size_t> expected_chamber_count(int m);
std::optional<std::size_t> expected_described_count(int m);

}  // namespace polychamber
