#pragma once

// Length vectors, subsets of {1..m}, the hook order and genetic codes.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polychamber {

inline constexpr int kMaxEdges = 62;

/// A subset J of {1..m}; element i is stored in bit i-1.
class SubsetMask {
 public:
  SubsetMask() = default;
  SubsetMask(std::uint64_t bits, int m);

  static SubsetMask from_elements(std::span<const int> elements, int m);
  static SubsetMask full(int m);

  std::uint64_t bits() const noexcept { return bits_; }
  int m() const noexcept { return m_; }
  int size() const noexcept;
  bool empty() const noexcept { return bits_ == 0; }
  bool contains(int i) const noexcept { return i >= 1 && i <= m_ && ((bits_ >> (i - 1)) & 1u); }
  int max_element() const noexcept;

  SubsetMask complement() const noexcept;
  SubsetMask with(int i) const;
  SubsetMask without(int i) const;

  /// Elements in decreasing order.
  std::vector<int> elements_desc() const;

  /// Digit string for m <= 9 ("621"), bracketed index list otherwise ("[10,3,1]").
  std::string to_string() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  std::uint64_t bits_ = 0;
  int m_ = 0;
};

/// Hook order: |A| <= |B| and the i-th largest element of A is at most the
/// i-th largest element of B.
bool hook_leq(const SubsetMask& a, const SubsetMask& b);

/// Strict gene ordering used for canonical codes: larger cardinality first,
/// then the descending digit sequence compared lexicographically, larger first.
bool gene_precedes(const SubsetMask& a, const SubsetMask& b);

enum class Side { Short, Long };

/// How ties between ε terms are broken once rational parts agree.
enum class TieBreak {
  CountThenIndex,  // fewer ε is smaller; then the side holding the largest differing index wins
  IndexOnly,       // graded: the side holding the largest differing ε index is larger
};

/// Exact nonnegative edge lengths; a zero entry stands for a tiny positive ε_i.
class LengthVector {
 public:
  explicit LengthVector(std::vector<mpq_class> entries);
  static LengthVector from_integers(std::span<const std::int64_t> entries);

  /// Comma separated rationals, "p/q" or integers.
  static LengthVector parse(std::string_view text);

  int m() const noexcept { return static_cast<int>(entries_.size()); }
  const std::vector<mpq_class>& entries() const noexcept { return entries_; }
  const mpq_class& operator[](int i) const { return entries_.at(static_cast<std::size_t>(i)); }
  bool is_tiny(int index0) const { return entries_.at(static_cast<std::size_t>(index0)) == 0; }
  bool is_sorted() const noexcept { return sorted_; }
  bool is_integral() const noexcept;
  std::uint64_t tiny_mask() const noexcept { return tiny_mask_; }

  /// Stable nondecreasing sort; `reordered` reports whether anything moved.
  LengthVector sorted(bool* reordered = nullptr) const;
  LengthVector scaled(const mpq_class& factor) const;
  /// Prepends a tiny edge (a zero entry).
  LengthVector with_tiny_edge() const;

  /// "(0,1,1,1)" for integral vectors, "(1/2,1,...)" otherwise.
  std::string to_string() const;
  /// "1/2,1,3"
  std::string to_csv() const;

  friend bool operator==(const LengthVector& a, const LengthVector& b) { return a.entries_ == b.entries_; }

  // Integer image of the vector (entries times the lcm of denominators).
  const std::vector<mpz_class>& scaled_integers() const noexcept { return scaled_; }
  const std::optional<std::vector<std::int64_t>>& small_integers() const noexcept { return small_; }

 private:
  std::vector<mpq_class> entries_;
  std::vector<mpz_class> scaled_;
  std::optional<std::vector<std::int64_t>> small_;
  std::uint64_t tiny_mask_ = 0;
  bool sorted_ = false;
};

/// Short iff the J-sum is strictly below the complement sum (ε convention applied).
/// Throws NongenericError when J lies on its wall.
Side compare_subset_sums(const LengthVector& a, const SubsetMask& j,
                         TieBreak tie_break = TieBreak::CountThenIndex);

bool is_generic(const LengthVector& a);
/// A wall (J containing m) that a lies on, if any: smallest |J|, then largest elements.
std::optional<SubsetMask> find_wall(const LengthVector& a);

/// True when no complementary pair has equal rational parts, so the ε entries
/// never decide a comparison (they only need to sum to less than the smallest gap).
bool rationally_generic(const LengthVector& a);

/// Canonical antichain of hook-maximal short sets containing m.
class GeneticCode {
 public:
  GeneticCode() = default;
  /// Validates (genes contain m, pairwise hook-incomparable) and sorts canonically.
  GeneticCode(int m, std::vector<SubsetMask> genes);

  /// Accepts "<621,64>", "⟨621,64⟩", "621,64" or "<>" (digit genes need m <= 9,
  /// larger m uses bracketed lists such as "<[10,3,1]>"). m = 0 infers it from the largest element.
  static GeneticCode parse(std::string_view text, int m = 0);

  int m() const noexcept { return m_; }
  const std::vector<SubsetMask>& genes() const noexcept { return genes_; }
  bool empty() const noexcept { return genes_.empty(); }

  std::string to_string(bool unicode = true) const;

  friend bool operator==(const GeneticCode&, const GeneticCode&) = default;

 private:
  int m_ = 0;
  std::vector<SubsetMask> genes_;
};

/// Total order on codes of the same m (gene by gene, canonical gene order).
bool code_less(const GeneticCode& a, const GeneticCode& b);

/// S_m(a): short subsets containing m, in increasing bit order.
std::vector<SubsetMask> short_sets_with_m(const LengthVector& a, TieBreak tie_break = TieBreak::CountThenIndex);

/// Hook-maximal elements of a family of subsets containing m.
GeneticCode maximal_elements(int m, std::span<const SubsetMask> family);

GeneticCode genetic_code(const LengthVector& a, TieBreak tie_break = TieBreak::CountThenIndex);

/// Genetic code of a sorted integer vector (zeros are ε). Fast path with no allocation
/// beyond the result; returns nullopt when the vector lies on a wall.
std::optional<GeneticCode> genetic_code_of_integers(std::span<const std::int64_t> a,
                                                    TieBreak tie_break = TieBreak::CountThenIndex);

/// S_m(α) recovered from the genes, in increasing bit order.
std::vector<SubsetMask> down_closure(const GeneticCode& code);

/// Same as down_closure but as a bitmap indexed by mask bits (size 2^m).
std::vector<bool> down_closure_bitmap(const GeneticCode& code);

/// S(α): S_m(α) together with every J not containing m whose complement is not in S_m(α).
std::vector<SubsetMask> full_short_family(const GeneticCode& code);

}  // namespace polychamber
