#include "polychamber/chambers.hpp"

#include "polychamber/errors.hpp"
#include "polychamber/exact_lp.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace polychamber {

namespace {

std::vector<SubsetMask> subsets_with_m_in_hook_order(int m) {
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  std::vector<SubsetMask> out;
  for (std::uint64_t s = 0; s < top; ++s) out.emplace_back(s | top, m);
  // A strictly hook-below B implies |A| < |B|, or |A| = |B| with a smaller element sum.
  auto key = [](const SubsetMask& j) {
    int sum = 0;
    for (int e : j.elements_desc()) sum += e;
    return std::pair{j.size(), sum};
  };
  std::stable_sort(out.begin(), out.end(), [&](const SubsetMask& a, const SubsetMask& b) { return key(a) < key(b); });
  return out;
}

// Sign convention: short means sum(complement) - sum(J) >= 1.
LinearConstraint wall_constraint(const SubsetMask& j, Side side) {
  LinearConstraint c;
  c.coeffs.assign(static_cast<std::size_t>(j.m()), 0);
  for (int i = 1; i <= j.m(); ++i) {
    int in = j.contains(i) ? 1 : -1;
    c.coeffs[static_cast<std::size_t>(i - 1)] = side == Side::Short ? -in : in;
  }
  c.rhs = 1;
  return c;
}

std::vector<LinearConstraint> cone_constraints(int m) {
  std::vector<LinearConstraint> out;
  LinearConstraint first;
  first.coeffs.assign(static_cast<std::size_t>(m), 0);
  first.coeffs[0] = 1;
  first.rhs = 1;
  out.push_back(first);
  for (int i = 1; i < m; ++i) {
    LinearConstraint c;
    c.coeffs.assign(static_cast<std::size_t>(m), 0);
    c.coeffs[static_cast<std::size_t>(i)] = 1;
    c.coeffs[static_cast<std::size_t>(i - 1)] = -1;
    c.rhs = 0;
    out.push_back(c);
  }
  return out;
}

// Sign of sum(J) - sum(complement) at x.
int wall_sign(const std::vector<mpq_class>& x, const SubsetMask& j) {
  mpq_class diff = 0;
  for (int i = 1; i <= j.m(); ++i) {
    if (j.contains(i))
      diff += x[static_cast<std::size_t>(i - 1)];
    else
      diff -= x[static_cast<std::size_t>(i - 1)];
  }
  return sgn(diff);
}

bool is_antichain_with_m(int m, std::span<const SubsetMask> genes) {
  for (const auto& g : genes)
    if (g.m() != m || !g.contains(m)) return false;
  for (std::size_t i = 0; i < genes.size(); ++i)
    for (std::size_t k = 0; k < genes.size(); ++k)
      if (i != k && hook_leq(genes[i], genes[k])) return false;
  return true;
}

// ----------------------------------------------------------- enumeration

struct Enumerator {
  int m;
  std::vector<SubsetMask> order;
  std::vector<int> status;  // per mask bits: 0 undecided, -1 short, +1 long
  std::vector<LinearConstraint> constraints;
  std::vector<std::pair<std::vector<SubsetMask>, std::vector<mpq_class>>> leaves;

  explicit Enumerator(int m_) : m(m_), order(subsets_with_m_in_hook_order(m_)), status(std::size_t{1} << m_, 0) {
    constraints = cone_constraints(m);
  }

  bool forced_long(const SubsetMask& j) const {
    const std::uint64_t bits = j.bits();
    // Lower hook covers containing m: drop 1, or decrement an element other than m.
    if ((bits & 1u) && bits != 1u && status[bits & ~std::uint64_t{1}] == 1) return true;
    for (int i = 2; i < m; ++i) {
      std::uint64_t bit = std::uint64_t{1} << (i - 1);
      std::uint64_t below = bit >> 1;
      if ((bits & bit) && !(bits & below) && status[(bits & ~bit) | below] == 1) return true;
    }
    // J short would force comp(J) long; that fails if comp(J) sits under a short set.
    SubsetMask comp = j.complement();
    for (std::uint64_t b = 0; b < status.size(); ++b) {
      if (status[b] == -1 && (hook_leq(comp, SubsetMask(b, m)) || hook_leq(SubsetMask(b, m).complement(), j)))
        return true;
    }
    return false;
  }

  void run(std::size_t pos, const std::vector<mpq_class>& witness) {
    if (pos == order.size()) {
      std::vector<SubsetMask> shorts;
      for (const auto& j : order)
        if (status[j.bits()] == -1) shorts.push_back(j);
      leaves.emplace_back(std::move(shorts), witness);
      return;
    }
    const SubsetMask& j = order[pos];
    if (forced_long(j)) {
      status[j.bits()] = 1;
      run(pos + 1, witness);
      status[j.bits()] = 0;
      return;
    }
    const int at_witness = wall_sign(witness, j);
    for (Side side : {Side::Short, Side::Long}) {
      const int want = side == Side::Short ? -1 : 1;
      constraints.push_back(wall_constraint(j, side));
      std::optional<std::vector<mpq_class>> point;
      if (at_witness == want)
        point = witness;
      else
        point = find_feasible_point(m, constraints);
      if (point) {
        status[j.bits()] = want;
        run(pos + 1, *point);
        status[j.bits()] = 0;
      }
      constraints.pop_back();
    }
  }
};

struct ChamberCache {
  std::mutex mutex;
  std::map<int, std::unique_ptr<std::vector<Chamber>>> by_m;
};

ChamberCache& cache() {
  static ChamberCache c;
  return c;
}

void scan_from(std::vector<std::int64_t>& current, int idx, std::int64_t remaining, std::int64_t lower,
               const std::function<bool(const std::vector<std::int64_t>&)>& visit, bool& stop) {
  const int m = static_cast<int>(current.size());
  if (idx == m - 1) {
    if (remaining < lower) return;
    current[static_cast<std::size_t>(idx)] = remaining;
    if (visit(current)) stop = true;
    return;
  }
  const int slots = m - idx;
  for (std::int64_t v = lower; v * slots <= remaining && !stop; ++v) {
    current[static_cast<std::size_t>(idx)] = v;
    scan_from(current, idx + 1, remaining - v, v, visit, stop);
  }
}

// Visits nondecreasing nonnegative integer vectors by total, then lexicographically,
// until `visit` returns true or the total exceeds max_total.
void scan_integer_vectors(int m, std::int64_t max_total,
                          const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  std::vector<std::int64_t> current(static_cast<std::size_t>(m), 0);
  bool stop = false;
  for (std::int64_t total = 1; total <= max_total && !stop; ++total) scan_from(current, 0, total, 0, visit, stop);
}

std::int64_t witness_integral_total(const LengthVector& w) {
  mpz_class total = 0;
  for (const auto& v : w.scaled_integers()) total += v;
  return total.fits_slong_p() ? total.get_si() : std::numeric_limits<std::int64_t>::max();
}

std::vector<std::uint64_t> closure_key(const GeneticCode& code) {
  std::vector<std::uint64_t> key;
  for (const auto& j : down_closure(code)) key.push_back(j.bits());
  return key;
}

// Canonical table order: derivation blocks (see chamber_order_for).
std::vector<std::size_t> table_order(int m, const std::vector<GeneticCode>& codes);

std::unique_ptr<std::vector<Chamber>> build_chambers(int m, const EnumerationOptions& options) {
  Enumerator e(m);
  std::vector<mpq_class> start(static_cast<std::size_t>(m), 1);
  e.run(0, start);

  std::vector<GeneticCode> codes;
  std::vector<LengthVector> witnesses;
  for (auto& [shorts, point] : e.leaves) {
    codes.push_back(maximal_elements(m, shorts));
    witnesses.emplace_back(point);
  }

  // Minimal integral representatives, found in a single sweep.
  std::map<std::vector<std::uint64_t>, std::size_t> by_genes;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    std::vector<std::uint64_t> key;
    for (const auto& g : codes[i].genes()) key.push_back(g.bits());
    by_genes.emplace(std::move(key), i);
  }
  std::int64_t bound = 0;
  for (const auto& w : witnesses) bound = std::max(bound, witness_integral_total(w));
  std::vector<std::optional<LengthVector>> mins(codes.size());
  std::size_t found = 0;
  scan_integer_vectors(m, bound, [&](const std::vector<std::int64_t>& v) {
    auto code = genetic_code_of_integers(v);
    if (!code) return false;
    std::vector<std::uint64_t> key;
    for (const auto& g : code->genes()) key.push_back(g.bits());
    auto it = by_genes.find(key);
    if (it == by_genes.end() || mins[it->second]) return false;
    LengthVector candidate = LengthVector::from_integers(v);
    if (!rationally_generic(candidate)) return false;
    mins[it->second] = std::move(candidate);
    return ++found == codes.size();
  });
  if (found != codes.size()) throw Error("a_min sweep did not reach every chamber");

  auto order = table_order(m, codes);
  auto out = std::make_unique<std::vector<Chamber>>();
  out->reserve(codes.size());
  for (auto i : order) out->push_back(Chamber{codes[i], *mins[i], witnesses[i]});
  (void)options;
  return out;
}

std::vector<std::size_t> table_order(int m, const std::vector<GeneticCode>& codes) {
  std::map<std::vector<std::uint64_t>, std::size_t> by_genes;
  std::map<std::vector<std::uint64_t>, std::size_t> by_closure;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    std::vector<std::uint64_t> key;
    for (const auto& g : codes[i].genes()) key.push_back(g.bits());
    by_genes.emplace(std::move(key), i);
    by_closure.emplace(closure_key(codes[i]), i);
  }
  auto index_of = [&](const GeneticCode& c) -> std::optional<std::size_t> {
    std::vector<std::uint64_t> key;
    for (const auto& g : c.genes()) key.push_back(g.bits());
    auto it = by_genes.find(key);
    if (it == by_genes.end()) return std::nullopt;
    return it->second;
  };
  auto successor = [&](std::size_t i) -> std::optional<std::size_t> {
    const auto& c = codes[i];
    if (c.empty() || is_exceptional(c)) return std::nullopt;
    auto closure = closure_key(c);
    for (int x = 1; x < m; ++x) {
      std::uint64_t j = (std::uint64_t{1} << (m - 1)) | (std::uint64_t{1} << (x - 1));
      if (std::binary_search(closure.begin(), closure.end(), j)) continue;
      auto bigger = closure;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), j), j);
      auto it = by_closure.find(bigger);
      if (it != by_closure.end() && !is_exceptional(codes[it->second])) return it->second;
    }
    return std::nullopt;
  };

  std::vector<std::size_t> order;
  std::vector<bool> placed(codes.size(), false);
  auto place_chain = [&](std::optional<std::size_t> start) {
    while (start && !placed[*start]) {
      placed[*start] = true;
      order.push_back(*start);
      start = successor(*start);
    }
  };

  place_chain(index_of(GeneticCode(m, {})));
  place_chain(index_of(single_gene_code(m)));
  if (m > 3) {
    const GeneticCode exceptional = exceptional_code(m);
    for (const auto& lower : enumerate_chambers(m - 1, EnumerationOptions{true})) {
      auto lifted = tiny_edge(lower.code);
      auto idx = index_of(lifted);
      if (!idx || placed[*idx]) continue;
      place_chain(idx);
      if (lifted == exceptional) place_chain(index_of(mdot2_code(m)));
    }
  } else {
    place_chain(index_of(exceptional_code(m)));
  }
  place_chain(index_of(mdot2_code(m)));

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < codes.size(); ++i)
    if (!placed[i]) rest.push_back(i);
  std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) { return code_less(codes[a], codes[b]); });
  order.insert(order.end(), rest.begin(), rest.end());
  return order;
}

}  // namespace

int WallCrossing::surgery_index(int d) const { return surgery_indices(j, j.m(), d).first; }
int WallCrossing::cosurgery_index(int d) const { return surgery_indices(j, j.m(), d).second; }

std::optional<LengthVector> realizable(int m, std::span<const SubsetMask> genes) {
  if (m < 3 || m > kMaxEdges) return std::nullopt;
  if (!is_antichain_with_m(m, genes)) return std::nullopt;
  GeneticCode code(m, std::vector<SubsetMask>(genes.begin(), genes.end()));
  auto bitmap = down_closure_bitmap(code);
  std::vector<LinearConstraint> constraints = cone_constraints(m);
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  for (std::uint64_t s = 0; s < top; ++s) {
    std::uint64_t j = s | top;
    SubsetMask mask(j, m);
    if (bitmap[j]) {
      constraints.push_back(wall_constraint(mask, Side::Short));
      continue;
    }
    // Hook-minimal non-members: every lower cover containing m is a member.
    bool minimal = true;
    if ((j & 1u) && j != 1u && !bitmap[j & ~std::uint64_t{1}]) minimal = false;
    for (int i = 2; i < m && minimal; ++i) {
      std::uint64_t bit = std::uint64_t{1} << (i - 1);
      std::uint64_t below = bit >> 1;
      if ((j & bit) && !(j & below) && !bitmap[(j & ~bit) | below]) minimal = false;
    }
    if (minimal) constraints.push_back(wall_constraint(mask, Side::Long));
  }
  auto point = find_feasible_point(m, constraints);
  if (!point) return std::nullopt;
  LengthVector witness(std::move(*point));
  // The inequalities above only pin down hook-extremal sets; confirm the rest.
  if (!is_generic(witness) || genetic_code(witness) != code) return std::nullopt;
  return witness;
}

std::optional<LengthVector> realizable(const GeneticCode& code) { return realizable(code.m(), code.genes()); }

const std::vector<Chamber>& enumerate_chambers(int m, EnumerationOptions options) {
  if (m < 3) throw DomainError("enumeration needs m >= 3");
  if (m > kMaxEnumerationEdges && !options.allow_large_m)
    throw BoundExceeded("enumeration is limited to m <= 9 without the large-m override");
  if (m > 20) throw BoundExceeded("enumeration beyond m = 20 is not supported");
  auto& c = cache();
  {
    std::lock_guard lock(c.mutex);
    auto it = c.by_m.find(m);
    if (it != c.by_m.end()) return *it->second;
  }
  // Built outside the lock: the table order recurses into m-1.
  auto built = build_chambers(m, options);
  std::lock_guard lock(c.mutex);
  auto [it, inserted] = c.by_m.emplace(m, std::move(built));
  return *it->second;
}

std::optional<std::size_t> chamber_index(const GeneticCode& code) {
  const auto& all = enumerate_chambers(code.m(), EnumerationOptions{true});
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].code == code) return i;
  return std::nullopt;
}

LengthVector a_min(const GeneticCode& code) {
  // Small m (or an already enumerated m) is answered from the chamber list;
  // otherwise scan for this code alone.
  bool enumerated = code.m() <= 7;
  if (!enumerated) {
    auto& c = cache();
    std::lock_guard lock(c.mutex);
    enumerated = c.by_m.count(code.m()) != 0;
  }
  if (enumerated) {
    auto idx = chamber_index(code);
    if (!idx) throw DomainError("code " + code.to_string() + " is not a chamber");
    return enumerate_chambers(code.m(), EnumerationOptions{true})[*idx].a_min;
  }
  auto witness = realizable(code);
  if (!witness) throw DomainError("code " + code.to_string() + " is not a chamber");
  std::optional<LengthVector> found;
  scan_integer_vectors(code.m(), witness_integral_total(*witness), [&](const std::vector<std::int64_t>& v) {
    auto c = genetic_code_of_integers(v);
    if (!c || *c != code) return false;
    LengthVector candidate = LengthVector::from_integers(v);
    if (!rationally_generic(candidate)) return false;
    found = std::move(candidate);
    return true;
  });
  if (!found) throw Error("a_min search exhausted its bound");
  return *found;
}

GeneticCode tiny_edge(const GeneticCode& code) {
  const int m = code.m() + 1;
  std::vector<SubsetMask> genes;
  for (const auto& g : code.genes()) genes.emplace_back((g.bits() << 1) | 1u, m);
  return GeneticCode(m, std::move(genes));
}

std::optional<GeneticCode> tiny_edge_reduce(const GeneticCode& code) {
  if (code.m() <= 3) return std::nullopt;
  std::vector<SubsetMask> genes;
  for (const auto& g : code.genes()) {
    if (!g.contains(1)) return std::nullopt;
    genes.emplace_back(g.bits() >> 1, code.m() - 1);
  }
  return GeneticCode(code.m() - 1, std::move(genes));
}

std::optional<SubsetMask> adjacent_by_pair(const GeneticCode& from, const GeneticCode& to) {
  if (from.m() != to.m()) return std::nullopt;
  auto a = down_closure_bitmap(from);
  auto b = down_closure_bitmap(to);
  std::optional<SubsetMask> extra;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return std::nullopt;
    if (b[i] && !a[i]) {
      if (extra) return std::nullopt;
      extra = SubsetMask(i, to.m());
    }
  }
  return extra;
}

std::pair<int, int> surgery_indices(const SubsetMask& j, int m, int d) {
  if (j.m() != m || !j.contains(m)) throw DomainError("surgery set must contain m");
  if (j.size() < 2 || j.size() > m - 2) throw DomainError("surgery needs 2 <= |J| <= m-2");
  if (d < 2) throw DomainError("surgery needs d >= 2");
  return {(d - 1) * (j.size() - 1) - 1, (m - 1 - j.size()) * (d - 1)};
}

GeneticCode single_gene_code(int m) { return GeneticCode(m, {SubsetMask(std::uint64_t{1} << (m - 1), m)}); }

GeneticCode exceptional_code(int m) {
  std::uint64_t bits = std::uint64_t{1} << (m - 1);
  for (int i = 1; i <= m - 3; ++i) bits |= std::uint64_t{1} << (i - 1);
  return GeneticCode(m, {SubsetMask(bits, m)});
}

GeneticCode mdot2_code(int m) {
  std::uint64_t bits = std::uint64_t{1} << (m - 1);
  for (int i = 2; i <= m - 3; ++i) bits |= std::uint64_t{1} << (i - 1);
  return GeneticCode(m, {SubsetMask(bits, m)});
}

GeneticCode pair_code(int m, int p) {
  if (p < 0 || p > m - 1) throw DomainError("pair code needs 0 <= p < m");
  if (p == 0) return single_gene_code(m);
  return GeneticCode(m, {SubsetMask((std::uint64_t{1} << (m - 1)) | (std::uint64_t{1} << (p - 1)), m)});
}

bool is_exceptional(const GeneticCode& code) { return code.m() >= 3 && code == exceptional_code(code.m()); }

std::optional<GeneticCode> pair_successor(const GeneticCode& code) {
  const int m = code.m();
  if (code.empty()) return std::nullopt;
  auto closure = down_closure_bitmap(code);
  for (int x = 1; x < m; ++x) {
    std::uint64_t j = (std::uint64_t{1} << (m - 1)) | (std::uint64_t{1} << (x - 1));
    if (closure[j]) continue;
    std::vector<SubsetMask> family;
    for (std::size_t b = 0; b < closure.size(); ++b)
      if (closure[b] || b == j) family.emplace_back(b, m);
    GeneticCode next = maximal_elements(m, family);
    if (down_closure(next).size() != family.size()) return std::nullopt;
    if (realizable(next)) return next;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace polychamber
