#include "polychamber/combinatorics.hpp"

#include "polychamber/errors.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <limits>

namespace polychamber {

namespace {

std::uint64_t low_bits(int m) {
  return m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Sign of (J-sum - complement-sum): -1 short, +1 long, 0 on the wall.
template <class Int>
int side_sign(std::span<const Int> values, const Int& total, std::uint64_t tiny, std::uint64_t j,
              std::uint64_t full, TieBreak tie_break) {
  Int sum_j = 0;
  for (std::uint64_t rest = j; rest != 0; rest &= rest - 1) sum_j += values[static_cast<std::size_t>(std::countr_zero(rest))];
  Int diff = sum_j + sum_j - total;
  if (diff < 0) return -1;
  if (diff > 0) return 1;
  std::uint64_t tiny_j = tiny & j;
  std::uint64_t tiny_c = tiny & (full & ~j);
  if ((tiny_j | tiny_c) == 0) return 0;
  if (tie_break == TieBreak::CountThenIndex) {
    int cj = std::popcount(tiny_j);
    int cc = std::popcount(tiny_c);
    if (cj != cc) return cj < cc ? -1 : 1;
  }
  // Sides are disjoint, so the top ε index belongs to exactly one of them.
  std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(tiny_j | tiny_c));
  return (tiny_j & top) ? 1 : -1;
}

template <class Int>
bool rational_tie(std::span<const Int> values, const Int& total, std::uint64_t j) {
  Int sum_j = 0;
  for (std::uint64_t rest = j; rest != 0; rest &= rest - 1) sum_j += values[static_cast<std::size_t>(std::countr_zero(rest))];
  return sum_j + sum_j == total;
}

// Hook covers of J inside {1..m}: increment one element into a free slot, or add 1.
template <class Fn>
void for_each_cover(std::uint64_t j, int m, Fn&& fn) {
  if ((j & 1u) == 0) fn(j | 1u);
  for (int i = 1; i < m; ++i) {
    std::uint64_t bit = std::uint64_t{1} << (i - 1);
    std::uint64_t next = bit << 1;
    if ((j & bit) && !(j & next)) fn((j & ~bit) | next);
  }
}

// S_m as a bitmap plus its hook-maximal elements, for a sorted vector.
template <class Int>
std::optional<GeneticCode> code_from_values(std::span<const Int> values, std::uint64_t tiny, int m,
                                            TieBreak tie_break, std::uint64_t* wall) {
  Int total = 0;
  for (const auto& v : values) total += v;
  const std::uint64_t full = low_bits(m);
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  const std::uint64_t half = top;  // number of subsets containing m
  std::vector<bool> short_bitmap(static_cast<std::size_t>(top) << 1, false);
  for (std::uint64_t s = 0; s < half; ++s) {
    std::uint64_t j = s | top;
    int sign = side_sign<Int>(values, total, tiny, j, full, tie_break);
    if (sign == 0) {
      if (wall) *wall = j;
      return std::nullopt;
    }
    if (sign < 0) short_bitmap[j] = true;
  }
  std::vector<SubsetMask> genes;
  for (std::uint64_t s = 0; s < half; ++s) {
    std::uint64_t j = s | top;
    if (!short_bitmap[j]) continue;
    bool maximal = true;
    for_each_cover(j, m, [&](std::uint64_t c) {
      if (short_bitmap[c]) maximal = false;
    });
    if (maximal) genes.emplace_back(j, m);
  }
  return GeneticCode(m, std::move(genes));
}

mpq_class parse_rational(const std::string& token) {
  if (token.empty()) throw ParseError("empty length entry");
  for (char c : token) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '+'))
      throw ParseError("invalid length entry '" + token + "'");
  }
  mpq_class q;
  if (q.set_str(token, 10) != 0) throw ParseError("invalid length entry '" + token + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + token + "'");
  q.canonicalize();
  return q;
}

}  // namespace

// ---------------------------------------------------------------- SubsetMask

SubsetMask::SubsetMask(std::uint64_t bits, int m) : bits_(bits), m_(m) {
  if (m < 0 || m > kMaxEdges) throw DomainError("subset ambient size out of range");
  if ((bits & ~low_bits(m)) != 0) throw DomainError("subset has elements above m");
}

SubsetMask SubsetMask::from_elements(std::span<const int> elements, int m) {
  std::uint64_t bits = 0;
  for (int e : elements) {
    if (e < 1 || e > m) throw DomainError("subset element " + std::to_string(e) + " outside 1.." + std::to_string(m));
    bits |= std::uint64_t{1} << (e - 1);
  }
  return SubsetMask(bits, m);
}

SubsetMask SubsetMask::full(int m) { return SubsetMask(low_bits(m), m); }

int SubsetMask::size() const noexcept { return std::popcount(bits_); }

int SubsetMask::max_element() const noexcept { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }

SubsetMask SubsetMask::complement() const noexcept { return SubsetMask(low_bits(m_) & ~bits_, m_); }

SubsetMask SubsetMask::with(int i) const {
  if (i < 1 || i > m_) throw DomainError("element outside range");
  return SubsetMask(bits_ | (std::uint64_t{1} << (i - 1)), m_);
}

SubsetMask SubsetMask::without(int i) const {
  if (i < 1 || i > m_) throw DomainError("element outside range");
  return SubsetMask(bits_ & ~(std::uint64_t{1} << (i - 1)), m_);
}

std::vector<int> SubsetMask::elements_desc() const {
  std::vector<int> out;
  for (int i = m_; i >= 1; --i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string SubsetMask::to_string() const {
  auto elems = elements_desc();
  std::string out;
  if (m_ <= 9) {
    for (int e : elems) out += static_cast<char>('0' + e);
    return out;
  }
  out = "[";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(elems[i]);
  }
  return out + "]";
}

bool hook_leq(const SubsetMask& a, const SubsetMask& b) {
  if (a.size() > b.size()) return false;
  std::uint64_t ra = a.bits();
  std::uint64_t rb = b.bits();
  // Walk both from the top.
  while (ra != 0) {
    int ta = 63 - std::countl_zero(ra);
    int tb = 63 - std::countl_zero(rb);
    if (ta > tb) return false;
    ra &= ~(std::uint64_t{1} << ta);
    rb &= ~(std::uint64_t{1} << tb);
  }
  return true;
}

bool gene_precedes(const SubsetMask& a, const SubsetMask& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  // Equal cardinality: lexicographic on descending digits is the same as comparing
  // the top differing element.
  std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(diff));
  return (a.bits() & top) != 0;
}

// -------------------------------------------------------------- LengthVector

LengthVector::LengthVector(std::vector<mpq_class> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 3) throw DomainError("a length vector needs at least three entries");
  if (entries_.size() > static_cast<std::size_t>(kMaxEdges)) throw DomainError("too many edges");
  mpz_class lcm = 1;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& q = entries_[i];
    q.canonicalize();
    if (q < 0) throw DomainError("edge lengths must be nonnegative");
    if (q == 0) tiny_mask_ |= std::uint64_t{1} << i;
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  sorted_ = std::is_sorted(entries_.begin(), entries_.end());
  scaled_.reserve(entries_.size());
  mpz_class total = 0;
  for (const auto& q : entries_) {
    mpz_class v = q.get_num() * (lcm / q.get_den());
    total += v;
    scaled_.push_back(v);
  }
  if (total < (mpz_class(1) << 61)) {
    std::vector<std::int64_t> small;
    small.reserve(scaled_.size());
    for (const auto& v : scaled_) small.push_back(v.get_si());
    small_ = std::move(small);
  }
}

LengthVector LengthVector::from_integers(std::span<const std::int64_t> entries) {
  std::vector<mpq_class> q;
  q.reserve(entries.size());
  for (auto v : entries) q.emplace_back(mpz_class(static_cast<long>(v)));
  return LengthVector(std::move(q));
}

LengthVector LengthVector::parse(std::string_view text) {
  std::vector<mpq_class> out;
  std::string body = trim(text);
  if (!body.empty() && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  if (body.empty()) throw ParseError("empty length vector");
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    std::string token = trim(std::string_view(body).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    out.push_back(parse_rational(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() < 3) throw ParseError("a length vector needs at least three entries");
  if (out.size() > static_cast<std::size_t>(kMaxEdges)) throw ParseError("too many edges");
  return LengthVector(std::move(out));
}

bool LengthVector::is_integral() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const mpq_class& q) { return q.get_den() == 1; });
}

LengthVector LengthVector::sorted(bool* reordered) const {
  std::vector<mpq_class> copy = entries_;
  std::stable_sort(copy.begin(), copy.end());
  if (reordered) *reordered = (copy != entries_);
  return LengthVector(std::move(copy));
}

LengthVector LengthVector::scaled(const mpq_class& factor) const {
  if (factor <= 0) throw DomainError("scale factor must be positive");
  std::vector<mpq_class> copy;
  copy.reserve(entries_.size());
  for (const auto& q : entries_) copy.push_back(q * factor);
  return LengthVector(std::move(copy));
}

LengthVector LengthVector::with_tiny_edge() const {
  std::vector<mpq_class> copy;
  copy.reserve(entries_.size() + 1);
  copy.emplace_back(0);
  copy.insert(copy.end(), entries_.begin(), entries_.end());
  return LengthVector(std::move(copy));
}

std::string LengthVector::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += entries_[i].get_str();
  }
  return out;
}

std::string LengthVector::to_string() const { return "(" + to_csv() + ")"; }

Side compare_subset_sums(const LengthVector& a, const SubsetMask& j, TieBreak tie_break) {
  if (j.m() != a.m()) throw DomainError("subset and length vector disagree on m");
  const std::uint64_t full = low_bits(a.m());
  int sign;
  if (const auto& small = a.small_integers()) {
    std::int64_t total = 0;
    for (auto v : *small) total += v;
    sign = side_sign<std::int64_t>(*small, total, a.tiny_mask(), j.bits(), full, tie_break);
  } else {
    mpz_class total = 0;
    for (const auto& v : a.scaled_integers()) total += v;
    sign = side_sign<mpz_class>(a.scaled_integers(), total, a.tiny_mask(), j.bits(), full, tie_break);
  }
  if (sign == 0) {
    // Report the wall by its side containing m.
    SubsetMask wall = j.contains(a.m()) ? j : j.complement();
    throw NongenericError(wall.bits(), a.m(), "length vector lies on the wall H_{" + wall.to_string() + "}");
  }
  return sign < 0 ? Side::Short : Side::Long;
}

std::optional<SubsetMask> find_wall(const LengthVector& a) {
  const int m = a.m();
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  // Smallest walls first; within a size, larger elements first ({3,4} before {1,4}).
  for (int k = 0; k < m; ++k) {
    for (std::uint64_t s = top; s-- > 0;) {
      if (std::popcount(s) != k) continue;
      SubsetMask j(s | top, m);
      try {
        compare_subset_sums(a, j);
      } catch (const NongenericError&) {
        return j;
      }
    }
  }
  return std::nullopt;
}

bool is_generic(const LengthVector& a) { return !find_wall(a).has_value(); }

bool rationally_generic(const LengthVector& a) {
  const int m = a.m();
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  if (const auto& small = a.small_integers()) {
    std::int64_t total = 0;
    for (auto v : *small) total += v;
    for (std::uint64_t s = 0; s < top; ++s)
      if (rational_tie<std::int64_t>(*small, total, s | top)) return false;
    return true;
  }
  mpz_class total = 0;
  for (const auto& v : a.scaled_integers()) total += v;
  for (std::uint64_t s = 0; s < top; ++s)
    if (rational_tie<mpz_class>(a.scaled_integers(), total, s | top)) return false;
  return true;
}

// -------------------------------------------------------------- GeneticCode

GeneticCode::GeneticCode(int m, std::vector<SubsetMask> genes) : m_(m), genes_(std::move(genes)) {
  if (m < 1 || m > kMaxEdges) throw DomainError("genetic code needs 1 <= m <= 62");
  for (const auto& g : genes_) {
    if (g.m() != m) throw DomainError("gene ambient size differs from code");
    if (!g.contains(m)) throw DomainError("gene " + g.to_string() + " does not contain m");
  }
  std::sort(genes_.begin(), genes_.end(), gene_precedes);
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    for (std::size_t k = 0; k < genes_.size(); ++k) {
      if (i != k && hook_leq(genes_[i], genes_[k]))
        throw DomainError("genes " + genes_[i].to_string() + " and " + genes_[k].to_string() +
                          " are hook-comparable");
    }
  }
}

GeneticCode GeneticCode::parse(std::string_view text, int m) {
  std::string s = trim(text);
  auto strip = [&](std::string_view open, std::string_view close) {
    if (s.size() >= open.size() + close.size() && s.compare(0, open.size(), open) == 0 &&
        s.compare(s.size() - close.size(), close.size(), close) == 0)
      s = s.substr(open.size(), s.size() - open.size() - close.size());
  };
  strip("⟨", "⟩");
  strip("<", ">");
  s = trim(s);
  std::vector<std::vector<int>> raw;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ',' || s[i] == ' ') {
      ++i;
      continue;
    }
    std::vector<int> gene;
    if (s[i] == '[') {
      auto close = s.find(']', i);
      if (close == std::string::npos) throw ParseError("unterminated gene in '" + s + "'");
      std::string inner = s.substr(i + 1, close - i - 1);
      std::size_t p = 0;
      while (p < inner.size()) {
        auto c = inner.find(',', p);
        std::string tok = trim(std::string_view(inner).substr(p, c == std::string::npos ? std::string::npos : c - p));
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError("bad gene element '" + tok + "'");
        gene.push_back(v);
        if (c == std::string::npos) break;
        p = c + 1;
      }
      i = close + 1;
    } else {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) gene.push_back(s[i++] - '0');
      if (gene.empty()) throw ParseError("unexpected character in code '" + s + "'");
    }
    raw.push_back(std::move(gene));
  }
  int inferred = m;
  if (inferred == 0) {
    for (const auto& g : raw)
      for (int e : g) inferred = std::max(inferred, e);
    if (inferred == 0) throw ParseError("cannot infer m for the empty code");
  }
  std::vector<SubsetMask> genes;
  for (const auto& g : raw) {
    try {
      genes.push_back(SubsetMask::from_elements(g, inferred));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  try {
    return GeneticCode(inferred, std::move(genes));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string GeneticCode::to_string(bool unicode) const {
  std::string out = unicode ? "⟨" : "<";
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (i) out += ',';
    out += genes_[i].to_string();
  }
  out += unicode ? "⟩" : ">";
  return out;
}

bool code_less(const GeneticCode& a, const GeneticCode& b) {
  const auto& ga = a.genes();
  const auto& gb = b.genes();
  for (std::size_t i = 0; i < std::min(ga.size(), gb.size()); ++i) {
    if (ga[i] == gb[i]) continue;
    return gene_precedes(gb[i], ga[i]);
  }
  return ga.size() < gb.size();
}

std::vector<SubsetMask> short_sets_with_m(const LengthVector& a, TieBreak tie_break) {
  const int m = a.m();
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  std::vector<SubsetMask> out;
  for (std::uint64_t s = 0; s < top; ++s) {
    SubsetMask j(s | top, m);
    if (compare_subset_sums(a, j, tie_break) == Side::Short) out.push_back(j);
  }
  return out;
}

GeneticCode maximal_elements(int m, std::span<const SubsetMask> family) {
  std::vector<SubsetMask> genes;
  for (const auto& j : family) {
    bool maximal = true;
    for (const auto& k : family) {
      if (!(k == j) && hook_leq(j, k)) {
        maximal = false;
        break;
      }
    }
    if (maximal) genes.push_back(j);
  }
  return GeneticCode(m, std::move(genes));
}

GeneticCode genetic_code(const LengthVector& a, TieBreak tie_break) {
  if (!a.is_sorted()) throw UnsortedError("genetic_code needs a nondecreasing length vector");
  std::uint64_t wall = 0;
  std::optional<GeneticCode> code;
  if (const auto& small = a.small_integers())
    code = code_from_values<std::int64_t>(*small, a.tiny_mask(), a.m(), tie_break, &wall);
  else
    code = code_from_values<mpz_class>(a.scaled_integers(), a.tiny_mask(), a.m(), tie_break, &wall);
  if (!code) {
    SubsetMask j(wall, a.m());
    throw NongenericError(wall, a.m(), "length vector lies on the wall H_{" + j.to_string() + "}");
  }
  return *code;
}

std::optional<GeneticCode> genetic_code_of_integers(std::span<const std::int64_t> a, TieBreak tie_break) {
  const int m = static_cast<int>(a.size());
  std::uint64_t tiny = 0;
  for (int i = 0; i < m; ++i)
    if (a[static_cast<std::size_t>(i)] == 0) tiny |= std::uint64_t{1} << i;
  return code_from_values<std::int64_t>(a, tiny, m, tie_break, nullptr);
}

std::vector<bool> down_closure_bitmap(const GeneticCode& code) {
  const int m = code.m();
  std::vector<bool> bitmap(std::size_t{1} << m, false);
  if (code.empty()) return bitmap;
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  for (std::uint64_t s = 0; s < top; ++s) {
    SubsetMask j(s | top, m);
    for (const auto& g : code.genes()) {
      if (hook_leq(j, g)) {
        bitmap[j.bits()] = true;
        break;
      }
    }
  }
  return bitmap;
}

std::vector<SubsetMask> down_closure(const GeneticCode& code) {
  auto bitmap = down_closure_bitmap(code);
  std::vector<SubsetMask> out;
  for (std::size_t b = 0; b < bitmap.size(); ++b)
    if (bitmap[b]) out.emplace_back(b, code.m());
  return out;
}

std::vector<SubsetMask> full_short_family(const GeneticCode& code) {
  const int m = code.m();
  auto bitmap = down_closure_bitmap(code);
  const std::uint64_t full = low_bits(m);
  const std::uint64_t top = std::uint64_t{1} << (m - 1);
  std::vector<SubsetMask> out;
  for (std::uint64_t b = 0; b <= full; ++b) {
    if (b & top) {
      if (bitmap[b]) out.emplace_back(b, m);
    } else if (!bitmap[full & ~b]) {
      out.emplace_back(b, m);
    }
  }
  return out;
}

}  // namespace polychamber
