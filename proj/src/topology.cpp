#include "polychamber/topology.hpp"

#include "polychamber/errors.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace polychamber {

const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::EmptyBase: return "empty";
    case Rule::SingleBase: return "single-gene";
    case Rule::ExceptionalBase: return "exceptional";
    case Rule::ConnectedSum: return "connected-sum";
    case Rule::Mdot2Base: return "mdot2";
    case Rule::TinyEdge: return "tiny-edge";
    case Rule::None: return "none";
  }
  return "none";
}

Dim expected_dimension(int m, SpaceQuery query) {
  switch (query.target) {
    case Target::Chain: {
      Dim sym{m - 2, -1};
      return query.d ? Dim::number(sym.at(*query.d)) : sym;
    }
    case Target::Planar: return Dim::number(m - 3);
    case Target::Spatial: return Dim::number(2 * (m - 3));
  }
  return {};
}

namespace {

const Dim kFibre{1, 0};    // d-1
const Dim kFibreLow{1, -1};  // d-2

SpaceExpr s(Dim n) { return SpaceExpr::sphere(n); }

// Summand added to Ch when crossing a wall with |J| = 2.
SpaceExpr crossing_summand(int m) { return SpaceExpr::product({s(kFibre), s(Dim{m - 3, -1})}); }

struct Derived {
  SpaceExpr chain;
  SpaceExpr spatial;
};

class Engine {
 public:
  Engine(int m, const DescriptionTable* lower) : m_(m), lower_(lower), chambers_(enumerate_chambers(m, {true})) {
    for (std::size_t i = 0; i < chambers_.size(); ++i) index_.emplace(chambers_[i].code.to_string(false), i);
  }

  DescriptionTable run() {
    DescriptionTable table;
    table.m = m_;
    table.rows.resize(chambers_.size());
    std::vector<std::size_t> order(chambers_.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> closure_size(chambers_.size());
    for (std::size_t i = 0; i < chambers_.size(); ++i) closure_size[i] = down_closure(chambers_[i].code).size();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return closure_size[a] < closure_size[b]; });

    done_.assign(chambers_.size(), false);
    for (std::size_t i : order) {
      auto& row = table.rows[i];
      row.code = chambers_[i].code;
      auto rules = applicable(row.code, table);
      if (rules.empty()) {
        row.chain = SpaceExpr::unknown("unreachable by implemented rules");
        row.spatial = row.chain;
      } else {
        row.derivation = rules.front();
        auto chosen = apply(rules.front(), table);
        row.chain = chosen.chain;
        row.spatial = chosen.spatial;
        if (rules.front().rule == Rule::ConnectedSum) check_sum(row.code, rules.front(), chosen, table);
        for (std::size_t k = 1; k < rules.size(); ++k) {
          row.alternatives.push_back(rules[k]);
          auto alt = apply(rules[k], table);
          if (rules[k].rule == Rule::ConnectedSum) check_sum(row.code, rules[k], alt, table);
          check_paths(row.code, rules.front(), chosen, rules[k], alt, table);
        }
      }
      done_[i] = true;
    }
    return table;
  }

 private:
  const ChamberDescription* same_m(const GeneticCode& code, const DescriptionTable& table) const {
    auto it = index_.find(code.to_string(false));
    if (it == index_.end() || !done_[it->second]) return nullptr;
    return &table.rows[it->second];
  }

  const ChamberDescription* lower(const GeneticCode& code) const {
    if (!lower_) return nullptr;
    for (const auto& row : lower_->rows)
      if (row.code == code) return &row;
    return nullptr;
  }

  // Every rule that applies, in priority order.
  std::vector<Derivation> applicable(const GeneticCode& code, const DescriptionTable& table) const {
    std::vector<Derivation> out;
    if (code.empty()) {
      out.push_back({Rule::EmptyBase, std::nullopt, std::nullopt});
      return out;
    }
    if (code == single_gene_code(m_)) out.push_back({Rule::SingleBase, std::nullopt, std::nullopt});
    if (is_exceptional(code)) out.push_back({Rule::ExceptionalBase, std::nullopt, std::nullopt});
    if (!is_exceptional(code)) {
      for (const auto& gene : code.genes()) {
        if (gene.size() != 2) continue;
        std::vector<SubsetMask> rest;
        for (const auto& j : down_closure(code))
          if (j != gene) rest.push_back(j);
        GeneticCode source = maximal_elements(m_, rest);
        if (is_exceptional(source)) continue;
        const auto* row = same_m(source, table);
        if (row && !row->chain.is_unknown()) out.push_back({Rule::ConnectedSum, source, gene});
      }
    }
    if (m_ >= 5 && code == mdot2_code(m_)) out.push_back({Rule::Mdot2Base, std::nullopt, std::nullopt});
    if (auto reduced = tiny_edge_reduce(code)) {
      const auto* row = lower(*reduced);
      if (row && !row->chain.is_unknown()) out.push_back({Rule::TinyEdge, *reduced, std::nullopt});
    }
    return out;
  }

  Derived apply(const Derivation& rule, const DescriptionTable& table) const {
    const int m = m_;
    switch (rule.rule) {
      case Rule::EmptyBase: return {SpaceExpr::empty(), SpaceExpr::empty()};
      case Rule::SingleBase: return {s(Dim{m - 2, -1}), SpaceExpr::cp(m - 3)};
      case Rule::ExceptionalBase:
        return {SpaceExpr::product({SpaceExpr::power(s(kFibre), m - 3), s(kFibreLow)}),
                SpaceExpr::power(SpaceExpr::sphere(2), m - 3)};
      case Rule::ConnectedSum: {
        const auto* src = same_m(*rule.source, table);
        return {SpaceExpr::conn_sum({src->chain, crossing_summand(m)}),
                SpaceExpr::conn_sum({src->spatial, SpaceExpr::cpbar(m - 3)})};
      }
      case Rule::Mdot2Base:
        return {SpaceExpr::opaque_b3(m, std::nullopt),
                SpaceExpr::conn_sum({SpaceExpr::power(SpaceExpr::sphere(2), m - 3), SpaceExpr::cpbar(m - 3)})};
      case Rule::TinyEdge: {
        const auto* src = lower(*rule.source);
        SpaceExpr chain = SpaceExpr::product({s(kFibre), src->chain});
        // N³(α⁺) is the twisted S²-bundle over Ch³(α), whose circle quotient is N³(α).
        SpaceExpr spatial = src->spatial.is_unknown()
                                ? src->spatial
                                : SpaceExpr::twisted_s2(src->chain.at(3), euler_char(src->spatial));
        return {chain, spatial};
      }
      case Rule::None: break;
    }
    return {SpaceExpr::unknown("no rule"), SpaceExpr::unknown("no rule")};
  }

  void record(DescriptionTable& table, EngineCheck::Kind kind, const GeneticCode& code, bool passed, bool skipped,
              std::string detail) const {
    table.checks.push_back({kind, code, passed, skipped, std::move(detail)});
  }

  // χ(after) = χ(before) + χ(summand) - χ(S^dim) for Ch at d = 2, 3 and for N³.
  void check_sum(const GeneticCode& code, const Derivation& rule, const Derived& after, DescriptionTable& table) const {
    const auto* src = same_m(*rule.source, table);
    auto one = [&](const SpaceExpr& before, const SpaceExpr& summand, const SpaceExpr& result, const char* what) {
      auto xb = euler_char(before), xs = euler_char(summand), xa = euler_char(result);
      auto xsphere = euler_char(SpaceExpr::sphere(result.dimension()));
      bool ok = xb && xs && xa && xsphere && *xa == *xb + *xs - *xsphere;
      std::string detail = std::string(what) + ": chi(after)=" + (xa ? std::to_string(*xa) : "?") +
                           " chi(before)=" + (xb ? std::to_string(*xb) : "?") +
                           " chi(summand)=" + (xs ? std::to_string(*xs) : "?");
      record(table, EngineCheck::Kind::ConnectedSumEuler, code, ok, false, detail);
    };
    for (int d : {2, 3}) {
      one(src->chain.at(d), crossing_summand(m_).at(d), after.chain.at(d), d == 2 ? "Ch^2" : "Ch^3");
    }
    one(src->spatial, SpaceExpr::cpbar(m_ - 3), after.spatial, "N^3");
  }

  void check_paths(const GeneticCode& code, const Derivation& first, const Derived& a, const Derivation& second,
                   const Derived& b, DescriptionTable& table) const {
    const std::string label = std::string(rule_name(first.rule)) + " vs " + rule_name(second.rule);
    auto compare_one = [&](const SpaceExpr& x, const SpaceExpr& y, const std::string& what) {
      bool skipped = x.contains_opaque() || y.contains_opaque();
      bool ok = skipped || equivalent_up_to_known_diffeos(x, y);
      record(table, EngineCheck::Kind::PathIndependence, code, ok, skipped,
             label + " " + what + ": " + x.render() + " | " + y.render());
    };
    compare_one(a.chain, b.chain, "Ch");
    compare_one(a.chain.at(2), b.chain.at(2), "N^2");
    compare_one(a.spatial, b.spatial, "N^3");
  }

  int m_;
  const DescriptionTable* lower_;
  const std::vector<Chamber>& chambers_;
  std::map<std::string, std::size_t> index_;
  std::vector<bool> done_;
};

std::recursive_mutex table_mutex;
std::map<int, std::unique_ptr<DescriptionTable>> table_cache;

}  // namespace

const DescriptionTable& description_table(int m, DescribeOptions options) {
  if (m < 3) throw DomainError("descriptions need m >= 3");
  if (m > kMaxDescriptionEdges && !options.allow_large_m)
    throw BoundExceeded("descriptions are limited to m <= " + std::to_string(kMaxDescriptionEdges) +
                        " without the large-m override");
  std::lock_guard lock(table_mutex);
  if (auto it = table_cache.find(m); it != table_cache.end()) return *it->second;
  const DescriptionTable* lower = m > 3 ? &description_table(m - 1, options) : nullptr;
  if (!options.allow_large_m) enumerate_chambers(m);  // enforces the enumeration bound
  auto table = std::make_unique<DescriptionTable>(Engine(m, lower).run());
  return *table_cache.emplace(m, std::move(table)).first->second;
}

SpaceExpr describe(const GeneticCode& code, SpaceQuery query, DescribeOptions options) {
  const auto& table = description_table(code.m(), options);
  for (const auto& row : table.rows) {
    if (row.code != code) continue;
    switch (query.target) {
      case Target::Chain: return query.d ? row.chain.at(*query.d) : row.chain;
      case Target::Planar: return row.chain.is_unknown() ? row.chain : row.chain.at(2);
      case Target::Spatial: return row.spatial;
    }
  }
  throw DomainError("not a chamber: " + code.to_string());
}

std::pair<std::size_t, std::size_t> coverage(int m, SpaceQuery query, DescribeOptions options) {
  const auto& table = description_table(m, options);
  std::size_t described = 0;
  for (const auto& row : table.rows) {
    const auto& x = query.target == Target::Spatial ? row.spatial : row.chain;
    if (!x.contains_unknown()) ++described;
  }
  return {described, table.rows.size()};
}

}  // namespace polychamber
