#include "polychamber/chambers.hpp"
#include "polychamber/errors.hpp"

#include "oracle.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace polychamber;

namespace {

GeneticCode code(const char* s, int m = 0) { return GeneticCode::parse(s, m); }

SubsetMask set(std::initializer_list<int> el, int m) { return SubsetMask::from_elements(std::vector<int>(el), m); }

std::vector<long> pair_representative(int m, int p) {
  std::vector<long> v(static_cast<std::size_t>(p), 1);
  v.insert(v.end(), static_cast<std::size_t>(m - p - 1), 2);
  v.push_back(2 * m - p - 5);
  return v;
}

}  // namespace

TEST_CASE("chamber counts") {
  const std::map<int, std::size_t> expected{{3, 2}, {4, 3}, {5, 7}, {6, 21}, {7, 135}};
  for (auto [m, n] : expected) {
    const auto& chambers = enumerate_chambers(m);
    CHECK(chambers.size() == n);
    std::set<std::string> names;
    for (const auto& c : chambers) names.insert(c.code.to_string());
    CHECK(names.size() == n);
  }
  CHECK_THROWS_AS(enumerate_chambers(10), BoundExceeded);
  CHECK_THROWS_AS(enumerate_chambers(2), DomainError);
}

TEST_CASE("m = 4 chambers in table order") {
  const auto& c = enumerate_chambers(4);
  REQUIRE(c.size() == 3);
  CHECK(c[0].code.to_string() == "⟨⟩");
  CHECK(c[1].code.to_string() == "⟨4⟩");
  CHECK(c[2].code.to_string() == "⟨41⟩");
}

TEST_CASE("enumeration agrees with an integer scan through the oracle (m <= 6)") {
  for (int m = 3; m <= 6; ++m) {
    std::set<std::set<oracle::Set>> scanned;
    for (const auto& [genes, v] : oracle::first_representatives(m, 30)) scanned.insert(genes);
    std::set<std::set<oracle::Set>> enumerated;
    for (const auto& c : enumerate_chambers(m)) enumerated.insert(support::genes_of(c.code));
    CHECK(scanned == enumerated);
  }
}

TEST_CASE("realizability") {
  auto w = realizable(code("<621,64>"));
  REQUIRE(w);
  CHECK(genetic_code(*w) == code("<621,64>"));
  CHECK(genetic_code(LengthVector::parse("1,1,2,2,3,4")) == code("<621,64>"));
  for (int m = 3; m <= 12; ++m) {
    auto single = realizable(single_gene_code(m));
    REQUIRE(single);
    CHECK(genetic_code(*single) == single_gene_code(m));
  }
  std::vector<SubsetMask> comparable{set({6, 5}, 6), set({6, 4}, 6)};
  CHECK_FALSE(realizable(6, comparable));
  // An antichain with no realization: both short would give 2·a5 < 0.
  std::vector<SubsetMask> infeasible{set({5, 4}, 5), set({5, 3, 2, 1}, 5)};
  CHECK_FALSE(hook_leq(infeasible[0], infeasible[1]));
  CHECK_FALSE(realizable(5, infeasible));
  std::set<std::string> seen;
  for (const auto& c : enumerate_chambers(6)) seen.insert(c.code.to_string());
  CHECK(seen.count("⟨65,64⟩") == 0);
}

TEST_CASE("witnesses are positive and land in their chamber") {
  for (int m = 3; m <= 7; ++m)
    for (const auto& c : enumerate_chambers(m)) {
      REQUIRE(c.witness.tiny_mask() == 0);
      REQUIRE(c.witness.is_sorted());
      REQUIRE(genetic_code(c.witness) == c.code);
    }
}

TEST_CASE("a_min examples") {
  CHECK(a_min(code("<5>")) == LengthVector::parse("1,1,1,1,3"));
  CHECK(a_min(code("<41>")) == LengthVector::parse("0,1,1,1"));
  CHECK(a_min(code("<54>")) == LengthVector::parse("1,1,1,1,1"));
  CHECK(a_min(code("<4>")) == LengthVector::parse("1,1,1,2"));
  CHECK(a_min(code("<>", 4)) == LengthVector::parse("0,0,0,1"));
  CHECK(a_min(code("<621,64>")) == LengthVector::parse("1,1,2,2,3,4"));
  for (int m = 3; m <= 7; ++m) {
    std::vector<long> expected(static_cast<std::size_t>(m - 1), 1);
    expected.push_back(m - 2);
    CHECK(a_min(single_gene_code(m)) == support::from_longs(expected));
  }
  CHECK_THROWS_AS(a_min(code("<42>")), DomainError);
}

TEST_CASE("a_min round-trips through the genetic code (m <= 7)") {
  for (int m = 3; m <= 7; ++m)
    for (const auto& c : enumerate_chambers(m)) {
      REQUIRE(genetic_code(c.a_min) == c.code);
      REQUIRE(rationally_generic(c.a_min));
    }
}

TEST_CASE("a_min is the first representative of an independent integer scan (m <= 6)") {
  for (int m = 3; m <= 6; ++m) {
    long max_total = 0;
    for (const auto& c : enumerate_chambers(m)) {
      long total = 0;
      for (const auto& q : c.a_min.entries()) total += q.get_num().get_si();
      max_total = std::max(max_total, total);
    }
    std::map<std::set<oracle::Set>, std::vector<long>> first;
    for (const auto& [genes, v] : oracle::first_representatives(m, max_total)) first.emplace(genes, v);
    for (const auto& c : enumerate_chambers(m)) {
      auto it = first.find(support::genes_of(c.code));
      REQUIRE(it != first.end());
      CHECK(support::from_longs(it->second) == c.a_min);
    }
  }
}

TEST_CASE("the ⟨{m,p}⟩ representative") {
  for (int m = 3; m <= 7; ++m)
    for (int p = 1; p <= m - 2; ++p) {
      auto v = pair_representative(m, p);
      if (!std::is_sorted(v.begin(), v.end())) continue;  // (3,1) and (4,2)
      CAPTURE(m);
      CAPTURE(p);
      auto c = genetic_code(support::from_longs(v));
      CHECK(c == pair_code(m, p));
      if (p >= 2) CHECK(a_min(c) == support::from_longs(v));
    }
}

TEST_CASE("tiny edge") {
  CHECK(tiny_edge(code("<631,65>")) == code("<7421,761>"));
  CHECK(tiny_edge(code("<3>")) == code("<41>"));
  CHECK(tiny_edge(code("<>", 5)) == code("<>", 6));
  CHECK(tiny_edge_reduce(code("<7421,761>")) == code("<631,65>"));
  CHECK(tiny_edge_reduce(code("<41>")) == code("<3>"));
  CHECK_FALSE(tiny_edge_reduce(code("<64>")));
  CHECK(a_min(tiny_edge(code("<3>"))) == a_min(code("<41>")));
}

TEST_CASE("tiny-edge naturality: code(ε ⊕ a_min(β)) = β⁺ (m - 1 <= 6)") {
  for (int m = 3; m <= 6; ++m)
    for (const auto& beta : enumerate_chambers(m)) {
      auto plus = tiny_edge(beta.code);
      REQUIRE(genetic_code(beta.a_min.with_tiny_edge()) == plus);
      REQUIRE(chamber_index(plus));
      REQUIRE(tiny_edge_reduce(plus) == beta.code);
    }
}

TEST_CASE("wall crossings") {
  CHECK(adjacent_by_pair(code("<5>"), code("<51>")) == set({5, 1}, 5));
  CHECK(adjacent_by_pair(code("<51>"), code("<52>")) == set({5, 2}, 5));
  CHECK_FALSE(adjacent_by_pair(code("<5>"), code("<54>")));
  CHECK(surgery_indices(set({6, 1}, 6), 6, 3) == std::pair{1, 6});
  CHECK(surgery_indices(set({5, 1}, 5), 5, 2) == std::pair{0, 2});
  CHECK(surgery_indices(set({6, 3, 2}, 6), 6, 2) == std::pair{1, 2});
  WallCrossing w{code("<5>"), code("<51>"), set({5, 1}, 5)};
  CHECK(w.surgery_index(3) == 1);
  CHECK(w.cosurgery_index(3) == 4);
  CHECK_THROWS_AS(surgery_indices(set({6}, 6), 6, 3), DomainError);
  // The m = 5 table's central block is a chain of pair crossings.
  auto c = code("<5>");
  for (const char* next : {"<51>", "<52>", "<53>", "<54>"}) {
    auto succ = pair_successor(c);
    REQUIRE(succ);
    CHECK(*succ == code(next));
    CHECK(adjacent_by_pair(c, *succ).has_value());
    c = *succ;
  }
}

TEST_CASE("named chambers") {
  CHECK(exceptional_code(6) == code("<6321>"));
  CHECK(mdot2_code(6) == code("<632>"));
  CHECK(single_gene_code(5) == code("<5>"));
  CHECK(pair_code(6, 3) == code("<63>"));
  CHECK(is_exceptional(code("<41>")));
  CHECK_FALSE(is_exceptional(code("<632>")));
  CHECK(chamber_index(code("<41>")) == 2u);
  CHECK_FALSE(chamber_index(code("<42>")));
}
