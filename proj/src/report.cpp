#include "polychamber/report.hpp"

#include "polychamber/errors.hpp"
#include "polychamber/serialize.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

namespace polychamber {

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "json") return Format::Json;
  if (name == "tsv") return Format::Tsv;
  throw ParseError("unknown format '" + std::string(name) + "' (text, json, tsv)");
}

Target parse_target(std::string_view name) {
  if (name == "chain") return Target::Chain;
  if (name == "planar") return Target::Planar;
  if (name == "spatial") return Target::Spatial;
  throw ParseError("unknown target '" + std::string(name) + "' (chain, planar, spatial)");
}

std::optional<std::size_t> expected_chamber_count(int m) {
  static const std::map<int, std::size_t> counts{{3, 2}, {4, 3}, {5, 7}, {6, 21}, {7, 135}};
  auto it = counts.find(m);
  return it == counts.end() ? std::nullopt : std::optional(it->second);
}

std::optional<std::size_t> expected_described_count(int m) {
  static const std::map<int, std::size_t> counts{{3, 2}, {4, 3}, {5, 7}, {6, 21}, {7, 49}};
  auto it = counts.find(m);
  return it == counts.end() ? std::nullopt : std::optional(it->second);
}

std::string wall_string(const SubsetMask& j) {
  std::string out = "{";
  auto el = j.elements_desc();
  std::reverse(el.begin(), el.end());
  for (std::size_t i = 0; i < el.size(); ++i) out += (i ? "," : "") + std::to_string(el[i]);
  return out + "}";
}

namespace {

std::string d_label(std::optional<int> d) { return d ? std::to_string(*d) : "d"; }

Json d_json(std::optional<int> d) { return d ? Json(*d) : Json("symbolic"); }

Json lengths_json(const LengthVector& a) {
  Json out = Json::array();
  for (const auto& q : a.entries()) out.push_back(q.get_str());
  return out;
}

struct TableRow {
  const Chamber* chamber;
  const ChamberDescription* row;
  SpaceExpr planar, spatial, chain;
};

std::vector<TableRow> table_rows(int m, std::optional<int> d, DescribeOptions options) {
  const auto& table = description_table(m, options);
  const auto& chambers = enumerate_chambers(m, {options.allow_large_m});
  std::vector<TableRow> rows;
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    const auto& r = table.rows[i];
    SpaceExpr chain = d ? r.chain.at(*d) : r.chain;
    SpaceExpr planar = r.chain.is_unknown() ? r.chain : r.chain.at(2);
    rows.push_back({&chambers[i], &r, planar, r.spatial, chain});
  }
  return rows;
}

}  // namespace

std::string render_table(int m, std::optional<int> d, Format format, DescribeOptions options) {
  auto rows = table_rows(m, d, options);
  if (format == Format::Json) {
    Json out = {{"m", m}, {"d", d_json(d)}};
    Json list = Json::array();
    for (const auto& r : rows) {
      Json row = code_to_json(r.chamber->code);
      row["code"] = r.chamber->code.to_string();
      row["aMin"] = chamber_to_json(*r.chamber)["aMin"];
      row["N2"] = expr_to_json(r.planar);
      row["N3"] = expr_to_json(r.spatial);
      row["Ch"] = expr_to_json(r.chain);
      row["rule"] = rule_name(r.row->derivation.rule);
      list.push_back(row);
    }
    out["rows"] = list;
    return out.dump(2) + "\n";
  }
  std::string out;
  if (format == Format::Tsv) out += "code\taMin\tN2\tN3\tCh\n";
  for (const auto& r : rows) {
    if (format == Format::Tsv) {
      out += r.chamber->code.to_string() + "\t" + r.chamber->a_min.to_string() + "\t" + r.planar.render() + "\t" +
             r.spatial.render() + "\t" + r.chain.render() + "\n";
    } else {
      out += r.chamber->code.to_string() + " " + r.chamber->a_min.to_string() + " " + r.planar.render() + " / " +
             r.spatial.render() + " / " + r.chain.render() + "\n";
    }
  }
  return out;
}

std::string render_enumeration(int m, Format format, EnumerationOptions options) {
  const auto& chambers = enumerate_chambers(m, options);
  if (format == Format::Json) {
    Json list = Json::array();
    for (const auto& c : chambers) list.push_back(chamber_to_json(c));
    return Json{{"m", m}, {"count", chambers.size()}, {"chambers", list}}.dump(2) + "\n";
  }
  std::string out;
  if (format == Format::Tsv) out += "code\tm\taMin\twitness\n";
  for (const auto& c : chambers) {
    if (format == Format::Tsv)
      out += c.code.to_string() + "\t" + std::to_string(m) + "\t" + c.a_min.to_csv() + "\t" + c.witness.to_csv() + "\n";
    else
      out += chamber_record(c) + "\n";
  }
  return out;
}

// ---- classify ---------------------------------------------------------------

ClassifyReport classify(const LengthVector& lengths, ClassifyOptions options) {
  bool reordered = false;
  LengthVector sorted = lengths.sorted(&reordered);
  ClassifyReport r(lengths, sorted);
  r.reordered = reordered;
  r.d = options.d;
  if (reordered)
    r.notes.push_back("input re-sorted to " + sorted.to_string() +
                      "; chain spaces depend on which edge is last, the largest is used");
  if (auto wall = find_wall(sorted)) {
    r.wall = wall;
    return r;
  }
  const int m = sorted.m();
  r.code = genetic_code(sorted);

  if (m <= 7 || options.allow_large_m)
    r.a_min = a_min(*r.code);
  else
    r.notes.push_back("a_min skipped for m > 7 (use the large-m override)");

  std::vector<int> ds = options.d ? std::vector<int>{*options.d} : std::vector<int>{2, 3};
  for (int d : ds) {
    r.inventories.push_back(morse_inventory(*r.code, d));
    try {
      r.connectivity.push_back(connectivity(*r.code, d));
    } catch (const EmptyChamber&) {
      if (d == ds.front()) r.notes.push_back("chain space is empty");
    }
  }

  if (m > kMaxDescriptionEdges && !options.allow_large_m) {
    r.notes.push_back("descriptions are limited to m <= " + std::to_string(kMaxDescriptionEdges));
    return r;
  }
  DescribeOptions dopt{options.allow_large_m};
  auto want = [&](Target t) { return !options.target || *options.target == t; };
  if (want(Target::Chain)) r.chain = describe(*r.code, SpaceQuery::chain(options.d), dopt);
  if (want(Target::Planar)) r.planar = describe(*r.code, SpaceQuery::planar(), dopt);
  if (want(Target::Spatial)) r.spatial = describe(*r.code, SpaceQuery::spatial(), dopt);
  return r;
}

namespace {

std::string histogram_string(const MorseInventory& inv) {
  std::string out = "{";
  bool first = true;
  for (const auto& [index, count] : inv.histogram) {
    out += (first ? "" : ", ") + std::to_string(index) + ":" + std::to_string(count);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string render_classify(const ClassifyReport& r, Format format) {
  if (format == Format::Json) {
    Json out;
    out["input"] = lengths_json(r.input);
    out["sorted"] = lengths_json(r.sorted);
    out["reordered"] = r.reordered;
    out["generic"] = r.generic();
    out["wall"] = r.wall ? subset_to_json(*r.wall) : Json(nullptr);
    if (r.code) {
      out["code"] = code_to_json(*r.code);
      out["codeString"] = r.code->to_string();
      Json a = nullptr;
      if (r.a_min) {
        a = Json::array();
        for (const auto& q : r.a_min->entries()) a.push_back(q.get_num().get_si());
      }
      out["aMin"] = a;
      out["d"] = d_json(r.d);
      Json inv = Json::array(), conn = Json::array();
      for (const auto& i : r.inventories) inv.push_back(inventory_to_json(i));
      for (const auto& c : r.connectivity) conn.push_back(connectivity_to_json(c));
      out["morse"] = inv;
      out["connectivity"] = conn;
      Json desc = Json::object();
      if (r.chain) desc["Ch"] = expr_to_json(*r.chain);
      if (r.planar) desc["N2"] = expr_to_json(*r.planar);
      if (r.spatial) desc["N3"] = expr_to_json(*r.spatial);
      out["descriptions"] = desc;
    }
    out["notes"] = r.notes;
    return out.dump(2) + "\n";
  }

  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("input", r.input.to_csv());
  if (r.reordered) kv.emplace_back("sorted", r.sorted.to_csv());
  if (!r.generic()) {
    kv.emplace_back("generic", "no");
    kv.emplace_back("wall", wall_string(*r.wall));
  } else {
    kv.emplace_back("generic", "yes");
    kv.emplace_back("code", r.code->to_string());
    if (r.a_min) kv.emplace_back("a_min", r.a_min->to_string());
    for (const auto& inv : r.inventories) {
      std::string key = "morse d=" + std::to_string(inv.d);
      kv.emplace_back(key, std::to_string(inv.points.size()) + " critical points, indices " + histogram_string(inv) +
                               ", chi(V)=" + std::to_string(inv.euler_v));
    }
    for (const auto& c : r.connectivity) kv.emplace_back("connectivity d=" + std::to_string(c.d), c.summary);
    if (r.chain) kv.emplace_back("Ch^" + d_label(r.d), r.chain->render());
    if (r.planar) kv.emplace_back("N^2", r.planar->render());
    if (r.spatial) kv.emplace_back("N^3", r.spatial->render());
  }
  for (const auto& n : r.notes) kv.emplace_back("note", n);

  std::string out;
  for (const auto& [k, v] : kv) out += format == Format::Tsv ? k + "\t" + v + "\n" : k + ": " + v + "\n";
  return out;
}

// ---- verify -----------------------------------------------------------------

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

unsigned worker_count() {
  if (const char* env = std::getenv("POLYCHAMBER_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

constexpr std::size_t kMaxFailuresListed = 5;

struct Tally {
  SuiteResult& s;
  void check(bool ok, const std::function<std::string()>& what) {
    ++s.checked;
    if (ok) return;
    ++s.failed;
    if (s.failures.size() < kMaxFailuresListed) s.failures.push_back(what());
  }
  void skip() { ++s.skipped; }
};

void suite_counts(int m, SuiteResult& s) {
  Tally t{s};
  const auto& chambers = enumerate_chambers(m);
  auto expected = expected_chamber_count(m);
  t.check(expected && chambers.size() == *expected, [&] {
    return "chambers " + std::to_string(chambers.size()) + ", expected " +
           (expected ? std::to_string(*expected) : std::string("?"));
  });
  for (std::size_t i = 0; i < chambers.size(); ++i) {
    const auto& code = chambers[i].code;
    t.check(chamber_index(code) == i && realizable(code).has_value(),
            [&] { return code.to_string() + ": index or realizability mismatch"; });
  }
}

void suite_coverage(int m, SuiteResult& s) {
  Tally t{s};
  auto expected = expected_described_count(m);
  for (auto q : {SpaceQuery::chain(), SpaceQuery::planar(), SpaceQuery::spatial()}) {
    auto [described, total] = coverage(m, q);
    t.check(expected && described == *expected, [&, described = described, total = total] {
      return std::string(q.target == Target::Chain ? "chain" : q.target == Target::Planar ? "planar" : "spatial") +
             " described " + std::to_string(described) + "/" + std::to_string(total) + ", expected " +
             (expected ? std::to_string(*expected) : std::string("?"));
    });
  }
}

void suite_round_trip(int m, SuiteResult& s) {
  Tally t{s};
  for (const auto& c : enumerate_chambers(m)) {
    const auto name = c.code.to_string();
    for (auto tb : {TieBreak::CountThenIndex, TieBreak::IndexOnly}) {
      t.check(genetic_code(c.a_min, tb) == c.code, [&] { return name + ": code(a_min) differs"; });
      t.check(genetic_code(c.witness, tb) == c.code, [&] { return name + ": code(witness) differs"; });
    }
    t.check(c.witness.tiny_mask() == 0 && c.witness.is_sorted(), [&] { return name + ": bad witness"; });
    auto rec = parse_chamber_record(chamber_record(c));
    t.check(rec.code == c.code && rec.a_min == c.a_min, [&] { return name + ": record round-trip"; });
    auto back = chamber_from_json(Json::parse(chamber_to_json(c).dump()));
    t.check(back.code == c.code && back.a_min == c.a_min && back.witness == c.witness,
            [&] { return name + ": JSON round-trip"; });
    for (int d : {2, 3}) {
      auto inv = morse_inventory(c.code, d);
      auto again = inventory_from_json(Json::parse(inventory_to_json(inv).dump()));
      t.check(inventory_to_json(again) == inventory_to_json(inv), [&] { return name + ": inventory round-trip"; });
    }
    if (m <= kMaxDescriptionEdges) {
      for (auto q : {SpaceQuery::chain(), SpaceQuery::chain(3), SpaceQuery::planar(), SpaceQuery::spatial()}) {
        auto x = describe(c.code, q);
        if (x.contains_unknown()) {
          t.skip();
          continue;
        }
        t.check(SpaceExpr::parse(x.render()) == x && normalize(x) == x,
                [&] { return name + ": expression round-trip " + x.render(); });
      }
    }
  }
}

void suite_tiny_edge(int m, SuiteResult& s) {
  Tally t{s};
  if (m < 4) return;
  for (const auto& beta : enumerate_chambers(m - 1)) {
    const auto name = beta.code.to_string();
    auto plus = tiny_edge(beta.code);
    t.check(genetic_code(beta.a_min.with_tiny_edge()) == plus, [&] { return name + ": code(eps+a_min) != beta+"; });
    t.check(tiny_edge_reduce(plus) == beta.code, [&] { return name + ": reduce(beta+) != beta"; });
    t.check(chamber_index(plus).has_value(), [&] { return name + ": beta+ is not a chamber"; });
  }
}

void suite_euler(int m, SuiteResult& s) {
  Tally t{s};
  for (const auto& c : enumerate_chambers(m)) {
    if (describe(c.code, SpaceQuery::chain()).contains_unknown()) {
      t.skip();
      continue;
    }
    auto r = euler_boundary_check(c.code);
    t.check(r.passed, [&] { return c.code.to_string() + ": " + r.detail; });
  }
  for (const auto& check : description_table(m).checks) {
    if (check.kind != EngineCheck::Kind::ConnectedSumEuler) continue;
    t.check(check.passed, [&] { return check.code.to_string() + ": " + check.detail; });
  }
}

void suite_path_independence(int m, SuiteResult& s) {
  Tally t{s};
  for (const auto& check : description_table(m).checks) {
    if (check.kind != EngineCheck::Kind::PathIndependence) continue;
    if (check.skipped) {
      t.skip();
      continue;
    }
    t.check(check.passed, [&] { return check.code.to_string() + ": " + check.detail; });
  }
}

// Nondecreasing integer vectors of length m and total `total`, lexicographically.
void for_each_vector(int m, std::int64_t total, const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(m));
  std::function<void(int, std::int64_t, std::int64_t)> rec = [&](int i, std::int64_t lo, std::int64_t left) {
    if (i == m - 1) {
      if (left >= lo) {
        v[static_cast<std::size_t>(i)] = left;
        f(v);
      }
      return;
    }
    const int slots = m - i;
    for (std::int64_t x = lo; x * slots <= left; ++x) {
      v[static_cast<std::size_t>(i)] = x;
      rec(i + 1, x, left - x);
    }
  };
  rec(0, 0, total);
}

void suite_minimality(int m, SuiteResult& s) {
  Tally t{s};
  if (m > 6) {
    t.skip();
    return;
  }
  const auto& chambers = enumerate_chambers(m);
  std::int64_t max_total = 0;
  for (const auto& c : chambers) {
    std::int64_t total = 0;
    for (const auto& q : c.a_min.entries()) total += q.get_num().get_si();
    max_total = std::max(max_total, total);
  }
  // First admissible vector per code, scanning by total then lexicographically.
  std::map<std::string, std::vector<std::int64_t>> first;
  for (std::int64_t total = 0; total <= max_total; ++total) {
    for_each_vector(m, total, [&](const std::vector<std::int64_t>& v) {
      auto a = LengthVector::from_integers(v);
      if (!rationally_generic(a)) return;
      auto key = genetic_code(a).to_string();
      first.try_emplace(key, v);
    });
  }
  for (const auto& c : chambers) {
    auto it = first.find(c.code.to_string());
    t.check(it != first.end() && LengthVector::from_integers(it->second) == c.a_min, [&] {
      return c.code.to_string() + ": a_min " + c.a_min.to_string() + ", brute force " +
             (it == first.end() ? std::string("none") : LengthVector::from_integers(it->second).to_string());
    });
  }
  t.check(first.size() == chambers.size(), [&] { return "brute force reached " + std::to_string(first.size()) + " codes"; });
}

void suite_dimension(int m, SuiteResult& s) {
  Tally t{s};
  for (const auto& row : description_table(m).rows) {
    if (row.code.empty()) continue;
    if (row.chain.contains_unknown()) {
      t.skip();
      continue;
    }
    const auto name = row.code.to_string();
    t.check(row.chain.dimension() == expected_dimension(m, SpaceQuery::chain()),
            [&] { return name + ": dim Ch " + to_string(row.chain.dimension()); });
    t.check(row.chain.at(2).dimension() == expected_dimension(m, SpaceQuery::planar()),
            [&] { return name + ": dim N^2 " + to_string(row.chain.at(2).dimension()); });
    t.check(row.spatial.dimension() == expected_dimension(m, SpaceQuery::spatial()),
            [&] { return name + ": dim N^3 " + to_string(row.spatial.dimension()); });
  }
}

bool disconnected(const SpaceExpr& x) {
  return x.kind() == Kind::Disjoint || (x.kind() == Kind::Sphere && x.sphere_dim() == Dim::number(0));
}

void suite_structural(int m, SuiteResult& s) {
  Tally t{s};
  const auto& chambers = enumerate_chambers(m);
  std::size_t disconnected_ch = 0, disconnected_planar = 0;
  for (const auto& c : chambers) {
    if (c.code.empty()) continue;
    if (connectivity(c.code, 2).components > 1) ++disconnected_ch;
    if (disconnected(describe(c.code, SpaceQuery::planar()))) ++disconnected_planar;
  }
  t.check(disconnected_ch == 1, [&] { return std::to_string(disconnected_ch) + " chambers with disconnected Ch^2"; });
  t.check(disconnected_planar == 1,
          [&] { return std::to_string(disconnected_planar) + " disconnected planar descriptions"; });
  if (m >= 6) {
    // Besides the exceptional chamber, S_m(α) ∋ A = {m,m-3,...,2} exactly for
    // ⟨A⟩, ⟨A,{m,m-2}⟩ and ⟨A,{m,m-1}⟩.
    const auto a = mdot2_code(m).genes().front();
    std::vector<GeneticCode> expected;
    for (int p : {0, m - 2, m - 1}) {
      std::vector<SubsetMask> genes{a};
      if (p) genes.push_back(pair_code(m, p).genes().front());
      expected.emplace_back(m, genes);
    }
    std::vector<GeneticCode> found;
    for (const auto& c : chambers) {
      if (is_exceptional(c.code)) continue;
      auto closure = down_closure(c.code);
      if (std::find(closure.begin(), closure.end(), a) != closure.end()) found.push_back(c.code);
    }
    auto same = found.size() == expected.size() &&
                std::all_of(expected.begin(), expected.end(), [&](const GeneticCode& e) {
                  return std::find(found.begin(), found.end(), e) != found.end();
                });
    t.check(same, [&] {
      std::string list;
      for (const auto& f : found) list += " " + f.to_string();
      return "non-exceptional chambers containing " + wall_string(a) + ":" + list;
    });
  }
}

}  // namespace

VerifyReport verify(int m, unsigned threads) {
  if (m < 3 || m > kMaxDescriptionEdges) throw DomainError("verify needs 3 <= m <= 7");
  // Fill the shared caches before fanning out.
  description_table(m);
  VerifyReport report;
  report.m = m;
  report.chambers = enumerate_chambers(m).size();
  report.described = coverage(m, SpaceQuery::chain()).first;

  using Suite = void (*)(int, SuiteResult&);
  const std::vector<std::pair<const char*, Suite>> suites{
      {"counts", suite_counts},
      {"coverage", suite_coverage},
      {"round-trip", suite_round_trip},
      {"tiny-edge", suite_tiny_edge},
      {"euler", suite_euler},
      {"minimality", suite_minimality},
      {"path-independence", suite_path_independence},
      {"dimension", suite_dimension},
      {"structural", suite_structural},
  };
  report.suites.resize(suites.size());
  for (std::size_t i = 0; i < suites.size(); ++i) report.suites[i].name = suites[i].first;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < suites.size();) {
      auto& result = report.suites[i];
      try {
        suites[i].second(m, result);
      } catch (const std::exception& e) {
        ++result.failed;
        result.failures.push_back(std::string("exception: ") + e.what());
      }
    }
  };
  const unsigned n = std::clamp(threads, 1u, static_cast<unsigned>(suites.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return report;
}

std::string render_verify(const VerifyReport& r, Format format) {
  if (format == Format::Json) {
    Json suites = Json::array();
    for (const auto& s : r.suites)
      suites.push_back({{"name", s.name},
                        {"passed", s.passed()},
                        {"checked", s.checked},
                        {"failed", s.failed},
                        {"skipped", s.skipped},
                        {"failures", s.failures}});
    return Json{{"m", r.m},
                {"chambers", r.chambers},
                {"described", r.described},
                {"passed", r.passed()},
                {"suites", suites}}
               .dump(2) +
           "\n";
  }
  std::ostringstream out;
  if (format == Format::Tsv) {
    out << "suite\tstatus\tchecked\tfailed\tskipped\n";
    for (const auto& s : r.suites)
      out << s.name << '\t' << (s.passed() ? "pass" : "FAIL") << '\t' << s.checked << '\t' << s.failed << '\t'
          << s.skipped << '\n';
    return out.str();
  }
  out << "verify m=" << r.m << ": " << r.chambers << " chambers, " << r.described << " described\n";
  for (const auto& s : r.suites) {
    out << "  " << (s.passed() ? "pass " : "FAIL ") << s.name << ": " << s.checked << " checked";
    if (s.failed) out << ", " << s.failed << " failed";
    if (s.skipped) out << ", " << s.skipped << " skipped";
    out << '\n';
    for (const auto& f : s.failures) out << "      " << f << '\n';
  }
  out << (r.passed() ? "all suites passed\n" : "some suites failed\n");
  return out.str();
}

}  // namespace polychamber
