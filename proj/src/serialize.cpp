#include "polychamber/serialize.hpp"

#include "polychamber/errors.hpp"

#include <sstream>

namespace polychamber {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

mpq_class rational_from(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  mpq_class q;
  if (!j.is_string() || q.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad rational " + j.dump());
  q.canonicalize();
  return q;
}

}  // namespace

std::string chamber_record(const Chamber& chamber) {
  return chamber.code.to_string() + " " + std::to_string(chamber.code.m()) + " " + chamber.a_min.to_csv();
}

ChamberRecord parse_chamber_record(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string code, csv;
  int m = 0;
  if (!(in >> code >> m >> csv)) throw ParseError("chamber record needs: code m a_min");
  std::string rest;
  if (in >> rest) throw ParseError("trailing text in chamber record");
  auto a = LengthVector::parse(csv);
  if (a.m() != m) throw ParseError("a_min length does not match m");
  return {GeneticCode::parse(code, m), std::move(a)};
}

Json subset_to_json(const SubsetMask& j) { return Json(j.elements_desc()); }

SubsetMask subset_from_json(const Json& j, int m) {
  return guarded("subset", [&] { return SubsetMask::from_elements(j.get<std::vector<int>>(), m); });
}

Json code_to_json(const GeneticCode& code) {
  Json genes = Json::array();
  for (const auto& g : code.genes()) genes.push_back(subset_to_json(g));
  return {{"m", code.m()}, {"genes", genes}};
}

GeneticCode code_from_json(const Json& j) {
  return guarded("code", [&] {
    int m = j.at("m").get<int>();
    std::vector<SubsetMask> genes;
    for (const auto& g : j.at("genes")) genes.push_back(subset_from_json(g, m));
    return GeneticCode(m, std::move(genes));
  });
}

Json chamber_to_json(const Chamber& chamber) {
  Json out = code_to_json(chamber.code);
  Json a = Json::array(), w = Json::array();
  for (const auto& q : chamber.a_min.entries()) a.push_back(q.get_num().get_si());
  for (const auto& q : chamber.witness.entries()) w.push_back(rational_string(q));
  out["aMin"] = a;
  out["witness"] = w;
  return out;
}

Chamber chamber_from_json(const Json& j) {
  return guarded("chamber", [&] {
    GeneticCode code = code_from_json(j);
    std::vector<mpq_class> a, w;
    for (const auto& x : j.at("aMin")) a.push_back(rational_from(x));
    for (const auto& x : j.at("witness")) w.push_back(rational_from(x));
    return Chamber{std::move(code), LengthVector(std::move(a)), LengthVector(std::move(w))};
  });
}

Json inventory_to_json(const MorseInventory& inv) {
  Json points = Json::array();
  for (const auto& p : inv.points) points.push_back({{"J", subset_to_json(p.j)}, {"index", p.index}});
  Json hist = Json::object();
  for (const auto& [index, count] : inv.histogram) hist[std::to_string(index)] = count;
  return {{"m", inv.m}, {"d", inv.d}, {"points", points}, {"eulerV", inv.euler_v}, {"histogram", hist}};
}

MorseInventory inventory_from_json(const Json& j) {
  return guarded("inventory", [&] {
    MorseInventory inv;
    inv.m = j.at("m").get<int>();
    inv.d = j.at("d").get<int>();
    for (const auto& p : j.at("points"))
      inv.points.push_back({subset_from_json(p.at("J"), inv.m), p.at("index").get<int>()});
    inv.euler_v = j.at("eulerV").get<std::int64_t>();
    for (const auto& [key, count] : j.at("histogram").items()) inv.histogram[std::stoi(key)] = count.get<int>();
    return inv;
  });
}

Json connectivity_to_json(const ConnectivityReport& r) {
  Json out = {{"d", r.d},
              {"exceptional", r.exceptional},
              {"components", r.components},
              {"connectedThrough", r.connected_through}};
  out["infiniteCyclicDegree"] = r.infinite_cyclic_degree ? Json(*r.infinite_cyclic_degree) : Json(nullptr);
  out["summary"] = r.summary;
  return out;
}

Json expr_to_json(const SpaceExpr& x) { return x.render(); }

SpaceExpr expr_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("expression must be a string");
  return SpaceExpr::parse(j.get<std::string>());
}

}  // namespace polychamber
