#include "polychamber/morse.hpp"

#include "polychamber/chambers.hpp"
#include "polychamber/errors.hpp"
#include "polychamber/topology.hpp"

namespace polychamber {

MorseInventory morse_inventory(const GeneticCode& code, int d) {
  if (d < 2) throw DomainError("Morse inventory needs d >= 2");
  MorseInventory inv;
  inv.m = code.m();
  inv.d = d;
  for (const auto& j : down_closure(code)) {
    int index = (d - 1) * (j.size() - 1);
    inv.points.push_back({j, index});
    inv.euler_v += index % 2 == 0 ? 1 : -1;
    ++inv.histogram[index];
  }
  return inv;
}

ConnectivityReport connectivity(const GeneticCode& code, int d) {
  if (d < 2) throw DomainError("connectivity needs d >= 2");
  if (code.empty()) throw EmptyChamber("the chamber <> has empty chain space");
  ConnectivityReport r;
  r.d = d;
  r.exceptional = is_exceptional(code);
  if (!r.exceptional) {
    r.connected_through = d - 2;
    r.summary = std::to_string(d - 2) + "-connected";
    return r;
  }
  // Ch = (S^{d-1})^{m-3} x S^{d-2}
  if (d == 2) {
    r.components = 2;
    r.connected_through = -1;
    r.summary = "2 components";
  } else {
    r.connected_through = d - 3;
    r.infinite_cyclic_degree = d - 2;
    r.summary = std::to_string(d - 3) + "-connected, pi_" + std::to_string(d - 2) + " = Z";
  }
  return r;
}

CheckResult euler_boundary_check(const GeneticCode& code) {
  auto ch = describe(code, SpaceQuery::chain(2));
  if (ch.contains_unknown()) throw UnknownDescription("no description for " + code.to_string());
  auto chi = euler_char(ch);
  if (!chi) throw UnknownDescription("Euler characteristic unavailable for " + ch.render());
  CheckResult r;
  r.chain_euler = *chi;
  const auto euler_v = morse_inventory(code, 2).euler_v;
  r.expected = code.m() % 2 == 1 ? 2 * euler_v : 0;
  r.passed = r.chain_euler == r.expected;
  r.detail = "chi(Ch^2)=" + std::to_string(r.chain_euler) + (code.m() % 2 == 1 ? " 2*chi(V_2)=" : " expected=") +
             std::to_string(r.expected);
  return r;
}

}  // namespace polychamber
