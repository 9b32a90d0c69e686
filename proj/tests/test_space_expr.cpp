#include "polychamber/errors.hpp"
#include "polychamber/space_expr.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace polychamber;

namespace {

using X = SpaceExpr;

X s(int n) { return X::sphere(n); }
X s(Dim n) { return X::sphere(n); }
const Dim kD1{1, 0};   // d-1
const Dim kD2{1, -1};  // d-2

// Random normalized expression of numeric dimension n (n >= 1).
X random_expr(std::mt19937& rng, int n, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 8 : 3);
  for (;;) {
    switch (pick(rng)) {
      case 0: return s(n);
      case 1: return X::torus(n);
      case 2:
        if (n % 2 == 0) return std::uniform_int_distribution<int>(0, 1)(rng) ? X::cp(n / 2) : X::cpbar(n / 2);
        break;
      case 3:
        if (n == 2) return X::surface(std::uniform_int_distribution<int>(2, 5)(rng));
        break;
      case 4:
        if (n >= 2) {
          int k = std::uniform_int_distribution<int>(1, n - 1)(rng);
          return X::product({random_expr(rng, k, depth - 1), random_expr(rng, n - k, depth - 1)});
        }
        break;
      case 5: {
        auto a = random_expr(rng, n, depth - 1), b = random_expr(rng, n, depth - 1);
        if (a.kind() == Kind::Disjoint || b.kind() == Kind::Disjoint) break;
        return X::conn_sum({a, b});
      }
      case 6: return X::disjoint({random_expr(rng, n, depth - 1), random_expr(rng, n, depth - 1)});
      case 7:
        if (n >= 2) return X::twisted_s2(random_expr(rng, n - 1, depth - 1));
        break;
      case 8:
        if (n >= 2) {
          auto piece = X::product({s(1), random_expr(rng, n - 1, 0)});
          if (piece.kind() == Kind::Disjoint) break;
          return X::conn_multiple(piece, std::uniform_int_distribution<int>(2, 4)(rng));
        }
        break;
    }
  }
}

X random_connected(std::mt19937& rng, int n, int depth) {
  for (;;) {
    auto x = random_expr(rng, n, depth);
    if (x.kind() != Kind::Disjoint && x.kind() != Kind::Point && x.kind() != Kind::Empty) return x;
  }
}

}  // namespace

TEST_CASE("degenerate atoms") {
  CHECK(X::torus(0) == X::point());
  CHECK(X::torus(1) == s(1));
  CHECK(X::surface(0) == s(2));
  CHECK(X::surface(1) == X::torus(2));
  CHECK(X::cp(0) == X::point());
  CHECK(X::cp(1).kind() == Kind::CP);
  CHECK(X().kind() == Kind::Empty);
  CHECK_THROWS_AS(s(-1), Error);
  CHECK_THROWS_AS(X::torus(-1), Error);
}

TEST_CASE("product normal form") {
  CHECK(X::product({s(1), s(1), s(1)}) == X::torus(3));
  CHECK(X::product({s(1), X::torus(2)}) == X::torus(3));
  CHECK(X::product({X::empty(), s(2)}) == X::empty());
  CHECK(X::product({X::point(), s(2)}) == s(2));
  CHECK(X::product({}) == X::point());
  CHECK(X::product({s(2), s(3)}) == X::product({s(3), s(2)}));
  CHECK(X::product({s(2), X::product({s(3), s(4)})}).children().size() == 3);
  auto two = X::product({s(0), X::torus(2)});
  CHECK(two.kind() == Kind::Disjoint);
  CHECK(two.render() == "T^2 u T^2");
  CHECK(X::power(s(2), 3).render() == "(S^2)^3");
  CHECK(X::power(s(kD1), 3).render() == "(S^{d-1})^3");
  CHECK(X::product({s(kD2), X::power(s(kD1), 2)}).render() == "(S^{d-1})^2 x S^{d-2}");
  CHECK(X::product({s(1), X::surface(2)}).render() == "Sigma_2 x S^1");
}

TEST_CASE("connected sum normal form") {
  CHECK(X::conn_sum({X::torus(2), X::torus(2)}) == X::surface(2));
  CHECK(X::conn_sum({X::surface(2), X::torus(2)}) == X::surface(3));
  CHECK(X::conn_sum({s(2), X::torus(2)}) == X::torus(2));
  CHECK(X::conn_sum({s(3), s(3)}) == s(3));
  CHECK(X::conn_multiple(X::cpbar(2), 2).render() == "2(~CP^2)");
  CHECK(X::conn_sum({X::conn_multiple(X::cpbar(3), 5), X::cp(3)}).render() == "CP^3 # 5(~CP^3)");
  CHECK(X::conn_sum({X::cp(2), X::cpbar(2)}) == X::conn_sum({X::cpbar(2), X::cp(2)}));
  CHECK_THROWS_AS(X::conn_sum({s(2), s(3)}), Error);
  CHECK_THROWS_AS(X::conn_sum({X::disjoint({s(2), s(2)}), s(2)}), Error);
  CHECK_THROWS_AS(X::conn_sum({}), Error);
  CHECK(X::conn_sum({X::unknown("x"), s(2)}).is_unknown());
}

TEST_CASE("rendering") {
  CHECK(X::empty().render() == "empty");
  CHECK(X::point().render() == "pt");
  CHECK(s(Dim{2, -1}).render() == "S^{2(d-1)-1}");
  CHECK(s(12).render() == "S^{12}");
  CHECK(X::product({s(kD1), s(kD2)}).render() == "S^{d-1} x S^{d-2}");
  CHECK(X::twisted_s2(X::product({s(2), s(3)})).render() == "S2x_{S1}(S^2 x S^3)");
  CHECK(X::opaque_b3(6, std::nullopt).render() == "B3(6,d)");
  CHECK(X::opaque_b3(6, 2) == X::conn_multiple(X::torus(3), 2));
  CHECK(X::unknown("no rule").render() == "?");
  CHECK(X::conn_sum({X::cp(3), X::cpbar(3)}).render(RenderStyle::Unicode) == "ℂP^3 ♯ ℂP̄^3");
  CHECK(X::disjoint({s(1), s(1)}).render(RenderStyle::Unicode) == "S^1 ⊔ S^1");
  CHECK(to_string(Dim{1, 0}) == "d-1");
  CHECK(to_string(Dim{1, -1}) == "d-2");
  CHECK(to_string(Dim::number(7)) == "7");
}

TEST_CASE("parse") {
  CHECK(X::parse("CP^3 # 5(~CP^3)") == X::conn_sum({X::cp(3), X::conn_multiple(X::cpbar(3), 5)}));
  CHECK(X::parse("S^{d-1} x S^{d-2}") == X::product({s(kD1), s(kD2)}));
  CHECK(X::parse(" T^3  u T^3 ") == X::product({s(0), X::torus(3)}));
  CHECK(X::parse("empty") == X::empty());
  CHECK(X::parse("(S^2 x S^2) # ~CP^2") == X::conn_sum({X::power(s(2), 2), X::cpbar(2)}));
  CHECK(X::parse("?").is_unknown());
  CHECK_THROWS_AS(X::parse("S^"), ParseError);
  CHECK_THROWS_AS(X::parse("S^2 x"), ParseError);
  CHECK_THROWS_AS(X::parse("(S^2"), ParseError);
  CHECK_THROWS_AS(X::parse("Q^2"), ParseError);
  CHECK_THROWS_AS(X::parse("S^2 # S^3"), Error);
}

TEST_CASE("substituting d") {
  auto ch = X::product({s(kD1), s(Dim{2, -1})});
  CHECK(ch.symbolic());
  CHECK(ch.dimension() == Dim{3, -1});
  CHECK(ch.at(2) == X::product({s(1), s(1)}));
  CHECK(ch.at(2).render() == "T^2");
  CHECK(ch.at(3).render() == "S^2 x S^3");
  CHECK(X::product({X::power(s(kD1), 2), s(kD2)}).at(2).render() == "T^2 u T^2");
  CHECK(X::opaque_b3(6, std::nullopt).at(2).render() == "2(T^3)");
  CHECK(X::opaque_b3(6, std::nullopt).at(3) == X::opaque_b3(6, 3));
  CHECK_THROWS_AS(X::conn_multiple(X::product({s(kD1), s(kD2)}), 2).at(2), Error);
}

TEST_CASE("Euler characteristic") {
  CHECK(euler_char(X::surface(4)) == -6);
  CHECK(euler_char(X::conn_sum({X::cp(3), X::conn_multiple(X::cpbar(3), 5)})) == 14);
  CHECK(euler_char(X::product({s(0), X::torus(3)})) == 0);
  CHECK(euler_char(X::power(s(2), 3)) == 8);
  CHECK(euler_char(X::empty()) == 0);
  CHECK_FALSE(euler_char(s(kD1)).has_value());
  CHECK_FALSE(euler_char(X::unknown("x")).has_value());
  CHECK_FALSE(euler_char(X::twisted_s2(s(3))).has_value());
  CHECK(euler_char(X::twisted_s2(s(3), 2)) == 4);
  // B3 at d = 3: Euler characteristic of the surgered (S^2)^3 × S^1 boundary piece.
  CHECK(euler_char(X::opaque_b3(6, 3)).has_value());
  CHECK(euler_char(X::opaque_b3(6, 2)) == 0);
}

TEST_CASE("known diffeomorphisms") {
  auto hirzebruch = X::conn_sum({X::cp(2), X::cpbar(2)});
  auto forms = known_diffeos(X::twisted_s2(s(3)));
  CHECK(std::find(forms.begin(), forms.end(), hirzebruch) != forms.end());
  auto x = X::conn_sum({X::power(s(2), 2), X::cpbar(2)});
  auto y = X::conn_sum({X::cp(2), X::conn_multiple(X::cpbar(2), 2)});
  auto fx = known_diffeos(x);
  CHECK(std::find(fx.begin(), fx.end(), y) != fx.end());
  CHECK(equivalent_up_to_known_diffeos(x, y));
  CHECK(equivalent_up_to_known_diffeos(y, x));
  CHECK(known_diffeos(s(4)) == std::vector<X>{s(4)});
  CHECK(equivalent_up_to_known_diffeos(X::twisted_s2(X::product({s(1), s(3)})), X::product({s(2), s(3)})));
  CHECK_FALSE(equivalent_up_to_known_diffeos(X::cp(2), X::power(s(2), 2)));
}

TEST_CASE("normal-form properties on random expressions") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    auto x = random_expr(rng, n, 3);
    CAPTURE(x.render());
    REQUIRE(x.dimension() == Dim::number(n));
    REQUIRE(normalize(x) == x);
    REQUIRE(normalize(normalize(x)) == normalize(x));
    REQUIRE(X::parse(x.render()) == x);
    REQUIRE(X::parse(x.render()).render() == x.render());
    REQUIRE(compare(x, x) == 0);
    REQUIRE_NOTHROW(x.render(RenderStyle::Unicode));
    auto y = random_expr(rng, n, 3);
    REQUIRE(compare(x, y) == -compare(y, x));
    REQUIRE((x == y) == (x.render() == y.render()));
  }
}

TEST_CASE("connected sum absorbs spheres and follows the Euler rule") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    auto x = random_connected(rng, n, 2);
    auto y = random_connected(rng, n, 2);
    CAPTURE(x.render());
    CAPTURE(y.render());
    REQUIRE(X::conn_sum({x, s(n)}) == x);
    REQUIRE(X::conn_sum({s(n), x}) == x);
    REQUIRE(X::conn_sum({x, y}) == X::conn_sum({y, x}));
    auto ex = euler_char(x), ey = euler_char(y);
    if (ex && ey) REQUIRE(euler_char(X::conn_sum({x, y})) == oracle::chi_connected_sum(*ex, *ey, n));
  }
}

TEST_CASE("symbolic expressions substitute consistently") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int a = std::uniform_int_distribution<int>(2, 4)(rng);  // a = 1 would sum S^1 x S^0 at d = 2
    auto x = X::product({X::power(s(kD1), a), s(kD2)});
    auto y = X::conn_multiple(X::product({s(kD1), s(Dim{a, -1})}), std::uniform_int_distribution<int>(1, 4)(rng));
    for (const auto& e : {x, y}) {
      REQUIRE(X::parse(e.render()) == e);
      for (int d = 2; d <= 5; ++d) {
        auto at = e.at(d);
        REQUIRE(at.dimension() == Dim::number(e.dimension().at(d)));
        REQUIRE(X::parse(at.render()) == at);
      }
    }
  }
}
