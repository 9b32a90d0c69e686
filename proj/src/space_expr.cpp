#include "polychamber/space_expr.hpp"

#include "polychamber/errors.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace polychamber {

struct SpaceExpr::Node {
  Kind kind = Kind::Empty;
  Dim sphere_dim;
  int degree = 0;
  std::vector<SpaceExpr> children;
  std::optional<std::int64_t> quotient_euler;
  int opaque_m = 0;
  std::optional<int> opaque_d;
  std::string reason;
  Dim dimension;
};

namespace {

using NodePtr = std::shared_ptr<const SpaceExpr::Node>;

// Factor order inside products; also the tie-break rank inside connected sums.
int kind_rank(Kind k) {
  switch (k) {
    case Kind::Surface: return 0;
    case Kind::Torus: return 1;
    case Kind::Sphere: return 2;
    case Kind::CP: return 3;
    case Kind::CPbar: return 4;
    case Kind::ConnSum: return 5;
    case Kind::TwistedS2: return 6;
    case Kind::OpaqueB3: return 7;
    default: return 8 + static_cast<int>(k);
  }
}

// Rough size of a summand; larger summands are written first.
int complexity(const SpaceExpr& x) {
  switch (x.kind()) {
    case Kind::Sphere: return 1;
    case Kind::Torus: return x.degree();
    case Kind::Surface: return 2 * x.degree();
    case Kind::CP:
    case Kind::CPbar: return 1;
    case Kind::TwistedS2: return 1 + complexity(x.inner());
    case Kind::OpaqueB3: return x.opaque_m() - 2;
    case Kind::Product:
    case Kind::ConnSum:
    case Kind::Disjoint: {
      int total = 0;
      for (const auto& c : x.children()) total += complexity(c);
      return total;
    }
    default: return 0;
  }
}

std::tuple<int, int, int> sphere_key(const SpaceExpr& x) {
  if (x.kind() != Kind::Sphere) return {0, 0, 0};
  Dim n = x.sphere_dim();
  if (!n.symbolic()) return {0, n.cst, 0};
  return {1, n.coef, -n.cst};
}

void sort_factors(std::vector<SpaceExpr>& factors) {
  auto multiplicity = [&](const SpaceExpr& f) {
    return std::count(factors.begin(), factors.end(), f);
  };
  std::vector<std::pair<long, SpaceExpr>> keyed;
  for (const auto& f : factors) keyed.emplace_back(multiplicity(f), f);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    int ra = kind_rank(a.second.kind()), rb = kind_rank(b.second.kind());
    if (ra != rb) return ra < rb;
    if (a.first != b.first) return a.first > b.first;
    auto ka = sphere_key(a.second), kb = sphere_key(b.second);
    if (ka != kb) return ka < kb;
    return compare(a.second, b.second) < 0;
  });
  for (std::size_t i = 0; i < factors.size(); ++i) factors[i] = keyed[i].second;
}

void sort_summands(std::vector<SpaceExpr>& summands) {
  std::stable_sort(summands.begin(), summands.end(), [](const SpaceExpr& a, const SpaceExpr& b) {
    int ca = complexity(a), cb = complexity(b);
    if (ca != cb) return ca > cb;
    int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
    if (ra != rb) return ra < rb;
    return compare(a, b) < 0;
  });
}

std::optional<std::int64_t> sphere_euler(Dim n) {
  if (n.symbolic()) return std::nullopt;
  return n.cst % 2 == 0 ? 2 : 0;
}

std::int64_t sphere_euler(int n) { return n % 2 == 0 ? 2 : 0; }

}  // namespace

std::string to_string(Dim n) {
  auto signed_tail = [](int c) {
    if (c == 0) return std::string{};
    return (c < 0 ? "-" : "+") + std::to_string(c < 0 ? -c : c);
  };
  if (n.coef == 0) return std::to_string(n.cst);
  if (n.coef == 1) return "d" + signed_tail(n.cst - 1);
  return std::to_string(n.coef) + "(d-1)" + signed_tail(n.cst);
}

// ------------------------------------------------------------------ factories

SpaceExpr::SpaceExpr() : node_(std::make_shared<Node>()) {}

SpaceExpr SpaceExpr::empty() { return SpaceExpr(); }

SpaceExpr SpaceExpr::point() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Point;
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::sphere(Dim dim) {
  if (!dim.symbolic() && dim.cst < 0) throw Error("sphere of negative dimension");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sphere;
  n->sphere_dim = dim;
  n->dimension = dim;
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::torus(int k) {
  if (k < 0) throw Error("torus of negative dimension");
  if (k == 0) return point();
  if (k == 1) return sphere(1);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Torus;
  n->degree = k;
  n->dimension = Dim::number(k);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::surface(int genus) {
  if (genus < 0) throw Error("negative genus");
  if (genus == 0) return sphere(2);
  if (genus == 1) return torus(2);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Surface;
  n->degree = genus;
  n->dimension = Dim::number(2);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::cp(int k) {
  if (k < 0) throw Error("projective space of negative dimension");
  if (k == 0) return point();
  auto n = std::make_shared<Node>();
  n->kind = Kind::CP;
  n->degree = k;
  n->dimension = Dim::number(2 * k);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::cpbar(int k) {
  if (k < 0) throw Error("projective space of negative dimension");
  if (k == 0) return point();
  auto n = std::make_shared<Node>();
  n->kind = Kind::CPbar;
  n->degree = k;
  n->dimension = Dim::number(2 * k);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::product(std::vector<SpaceExpr> factors) {
  std::vector<SpaceExpr> flat;
  for (auto& f : factors) {
    if (f.kind() == Kind::Product) {
      for (const auto& c : f.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(f));
    }
  }
  for (const auto& f : flat)
    if (f.kind() == Kind::Empty) return empty();
  std::erase_if(flat, [](const SpaceExpr& f) { return f.kind() == Kind::Point; });

  // Products distribute over disjoint unions; S^0 is two points.
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i].kind() == Kind::Disjoint) {
      std::vector<SpaceExpr> rest(flat);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<SpaceExpr> parts;
      for (const auto& part : flat[i].children()) {
        auto fs = rest;
        fs.push_back(part);
        parts.push_back(product(std::move(fs)));
      }
      return disjoint(std::move(parts));
    }
  }
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i].kind() == Kind::Sphere && flat[i].sphere_dim() == Dim::number(0)) {
      if (flat.size() == 1) return flat[0];
      std::vector<SpaceExpr> rest(flat);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      auto copy = product(std::move(rest));
      return disjoint({copy, copy});
    }
  }

  int circles = 0;
  std::erase_if(flat, [&](const SpaceExpr& f) {
    if (f.kind() == Kind::Torus) {
      circles += f.degree();
      return true;
    }
    if (f.kind() == Kind::Sphere && f.sphere_dim() == Dim::number(1)) {
      ++circles;
      return true;
    }
    return false;
  });
  if (circles > 0) flat.push_back(torus(circles));

  if (flat.empty()) return point();
  if (flat.size() == 1) return flat[0];
  sort_factors(flat);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  for (const auto& f : flat) n->dimension = n->dimension + f.dimension();
  n->children = std::move(flat);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::power(const SpaceExpr& x, int k) {
  if (k < 0) throw Error("negative power");
  return product(std::vector<SpaceExpr>(static_cast<std::size_t>(k), x));
}

SpaceExpr SpaceExpr::conn_sum(std::vector<SpaceExpr> summands) {
  std::vector<SpaceExpr> flat;
  for (auto& s : summands) {
    if (s.kind() == Kind::ConnSum) {
      for (const auto& c : s.children()) flat.push_back(c);
    } else {
      flat.push_back(std::move(s));
    }
  }
  if (flat.empty()) throw Error("empty connected sum");
  for (const auto& s : flat) {
    if (s.kind() == Kind::Unknown) return s;
    if (s.kind() == Kind::Empty || s.kind() == Kind::Point || s.kind() == Kind::Disjoint)
      throw Error("connected sum needs connected positive-dimensional summands");
    if (s.dimension() != flat[0].dimension()) throw Error("connected sum of manifolds of different dimension");
  }
  const Dim dim = flat[0].dimension();

  if (std::all_of(flat.begin(), flat.end(), [](const SpaceExpr& s) { return s.kind() == Kind::Sphere; }))
    return flat[0];
  std::erase_if(flat, [](const SpaceExpr& s) { return s.kind() == Kind::Sphere; });

  if (dim == Dim::number(2)) {
    int genus = 0;
    std::erase_if(flat, [&](const SpaceExpr& s) {
      if (s.kind() == Kind::Torus) {
        genus += 1;
        return true;
      }
      if (s.kind() == Kind::Surface) {
        genus += s.degree();
        return true;
      }
      return false;
    });
    if (genus > 0) flat.push_back(surface(genus));
  }

  if (flat.size() == 1) return flat[0];
  sort_summands(flat);
  auto n = std::make_shared<Node>();
  n->kind = Kind::ConnSum;
  n->dimension = dim;
  n->children = std::move(flat);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::conn_multiple(const SpaceExpr& x, int k) {
  if (k < 1) throw Error("connected sum needs at least one summand");
  return conn_sum(std::vector<SpaceExpr>(static_cast<std::size_t>(k), x));
}

SpaceExpr SpaceExpr::disjoint(std::vector<SpaceExpr> parts) {
  std::vector<SpaceExpr> flat;
  for (auto& p : parts) {
    if (p.kind() == Kind::Disjoint) {
      for (const auto& c : p.children()) flat.push_back(c);
    } else if (p.kind() != Kind::Empty) {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat[0];
  std::stable_sort(flat.begin(), flat.end(), [](const SpaceExpr& a, const SpaceExpr& b) { return compare(a, b) < 0; });
  auto n = std::make_shared<Node>();
  n->kind = Kind::Disjoint;
  n->dimension = flat[0].dimension();
  n->children = std::move(flat);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::twisted_s2(const SpaceExpr& inner, std::optional<std::int64_t> quotient_euler) {
  if (inner.kind() == Kind::Unknown) return inner;
  auto n = std::make_shared<Node>();
  n->kind = Kind::TwistedS2;
  n->children = {inner};
  n->quotient_euler = quotient_euler;
  n->dimension = inner.dimension() + Dim::number(1);
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::opaque_b3(int m, std::optional<int> d) {
  if (m < 4) throw DomainError("B3 needs m >= 4");
  if (d && *d < 2) throw DomainError("B3 needs d >= 2");
  if (d && *d == 2) return conn_multiple(torus(m - 3), 2);
  auto n = std::make_shared<Node>();
  n->kind = Kind::OpaqueB3;
  n->opaque_m = m;
  n->opaque_d = d;
  n->dimension = d ? Dim::number((m - 2) * (*d - 1) - 1) : Dim{m - 2, -1};
  return SpaceExpr(n);
}

SpaceExpr SpaceExpr::unknown(std::string reason) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unknown;
  n->reason = std::move(reason);
  return SpaceExpr(n);
}

// ------------------------------------------------------------------ accessors

Kind SpaceExpr::kind() const noexcept { return node_->kind; }
Dim SpaceExpr::sphere_dim() const { return node_->sphere_dim; }
int SpaceExpr::degree() const { return node_->degree; }
const std::vector<SpaceExpr>& SpaceExpr::children() const { return node_->children; }
const SpaceExpr& SpaceExpr::inner() const {
  if (kind() != Kind::TwistedS2) throw Error("inner() on a non-twisted expression");
  return node_->children.front();
}
std::optional<std::int64_t> SpaceExpr::quotient_euler() const { return node_->quotient_euler; }
int SpaceExpr::opaque_m() const { return node_->opaque_m; }
std::optional<int> SpaceExpr::opaque_d() const { return node_->opaque_d; }
const std::string& SpaceExpr::reason() const { return node_->reason; }
Dim SpaceExpr::dimension() const { return node_->dimension; }

bool SpaceExpr::contains_unknown() const {
  if (kind() == Kind::Unknown) return true;
  return std::any_of(children().begin(), children().end(), [](const SpaceExpr& c) { return c.contains_unknown(); });
}

bool SpaceExpr::contains_opaque() const {
  if (kind() == Kind::OpaqueB3) return true;
  return std::any_of(children().begin(), children().end(), [](const SpaceExpr& c) { return c.contains_opaque(); });
}

bool SpaceExpr::symbolic() const {
  if (kind() == Kind::Sphere && sphere_dim().symbolic()) return true;
  if (kind() == Kind::OpaqueB3 && !opaque_d()) return true;
  return std::any_of(children().begin(), children().end(), [](const SpaceExpr& c) { return c.symbolic(); });
}

namespace {

SpaceExpr rebuild(const SpaceExpr& x, std::optional<int> d) {
  auto kids = [&] {
    std::vector<SpaceExpr> out;
    for (const auto& c : x.children()) out.push_back(rebuild(c, d));
    return out;
  };
  switch (x.kind()) {
    case Kind::Empty: return SpaceExpr::empty();
    case Kind::Point: return SpaceExpr::point();
    case Kind::Sphere: {
      Dim n = x.sphere_dim();
      return SpaceExpr::sphere(d ? Dim::number(n.at(*d)) : n);
    }
    case Kind::Torus: return SpaceExpr::torus(x.degree());
    case Kind::Surface: return SpaceExpr::surface(x.degree());
    case Kind::CP: return SpaceExpr::cp(x.degree());
    case Kind::CPbar: return SpaceExpr::cpbar(x.degree());
    case Kind::Product: return SpaceExpr::product(kids());
    case Kind::ConnSum: return SpaceExpr::conn_sum(kids());
    case Kind::Disjoint: return SpaceExpr::disjoint(kids());
    case Kind::TwistedS2: return SpaceExpr::twisted_s2(rebuild(x.inner(), d), x.quotient_euler());
    case Kind::OpaqueB3: return SpaceExpr::opaque_b3(x.opaque_m(), x.opaque_d() ? x.opaque_d() : d);
    case Kind::Unknown: return SpaceExpr::unknown(x.reason());
  }
  return x;
}

}  // namespace

SpaceExpr SpaceExpr::at(int d) const {
  if (d < 2) throw DomainError("d must be at least 2");
  return rebuild(*this, d);
}

SpaceExpr normalize(const SpaceExpr& x) { return rebuild(x, std::nullopt); }

int compare(const SpaceExpr& a, const SpaceExpr& b) {
  auto three_way = [](const auto& x, const auto& y) { return x < y ? -1 : (y < x ? 1 : 0); };
  if (a.kind() != b.kind()) return three_way(static_cast<int>(a.kind()), static_cast<int>(b.kind()));
  switch (a.kind()) {
    case Kind::Sphere: return three_way(a.sphere_dim(), b.sphere_dim());
    case Kind::Torus:
    case Kind::Surface:
    case Kind::CP:
    case Kind::CPbar: return three_way(a.degree(), b.degree());
    case Kind::OpaqueB3:
      if (int c = three_way(a.opaque_m(), b.opaque_m())) return c;
      return three_way(a.opaque_d().value_or(0), b.opaque_d().value_or(0));
    case Kind::Unknown: return three_way(a.reason(), b.reason());
    default: break;
  }
  const auto& ca = a.children();
  const auto& cb = b.children();
  for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i)
    if (int c = compare(ca[i], cb[i])) return c;
  return three_way(ca.size(), cb.size());
}

bool operator==(const SpaceExpr& a, const SpaceExpr& b) { return a.node_ == b.node_ || compare(a, b) == 0; }
bool operator<(const SpaceExpr& a, const SpaceExpr& b) { return compare(a, b) < 0; }

// ------------------------------------------------------------------ rendering

namespace {

struct Glyphs {
  const char* times;
  const char* sharp;
  const char* cup;
  const char* empty;
  const char* sigma;
  const char* cp;
  const char* cpbar;
  const char* twisted;
};

constexpr Glyphs kAscii{" x ", " # ", " u ", "empty", "Sigma_", "CP^", "~CP^", "S2x_{S1}("};
constexpr Glyphs kUnicode{" × ", " ♯ ", " ⊔ ", "∅", "Σ_", "ℂP^", "ℂP̄^", "S²×_{S¹}("};

std::string exponent(Dim n) {
  std::string s = to_string(n);
  if (!n.symbolic() && n.cst >= 0 && n.cst <= 9) return s;
  return "{" + s + "}";
}

bool all_equal(const std::vector<SpaceExpr>& xs) {
  return std::all_of(xs.begin(), xs.end(), [&](const SpaceExpr& x) { return x == xs.front(); });
}

template <class F>
void for_each_run(const std::vector<SpaceExpr>& xs, F&& f) {
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    f(xs[i], static_cast<int>(j - i));
    i = j;
  }
}

std::string render_node(const SpaceExpr& x, const Glyphs& g) {
  switch (x.kind()) {
    case Kind::Empty: return g.empty;
    case Kind::Point: return "pt";
    case Kind::Unknown: return "?";
    case Kind::Sphere: return "S^" + exponent(x.sphere_dim());
    case Kind::Torus: return "T^" + exponent(Dim::number(x.degree()));
    case Kind::Surface: return g.sigma + std::to_string(x.degree());
    case Kind::CP: return g.cp + exponent(Dim::number(x.degree()));
    case Kind::CPbar: return g.cpbar + exponent(Dim::number(x.degree()));
    case Kind::TwistedS2: return g.twisted + render_node(x.inner(), g) + ")";
    case Kind::OpaqueB3:
      return "B3(" + std::to_string(x.opaque_m()) + "," + (x.opaque_d() ? std::to_string(*x.opaque_d()) : "d") + ")";
    case Kind::Product: {
      std::string out;
      for_each_run(x.children(), [&](const SpaceExpr& f, int k) {
        if (!out.empty()) out += g.times;
        if (k > 1) {
          out += "(" + render_node(f, g) + ")^" + exponent(Dim::number(k));
        } else if ((f.kind() == Kind::ConnSum && !all_equal(f.children())) || f.kind() == Kind::Disjoint) {
          out += "(" + render_node(f, g) + ")";
        } else {
          out += render_node(f, g);
        }
      });
      return out;
    }
    case Kind::ConnSum: {
      std::string out;
      for_each_run(x.children(), [&](const SpaceExpr& s, int k) {
        if (!out.empty()) out += g.sharp;
        if (k > 1) {
          out += std::to_string(k) + "(" + render_node(s, g) + ")";
        } else if (s.kind() == Kind::Product && !all_equal(s.children())) {
          out += "(" + render_node(s, g) + ")";
        } else {
          out += render_node(s, g);
        }
      });
      return out;
    }
    case Kind::Disjoint: {
      std::string out;
      for (const auto& c : x.children()) {
        if (!out.empty()) out += g.cup;
        out += render_node(c, g);
      }
      return out;
    }
  }
  return "?";
}

// ------------------------------------------------------------------ parsing

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  SpaceExpr run() {
    auto x = disjoint();
    skip_spaces();
    if (pos_ != s_.size()) fail("trailing input");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse space expression at offset " + std::to_string(pos_) + ": " + why);
  }

  void skip_spaces() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  bool accept(std::string_view token) {
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  // Binary operators are single characters surrounded by spaces.
  bool accept_operator(char op) {
    std::size_t save = pos_;
    skip_spaces();
    if (pos_ > save && pos_ + 1 < s_.size() && s_[pos_] == op && s_[pos_ + 1] == ' ') {
      ++pos_;
      return true;
    }
    pos_ = save;
    return false;
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  Dim dim_body(std::string_view body) {
    auto tail = [&](std::string_view t) {
      if (t.empty()) return 0;
      if ((t[0] != '+' && t[0] != '-') || t.size() < 2) fail("bad exponent");
      for (char c : t.substr(1))
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad exponent");
      int v = std::stoi(std::string(t.substr(1)));
      return t[0] == '-' ? -v : v;
    };
    if (body.empty()) fail("empty exponent");
    if (body[0] == 'd') return Dim{1, 1 + tail(body.substr(1))};
    std::size_t i = 0;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    if (i == 0) fail("bad exponent");
    int lead = std::stoi(std::string(body.substr(0, i)));
    if (i == body.size()) return Dim::number(lead);
    if (body.substr(i, 5) != "(d-1)") fail("bad exponent");
    return Dim{lead, tail(body.substr(i + 5))};
  }

  Dim exponent_value() {
    if (accept("{")) {
      std::size_t close = s_.find('}', pos_);
      if (close == std::string_view::npos) fail("unclosed exponent");
      Dim n = dim_body(s_.substr(pos_, close - pos_));
      pos_ = close + 1;
      return n;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected an exponent");
    return Dim::number(s_[pos_++] - '0');
  }

  int numeric_exponent() {
    Dim n = exponent_value();
    if (n.symbolic()) fail("symbolic exponent not allowed here");
    return n.cst;
  }

  SpaceExpr disjoint() {
    std::vector<SpaceExpr> parts{conn_sum()};
    while (accept_operator('u')) parts.push_back(conn_sum());
    return parts.size() == 1 ? parts[0] : SpaceExpr::disjoint(std::move(parts));
  }

  SpaceExpr conn_sum() {
    std::vector<SpaceExpr> parts{product()};
    while (accept_operator('#')) parts.push_back(product());
    return parts.size() == 1 ? parts[0] : SpaceExpr::conn_sum(std::move(parts));
  }

  SpaceExpr product() {
    std::vector<SpaceExpr> parts{factor()};
    while (accept_operator('x')) parts.push_back(factor());
    return parts.size() == 1 ? parts[0] : SpaceExpr::product(std::move(parts));
  }

  SpaceExpr factor() {
    skip_spaces();
    if (accept("(")) {
      auto inner = disjoint();
      expect(")");
      if (accept("^")) return SpaceExpr::power(inner, numeric_exponent());
      return inner;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      int k = integer();
      expect("(");
      auto inner = disjoint();
      expect(")");
      return SpaceExpr::conn_multiple(inner, k);
    }
    if (accept("empty")) return SpaceExpr::empty();
    if (accept("pt")) return SpaceExpr::point();
    if (accept("?")) return SpaceExpr::unknown("");
    if (accept("S2x_{S1}(")) {
      auto inner = disjoint();
      expect(")");
      return SpaceExpr::twisted_s2(inner);
    }
    if (accept("Sigma_")) return SpaceExpr::surface(integer());
    if (accept("S^")) return SpaceExpr::sphere(exponent_value());
    if (accept("T^")) return SpaceExpr::torus(numeric_exponent());
    if (accept("~CP^")) return SpaceExpr::cpbar(numeric_exponent());
    if (accept("CP^")) return SpaceExpr::cp(numeric_exponent());
    if (accept("B3(")) {
      int m = integer();
      expect(",");
      std::optional<int> d;
      if (!accept("d")) d = integer();
      expect(")");
      return SpaceExpr::opaque_b3(m, d);
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string SpaceExpr::render(RenderStyle style) const {
  return render_node(*this, style == RenderStyle::Unicode ? kUnicode : kAscii);
}

SpaceExpr SpaceExpr::parse(std::string_view text) { return Parser(text).run(); }

// ------------------------------------------------------------------ Euler characteristic

std::optional<std::int64_t> euler_char(const SpaceExpr& x) {
  switch (x.kind()) {
    case Kind::Empty: return 0;
    case Kind::Point: return 1;
    case Kind::Sphere: return sphere_euler(x.sphere_dim());
    case Kind::Torus: return 0;
    case Kind::Surface: return 2 - 2 * static_cast<std::int64_t>(x.degree());
    case Kind::CP:
    case Kind::CPbar: return x.degree() + 1;
    case Kind::Product: {
      std::int64_t chi = 1;
      for (const auto& c : x.children()) {
        auto e = euler_char(c);
        if (!e) return std::nullopt;
        chi *= *e;
      }
      return chi;
    }
    case Kind::Disjoint: {
      std::int64_t chi = 0;
      for (const auto& c : x.children()) {
        auto e = euler_char(c);
        if (!e) return std::nullopt;
        chi += *e;
      }
      return chi;
    }
    case Kind::ConnSum: {
      auto sphere = sphere_euler(x.dimension());
      if (!sphere) return std::nullopt;
      std::int64_t chi = 0;
      for (const auto& c : x.children()) {
        auto e = euler_char(c);
        if (!e) return std::nullopt;
        chi += *e;
      }
      return chi - static_cast<std::int64_t>(x.children().size() - 1) * *sphere;
    }
    case Kind::TwistedS2:
      if (auto q = x.quotient_euler()) return 2 * *q;
      return std::nullopt;
    case Kind::OpaqueB3: {
      if (!x.opaque_d()) return std::nullopt;
      // (M \ B) x S^{d-2}  ∪  ∂B x D^{d-1}, glued along ∂B x S^{d-2}, M = (S^{d-1})^{m-3}.
      const int d = *x.opaque_d();
      const int n = (x.opaque_m() - 3) * (d - 1);
      std::int64_t chi_m = 1;
      for (int i = 0; i < x.opaque_m() - 3; ++i) chi_m *= sphere_euler(d - 1);
      const std::int64_t fibre = sphere_euler(d - 2);
      const std::int64_t boundary = sphere_euler(n - 1);
      const std::int64_t punctured = chi_m - (n % 2 == 0 ? 1 : -1);
      return punctured * fibre + boundary - boundary * fibre;
    }
    case Kind::Unknown: return std::nullopt;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ known diffeomorphisms

namespace {

bool is_sphere(const SpaceExpr& x, int n) { return x.kind() == Kind::Sphere && x.sphere_dim() == Dim::number(n); }

std::vector<SpaceExpr> without(const std::vector<SpaceExpr>& xs, std::initializer_list<SpaceExpr> drop) {
  std::vector<SpaceExpr> out(xs);
  for (const auto& d : drop) {
    auto it = std::find(out.begin(), out.end(), d);
    if (it != out.end()) out.erase(it);
  }
  return out;
}

std::vector<SpaceExpr> rewrites_here(const SpaceExpr& x) {
  std::vector<SpaceExpr> out;
  const auto s2 = SpaceExpr::sphere(2);
  switch (x.kind()) {
    case Kind::TwistedS2: {
      const auto& in = x.inner();
      if (in.kind() == Kind::Sphere && !in.sphere_dim().symbolic() && in.sphere_dim().cst % 2 == 1) {
        int k = (in.sphere_dim().cst + 1) / 2;
        out.push_back(SpaceExpr::conn_sum({SpaceExpr::cp(k), SpaceExpr::cpbar(k)}));
        if (k == 1) out.push_back(s2);
      }
      if (in.kind() == Kind::Torus) out.push_back(SpaceExpr::product({s2, SpaceExpr::torus(in.degree() - 1)}));
      if (in.kind() == Kind::Product) {
        const auto& fs = in.children();
        for (std::size_t i = 0; i < fs.size(); ++i) {
          if (is_sphere(fs[i], 1) || fs[i].kind() == Kind::Torus) {
            auto rest = fs;
            rest[i] = SpaceExpr::torus(fs[i].kind() == Kind::Torus ? fs[i].degree() - 1 : 0);
            rest.push_back(s2);
            out.push_back(SpaceExpr::product(std::move(rest)));
            break;
          }
        }
      }
      break;
    }
    case Kind::ConnSum: {
      const auto& cs = x.children();
      auto has = [&](const SpaceExpr& y) { return std::count(cs.begin(), cs.end(), y); };
      for (const auto& c : cs) {
        if (c.kind() != Kind::CP) continue;
        int k = c.degree();
        if (has(SpaceExpr::cpbar(k)) == 0) continue;
        auto rest = without(cs, {c, SpaceExpr::cpbar(k)});
        rest.push_back(SpaceExpr::twisted_s2(SpaceExpr::sphere(2 * k - 1), k));
        out.push_back(SpaceExpr::conn_sum(std::move(rest)));
        break;
      }
      const auto s2s2 = SpaceExpr::product({s2, s2});
      const auto cp2 = SpaceExpr::cp(2), cpbar2 = SpaceExpr::cpbar(2);
      if (has(s2s2) && has(cpbar2)) {
        auto rest = without(cs, {s2s2});
        rest.push_back(cp2);
        rest.push_back(cpbar2);
        out.push_back(SpaceExpr::conn_sum(std::move(rest)));
      }
      if (has(cp2) && has(cpbar2) >= 2) {
        auto rest = without(cs, {cp2, cpbar2});
        rest.push_back(s2s2);
        out.push_back(SpaceExpr::conn_sum(std::move(rest)));
      }
      break;
    }
    case Kind::Product: {
      const auto& fs = x.children();
      auto it = std::find(fs.begin(), fs.end(), s2);
      if (it != fs.end()) {
        auto y = SpaceExpr::product(without(fs, {s2}));
        out.push_back(SpaceExpr::twisted_s2(SpaceExpr::product({y, SpaceExpr::sphere(1)}), euler_char(y)));
      }
      break;
    }
    case Kind::Sphere:
      if (is_sphere(x, 2)) out.push_back(SpaceExpr::twisted_s2(SpaceExpr::sphere(1), 1));
      break;
    default: break;
  }
  return out;
}

SpaceExpr with_child(const SpaceExpr& x, std::size_t i, const SpaceExpr& child) {
  if (x.kind() == Kind::TwistedS2) return SpaceExpr::twisted_s2(child, x.quotient_euler());
  auto kids = x.children();
  kids[i] = child;
  switch (x.kind()) {
    case Kind::Product: return SpaceExpr::product(std::move(kids));
    case Kind::ConnSum: return SpaceExpr::conn_sum(std::move(kids));
    case Kind::Disjoint: return SpaceExpr::disjoint(std::move(kids));
    default: return x;
  }
}

std::vector<SpaceExpr> rewrites_once(const SpaceExpr& x) {
  auto out = rewrites_here(x);
  for (std::size_t i = 0; i < x.children().size(); ++i)
    for (const auto& alt : rewrites_once(x.children()[i])) out.push_back(with_child(x, i, alt));
  return out;
}

}  // namespace

std::vector<SpaceExpr> known_diffeos(const SpaceExpr& x) {
  std::vector<SpaceExpr> out{x};
  for (auto& alt : rewrites_once(x))
    if (std::find(out.begin(), out.end(), alt) == out.end()) out.push_back(std::move(alt));
  return out;
}

bool equivalent_up_to_known_diffeos(const SpaceExpr& a, const SpaceExpr& b) {
  if (a == b) return true;
  auto xa = known_diffeos(a);
  auto xb = known_diffeos(b);
  for (const auto& p : xa)
    if (std::find(xb.begin(), xb.end(), p) != xb.end()) return true;
  return false;
}

}  // namespace polychamber
