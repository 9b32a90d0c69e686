#pragma once

// Symbolic closed manifolds: spheres, tori, surfaces, projective spaces and the
// product / connected-sum / disjoint-union / twisted-bundle constructions.
//
// Values are immutable and always in normal form: every factory normalizes, so
// structural equality is the comparison used everywhere.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polychamber {

/// coef·(d-1) + cst; coef == 0 means a plain integer.
struct Dim {
  int coef = 0;
  int cst = 0;

  static Dim number(int n) { return {0, n}; }
  bool symbolic() const noexcept { return coef != 0; }
  int at(int d) const noexcept { return coef * (d - 1) + cst; }

  friend Dim operator+(Dim a, Dim b) { return {a.coef + b.coef, a.cst + b.cst}; }
  friend bool operator==(const Dim&, const Dim&) = default;
  friend auto operator<=>(const Dim&, const Dim&) = default;
};

/// "3", "d-1", "d-2", "2(d-1)-1"
std::string to_string(Dim n);

enum class Kind {
  Empty,
  Point,
  Sphere,
  Torus,
  Surface,
  CP,
  CPbar,
  Product,
  ConnSum,
  Disjoint,
  TwistedS2,
  OpaqueB3,
  Unknown,
};

enum class RenderStyle { Ascii, Unicode };

class SpaceExpr {
 public:
  struct Node;

  /// The empty manifold.
  SpaceExpr();

  static SpaceExpr empty();
  static SpaceExpr point();
  static SpaceExpr sphere(Dim n);
  static SpaceExpr sphere(int n) { return sphere(Dim::number(n)); }
  static SpaceExpr torus(int n);
  static SpaceExpr surface(int genus);
  static SpaceExpr cp(int n);
  static SpaceExpr cpbar(int n);
  static SpaceExpr product(std::vector<SpaceExpr> factors);
  static SpaceExpr power(const SpaceExpr& x, int k);
  /// Throws Error unless all summands share one dimension.
  static SpaceExpr conn_sum(std::vector<SpaceExpr> summands);
  static SpaceExpr conn_multiple(const SpaceExpr& x, int k);
  static SpaceExpr disjoint(std::vector<SpaceExpr> parts);
  /// S² ×_{S¹} X. `quotient_euler` is χ(X/S¹) when known.
  static SpaceExpr twisted_s2(const SpaceExpr& inner, std::optional<std::int64_t> quotient_euler = std::nullopt);
  /// The surgered chain space of ⟨{m,m-3,…,2}⟩; d = nullopt means symbolic.
  /// At d = 2 this is T^{m-3} # T^{m-3}.
  static SpaceExpr opaque_b3(int m, std::optional<int> d);
  static SpaceExpr unknown(std::string reason);

  Kind kind() const noexcept;
  /// Sphere exponent; torus/CP degree or genus live in `degree()`.
  Dim sphere_dim() const;
  int degree() const;
  const std::vector<SpaceExpr>& children() const;
  const SpaceExpr& inner() const;  // TwistedS2 only
  std::optional<std::int64_t> quotient_euler() const;
  int opaque_m() const;
  std::optional<int> opaque_d() const;
  const std::string& reason() const;

  bool is_unknown() const noexcept { return kind() == Kind::Unknown; }
  /// True when some node (recursively) is Unknown.
  bool contains_unknown() const;
  bool contains_opaque() const;
  bool symbolic() const;

  /// Dimension of the manifold; Empty and Unknown report 0.
  Dim dimension() const;

  /// Substitutes a numeric d and renormalizes.
  SpaceExpr at(int d) const;

  std::string render(RenderStyle style = RenderStyle::Ascii) const;
  /// Inverse of render(Ascii). Throws ParseError.
  static SpaceExpr parse(std::string_view text);

  friend bool operator==(const SpaceExpr& a, const SpaceExpr& b);
  friend bool operator<(const SpaceExpr& a, const SpaceExpr& b);

 private:
  explicit SpaceExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Structural three-way comparison (total order on normal forms).
int compare(const SpaceExpr& a, const SpaceExpr& b);

/// Rebuilds through the factories; idempotent.
SpaceExpr normalize(const SpaceExpr& x);

/// Euler characteristic; absent for symbolic dimensions, Unknown nodes and
/// twisted bundles whose quotient is not recorded.
std::optional<std::int64_t> euler_char(const SpaceExpr& x);

/// x together with every form reachable by one application of a registered
/// diffeomorphism at any node:
///   S²×_{S¹}S^{2k-1} ≡ CP^k # ~CP^k,
///   (S²×S²) # ~CP² ≡ CP² # 2~CP²,
///   S²×_{S¹}(Y×S¹) ≡ S²×Y  (and S²×_{S¹}S¹ ≡ S²).
std::vector<SpaceExpr> known_diffeos(const SpaceExpr& x);

/// Equal, or related by one registered rewrite on either side.
bool equivalent_up_to_known_diffeos(const SpaceExpr& a, const SpaceExpr& b);

}  // namespace polychamber
