#pragma once

// Quaternion symbols over F(x), F = Q or a multiquadratic field
// Q(sqrt(g_1), ..., sqrt(g_k)), their tame residues at closed points of the
// projective line, and residues pulled back to the double cover y^2 = r(x).

#include "brauerkit/poly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace brauerkit {

/// Either the point at infinity or the zero locus of a monic irreducible
/// polynomial over Q of degree 1 or 2.
class ClosedPoint {
 public:
  static ClosedPoint infinity() { return ClosedPoint(); }
  /// Throws std::invalid_argument unless m is monic irreducible of degree <= 2.
  static ClosedPoint affine(const Poly& minimal_polynomial);
  static ClosedPoint rational(const Rational& t) { return affine(Poly::linear(t)); }

  bool is_infinity() const { return !m_.has_value(); }
  const Poly& minimal_polynomial() const;
  long degree() const { return is_infinity() ? 1 : m_->degree(); }
  /// The coordinate of a degree-1 affine point.
  Rational rational_value() const;
  /// A root of a degree-2 minimal polynomial, in Q(sqrt(D)) with D squarefree.
  QuadFieldElement quadratic_root() const;

  std::string to_string() const;

  friend bool operator==(const ClosedPoint& a, const ClosedPoint& b) { return a.m_ == b.m_; }
  /// Affine points by (degree, coefficients), infinity last.
  friend bool operator<(const ClosedPoint& a, const ClosedPoint& b);

 private:
  ClosedPoint() = default;
  explicit ClosedPoint(Poly m) : m_(std::move(m)) {}
  std::optional<Poly> m_;
};

/// Valuation of f at pt.
long valuation_at(const RatFunc& f, const ClosedPoint& pt);
/// f / pi^{v(f)} evaluated at a degree-1 point (pi = x - t, or 1/x at
/// infinity); f nonzero.
Rational unit_value_at(const RatFunc& f, const ClosedPoint& pt);
/// The same at a degree-2 point, in Q(sqrt(D)).
QuadFieldElement unit_value_at_quadratic(const RatFunc& f, const ClosedPoint& pt);

/// Base field Q(sqrt(g_1), ..., sqrt(g_k)); an empty list means Q.
struct BaseField {
  std::vector<Integer> generators;

  /// Whether e is a square in this field.
  bool is_square(const Rational& e) const;
  /// Whether e in Q(sqrt(D)) is a square in the compositum with this field.
  bool is_square_over(const QuadFieldElement& e) const;
  std::string describe() const;
};

/// Residue of a symbol algebra at a closed point, as a class in
/// kappa(pt)^* / kappa(pt)^*2 where kappa(pt) = F or F(sqrt(D)).
struct ResidueClass {
  ClosedPoint point = ClosedPoint::infinity();
  std::string residue_field;
  /// Squarefree representative (degree-1 points).
  Rational representative = 1;
  /// The raw value when the residue field is quadratic over F.
  std::optional<QuadFieldElement> extension_value;
  bool trivial = true;
};

struct Symbol {
  RatFunc f, g;
};

class SymbolAlgebra {
 public:
  SymbolAlgebra() = default;
  explicit SymbolAlgebra(std::vector<Symbol> symbols);

  void add(RatFunc f, RatFunc g);
  const std::vector<Symbol>& symbols() const { return symbols_; }

  /// Zeros and poles of every entry, and infinity.
  std::vector<ClosedPoint> candidate_points(const FactorConfig& config = {}) const;

 private:
  std::vector<Symbol> symbols_;
};

/// Class of (-1)^{v(f)v(g)} f^{v(g)} g^{-v(f)} at pt.
ResidueClass tame_residue(const Symbol& sym, const ClosedPoint& pt, const BaseField& base = {});
/// Product of the residues of every symbol of A at pt.
ResidueClass tame_residue(const SymbolAlgebra& A, const ClosedPoint& pt, const BaseField& base = {});

/// Closed points with a nontrivial residue, sorted.
std::vector<ClosedPoint> ramification_locus(const SymbolAlgebra& A, const BaseField& base = {},
                                            const FactorConfig& config = {});

/// Raised by value_at_point at a ramified point.
class RamifiedPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Specialization of A at an unramified degree-1 point: the symbols that are
/// not visibly split over the base field, as pairs of squarefree
/// representatives.
std::vector<std::pair<Integer, Integer>> value_at_point(const SymbolAlgebra& A, const ClosedPoint& pt,
                                                        const BaseField& base = {});

struct CurveResidue {
  Rational abscissa;
  /// r(abscissa); the residue field of the curve point is F(sqrt(r(abscissa))).
  Rational radicand;
  std::string residue_field;
  ResidueClass residue;  // residue of A at x = abscissa on the line
  bool trivial = true;   // triviality in the residue field of the curve point
};

/// Residue of the pullback of A to y^2 = r(x) at the closed point above
/// x = abscissa. Requires r(abscissa) != 0.
CurveResidue pullback_residue_to_curve(const SymbolAlgebra& A, const Poly& r, const Rational& abscissa,
                                       const BaseField& base = {});

}  // namespace brauerkit
