#pragma once

// Univariate polynomials and rational functions over Q.

#include "brauerkit/arith.hpp"
#include "brauerkit/quad_field.hpp"

#include <string>
#include <utility>
#include <vector>

namespace brauerkit {

class Poly {
 public:
  Poly() = default;
  /// Coefficients from the constant term upwards.
  explicit Poly(std::vector<Rational> coefficients);
  Poly(std::initializer_list<long> coefficients);
  static Poly constant(const Rational& c);
  static Poly x();
  /// x - root
  static Poly linear(const Rational& root);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const;
  QuadFieldElement operator()(const QuadFieldElement& t) const;

  Poly monic() const;
  Poly derivative() const;

  friend Poly operator+(const Poly& f, const Poly& g);
  friend Poly operator-(const Poly& f, const Poly& g);
  friend Poly operator*(const Poly& f, const Poly& g);
  friend Poly operator*(const Rational& s, const Poly& f);
  friend bool operator==(const Poly& f, const Poly& g) { return f.c_ == g.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; g nonzero.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& f, const Poly& g);
/// Largest k with g^k | f; f nonzero, deg g >= 1.
long multiplicity(const Poly& f, const Poly& g);

/// Distinct rational roots, ascending, from the divisors of the extreme
/// coefficients (f nonzero).
std::vector<Rational> rational_roots(const Poly& f, const FactorConfig& config = {});

/// Irreducible factor of degree 1 or 2 with multiplicity.
struct PolyFactor {
  Poly factor;  // monic
  long multiplicity;
};

/// Factorization over Q into monic irreducibles of degree at most 2 plus the
/// leading coefficient. Rational roots are found from the divisors of the
/// extreme coefficients; a remaining factor of degree > 2 throws
/// std::domain_error.
std::pair<Rational, std::vector<PolyFactor>> factor_low_degree(const Poly& f,
                                                               const FactorConfig& config = {});

/// num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc(const Poly& num, const Poly& den = Poly::constant(1));
  static RatFunc constant(const Rational& c) { return RatFunc(Poly::constant(c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  friend RatFunc operator*(const RatFunc& f, const RatFunc& g);
  friend RatFunc operator/(const RatFunc& f, const RatFunc& g);
  friend bool operator==(const RatFunc& f, const RatFunc& g) {
    return f.num_ == g.num_ && f.den_ == g.den_;
  }

  std::string to_string() const;

 private:
  Poly num_, den_;
};

}  // namespace brauerkit
