#pragma once

#include "brauerkit/arith.hpp"

#include <string>

namespace brauerkit {

/// a + b*sqrt(c) in Q(sqrt(c)), c squarefree and c != 0, 1.
class QuadFieldElement {
 public:
  QuadFieldElement(Rational a, Rational b, Integer c);
  /// The rational a viewed inside Q(sqrt(c)).
  static QuadFieldElement rational(Rational a, Integer c);
  static QuadFieldElement sqrt_c(Integer c);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& c() const { return c_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadFieldElement conjugate() const { return {a_, -b_, c_}; }
  Rational norm() const { return a_ * a_ - c_ * b_ * b_; }
  Rational trace() const { return 2 * a_; }

  /// Sign under the embedding sending sqrt(c) to the positive (embedding 0) or
  /// negative (embedding 1) real root. Requires c > 0.
  int sign(int embedding) const;
  bool is_totally_positive() const { return sign(0) > 0 && sign(1) > 0; }
  bool is_totally_negative() const { return sign(0) < 0 && sign(1) < 0; }

  /// Whether the element is a square in Q(sqrt(c)).
  bool is_square() const;

  QuadFieldElement inverse() const;

  friend QuadFieldElement operator+(const QuadFieldElement& x, const QuadFieldElement& y);
  friend QuadFieldElement operator-(const QuadFieldElement& x, const QuadFieldElement& y);
  friend QuadFieldElement operator*(const QuadFieldElement& x, const QuadFieldElement& y);
  friend QuadFieldElement operator/(const QuadFieldElement& x, const QuadFieldElement& y);
  friend QuadFieldElement operator-(const QuadFieldElement& x) { return {-x.a_, -x.b_, x.c_}; }
  friend bool operator==(const QuadFieldElement& x, const QuadFieldElement& y) {
    return x.c_ == y.c_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const;

 private:
  Rational a_, b_;
  Integer c_;
};

/// Whether e is a square in the multiquadratic field Q(sqrt(g_1), ..., sqrt(g_k)):
/// true iff e times some product of a subset of the g_i is a rational square.
bool is_square_in_multiquadratic(const Rational& e, const std::vector<Integer>& generators);

}  // namespace brauerkit
