#include "brauerkit/quad_field.hpp"

#include <stdexcept>

namespace brauerkit {

namespace {

void require_same_field(const QuadFieldElement& x, const QuadFieldElement& y) {
  if (x.c() != y.c()) throw std::invalid_argument("QuadFieldElement: mismatched fields");
}

int sgn(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

}  // namespace

QuadFieldElement::QuadFieldElement(Rational a, Rational b, Integer c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (c_ == 0 || c_ == 1) throw std::invalid_argument("QuadFieldElement: c must not be 0 or 1");
  if (squarefree_part(c_) != c_) {
    throw std::invalid_argument("QuadFieldElement: c = " + c_.get_str() + " is not squarefree");
  }
}

QuadFieldElement QuadFieldElement::rational(Rational a, Integer c) {
  return {std::move(a), Rational(0), std::move(c)};
}

QuadFieldElement QuadFieldElement::sqrt_c(Integer c) { return {Rational(0), Rational(1), std::move(c)}; }

int QuadFieldElement::sign(int embedding) const {
  if (c_ < 0) throw std::domain_error("QuadFieldElement::sign: imaginary quadratic field");
  Rational b = embedding == 0 ? b_ : Rational(-b_);
  int sa = sgn(a_), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with b^2 c
  Rational lhs = a_ * a_, rhs = b * b * c_;
  if (lhs == rhs) return 0;  // cannot happen for squarefree c != 1
  return lhs > rhs ? sa : sb;
}

bool QuadFieldElement::is_square() const {
  if (is_zero()) return true;
  if (b_ == 0) return brauerkit::is_square(a_) || brauerkit::is_square(Rational(a_ / c_));
  Rational n = norm();
  if (!brauerkit::is_square(n)) return false;
  Rational s(sqrt(n.get_num()), sqrt(n.get_den()));
  for (const Rational& cand : {Rational((a_ + s) / 2), Rational((a_ - s) / 2)}) {
    if (cand != 0 && brauerkit::is_square(cand)) return true;
  }
  return false;
}

QuadFieldElement QuadFieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("QuadFieldElement::inverse: zero");
  Rational n = norm();
  return {a_ / n, -b_ / n, c_};
}

QuadFieldElement operator+(const QuadFieldElement& x, const QuadFieldElement& y) {
  require_same_field(x, y);
  return {x.a_ + y.a_, x.b_ + y.b_, x.c_};
}

QuadFieldElement operator-(const QuadFieldElement& x, const QuadFieldElement& y) {
  require_same_field(x, y);
  return {x.a_ - y.a_, x.b_ - y.b_, x.c_};
}

QuadFieldElement operator*(const QuadFieldElement& x, const QuadFieldElement& y) {
  require_same_field(x, y);
  return {x.a_ * y.a_ + x.c_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.c_};
}

QuadFieldElement operator/(const QuadFieldElement& x, const QuadFieldElement& y) {
  return x * y.inverse();
}

std::string QuadFieldElement::to_string() const {
  std::string out = a_.get_str();
  if (b_ != 0) {
    out += b_ > 0 ? " + " : " - ";
    out += Rational(abs(b_)).get_str() + "*sqrt(" + c_.get_str() + ")";
  }
  return out;
}

bool is_square_in_multiquadratic(const Rational& e, const std::vector<Integer>& generators) {
  if (e == 0) return true;
  const std::size_t k = generators.size();
  if (k > 16) throw std::invalid_argument("is_square_in_multiquadratic: too many generators");
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Rational t = e;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) t *= generators[i];
    }
    if (is_square(t)) return true;
  }
  return false;
}

}  // namespace brauerkit
