#include "brauerkit/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace brauerkit {

Poly::Poly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

Poly::Poly(std::initializer_list<long> coefficients)
    : c_(coefficients.begin(), coefficients.end()) {
  trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::x() { return Poly({0, 1}); }

Poly Poly::linear(const Rational& root) { return Poly(std::vector<Rational>{-root, Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& t) const {
  Rational s = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + *it;
  return s;
}

QuadFieldElement Poly::operator()(const QuadFieldElement& t) const {
  QuadFieldElement s = QuadFieldElement::rational(0, t.c());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * t + QuadFieldElement::rational(*it, t.c());
  return s;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational l = leading();
  std::vector<Rational> out;
  for (const auto& a : c_) out.push_back(a / l);
  return Poly(std::move(out));
}

Poly Poly::derivative() const {
  std::vector<Rational> out;
  for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * static_cast<long>(i));
  return Poly(std::move(out));
}

Poly operator+(const Poly& f, const Poly& g) {
  std::vector<Rational> out(std::max(f.c_.size(), g.c_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.coefficient(i) + g.coefficient(i);
  return Poly(std::move(out));
}

Poly operator-(const Poly& f, const Poly& g) { return f + Rational(-1) * g; }

Poly operator*(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<Rational> out(f.c_.size() + g.c_.size() - 1);
  for (std::size_t i = 0; i < f.c_.size(); ++i) {
    for (std::size_t j = 0; j < g.c_.size(); ++j) out[i + j] += f.c_[i] * g.c_[j];
  }
  return Poly(std::move(out));
}

Poly operator*(const Rational& s, const Poly& f) {
  std::vector<Rational> out;
  for (const auto& a : f.c_) out.push_back(s * a);
  return Poly(std::move(out));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Rational& a = c_[k];
    if (a == 0) continue;
    Rational mag = abs(a);
    if (out.empty()) {
      if (a < 0) out += "-";
    } else {
      out += a < 0 ? " - " : " + ";
    }
    bool show = k == 0 || mag != 1;
    if (show) out += mag.get_str();
    if (k > 0) {
      if (show) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> r = f.coefficients();
  const long dg = g.degree();
  if (f.degree() < dg) return {Poly(), f};
  std::vector<Rational> q(f.degree() - dg + 1);
  const Rational lg = g.leading();
  for (long k = f.degree() - dg; k >= 0; --k) {
    Rational t = r[k + dg] / lg;
    q[k] = t;
    if (t == 0) continue;
    for (long i = 0; i <= dg; ++i) r[k + i] -= t * g.coefficient(i);
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(const Poly& f, const Poly& g) {
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

long multiplicity(const Poly& f, const Poly& g) {
  if (f.is_zero()) throw std::domain_error("multiplicity in the zero polynomial");
  if (g.degree() < 1) throw std::invalid_argument("multiplicity: divisor must be non-constant");
  long k = 0;
  Poly h = f;
  while (true) {
    auto [q, r] = divmod(h, g);
    if (!r.is_zero()) return k;
    h = std::move(q);
    ++k;
  }
}

namespace {

std::vector<Integer> positive_divisors(const Integer& n, const FactorConfig& config) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factorize(n, config).factors) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Integer coefficients with content 1.
std::vector<Integer> primitive_integer(const Poly& f) {
  Integer l = 1;
  for (const auto& a : f.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& a : f.coefficients()) {
    out.push_back(Integer(a * l));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  for (auto& a : out) a /= g;
  return out;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& f, const FactorConfig& config) {
  if (f.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  std::vector<Rational> out;
  Poly rest = f;
  if (rest.degree() >= 1 && rest.coefficient(0) == 0) {
    out.push_back(0);
    while (rest.coefficient(0) == 0) rest = divmod(rest, Poly::x()).first;
  }
  if (rest.degree() >= 1) {
    auto z = primitive_integer(rest);
    auto nums = positive_divisors(abs(z.front()), config);
    auto dens = positive_divisors(abs(z.back()), config);
    for (const auto& p : nums) {
      for (const auto& q : dens) {
        Rational r = make_rational(p, q);
        for (const Rational& cand : {r, Rational(-r)}) {
          if (rest(cand) == 0) out.push_back(cand);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<Rational, std::vector<PolyFactor>> factor_low_degree(const Poly& f,
                                                               const FactorConfig& config) {
  if (f.is_zero()) throw std::invalid_argument("factor_low_degree: zero polynomial");
  std::vector<PolyFactor> out;
  Poly rest = f.monic();
  auto take = [&](const Poly& g) {
    long m = multiplicity(rest, g);
    if (m == 0) return;
    for (long i = 0; i < m; ++i) rest = divmod(rest, g).first;
    out.push_back({g, m});
  };
  take(Poly::x());
  if (rest.degree() >= 1) {
    for (const auto& r : rational_roots(rest, config)) take(Poly::linear(r));
  }
  if (rest.degree() == 2) {
    out.push_back({rest, 1});
  } else if (rest.degree() > 2) {
    throw std::domain_error("factor_low_degree: factor " + rest.to_string() +
                            " without rational roots has degree > 2");
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    return a.factor.coefficients() < b.factor.coefficients();
  });
  return {f.leading(), out};
}

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly::constant(1);
    return;
  }
  Poly g = gcd(num, den);
  Poly n = divmod(num, g).first, d = divmod(den, g).first;
  Rational l = d.leading();
  num_ = Rational(1 / l) * n;
  den_ = d.monic();
}

RatFunc operator*(const RatFunc& f, const RatFunc& g) { return RatFunc(f.num_ * g.num_, f.den_ * g.den_); }

RatFunc operator/(const RatFunc& f, const RatFunc& g) {
  if (g.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(f.num_ * g.den_, f.den_ * g.num_);
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace brauerkit
