#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerkit/arith.hpp"
#include "brauerkit/poly.hpp"
#include "brauerkit/quad_field.hpp"

#include <cmath>
#include <random>

using namespace brauerkit;

namespace {

// Euler's criterion by repeated multiplication.
int euler(long a, long p) {
  long r = 1, b = ((a % p) + p) % p;
  if (b == 0) return 0;
  for (long e = 0; e < (p - 1) / 2; ++e) r = r * b % p;
  return r == 1 ? 1 : -1;
}

bool brute_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Square units of Z_p are the squares mod p^3 (mod 8 for p = 2).
bool brute_square_in_Qp(const Rational& x, long p) {
  long v = padic_valuation(x, p);
  if (v % 2) return false;
  Rational u = padic_unit_part(x, p);
  long m = p * p * p;
  Integer num = u.get_num(), den = u.get_den();
  Integer r;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(m).get_mpz_t());
  r = num * inv;
  mpz_fdiv_r_ui(r.get_mpz_t(), r.get_mpz_t(), m);
  for (long y = 0; y < m; ++y) {
    if (y % p && (y * y) % m == r.get_si()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("parsing and printing rationals") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(parse_rational(" 12 ")) == "12");
  CHECK(to_string(Rational(-3, 2)) == "-3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(parse_integer("-778032") == -778032);
}

TEST_CASE("factorization reproduces its input") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Integer n = Integer(static_cast<unsigned long>(rng() % 1000000000ul)) + 2;
    auto f = factorize(n);
    CHECK(f.value() == n);
    for (const auto& [p, e] : f.factors) CHECK(is_prime(p));
  }
  // a product of two primes near 10^9
  Integer n = Integer(1000000007) * Integer(998244353);
  auto f = factorize(n);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].first == 998244353);
  auto g = factorize(Integer(-9115276032));
  CHECK(g.sign == -1);
  CHECK(g.value() == Integer(-9115276032));
}

TEST_CASE("primality agrees with trial division") {
  for (long n = -5; n < 3000; ++n) CHECK(is_prime(Integer(n)) == brute_prime(n));
  auto ps = primes_up_to(200);
  CHECK(ps.size() == 46);
  CHECK(ps.back() == 199);
}

TEST_CASE("squarefree parts and squares") {
  CHECK(squarefree_part(Integer(-778032)) == -5403);
  CHECK(squarefree_part(Integer(72)) == 2);
  CHECK(squarefree_part(Rational(8, 27)) == 6);
  CHECK(is_square(Integer(0)));
  CHECK(is_square(Rational(49, 4)));
  CHECK_FALSE(is_square(Integer(-4)));
}

TEST_CASE("Legendre symbol matches Euler's criterion") {
  for (long p : {3, 5, 7, 11, 13, 17, 101}) {
    for (long a = -40; a <= 40; ++a) CHECK(legendre_symbol(Integer(a), Integer(p)) == euler(a, p));
  }
}

TEST_CASE("p-adic valuations and unit parts") {
  CHECK(padic_valuation(Rational(-5403 * 144, 25), 2) == 4);
  CHECK(padic_valuation(Rational(7, 50), 5) == -2);
  CHECK(padic_unit_part(Rational(12, 5), 2) == Rational(3, 5));
  CHECK(support_primes(Rational(-10, 21)) == std::vector<Integer>{2, 3, 5, 7});
}

TEST_CASE("squares in Q_p agree with a brute-force residue table") {
  for (long p : {2, 3, 5, 7}) {
    for (long n = -60; n <= 60; ++n) {
      for (long d : {1, 2, 3, 4, 9, 25}) {
        if (n == 0) continue;
        Rational x = make_rational(n, d);
        CHECK_MESSAGE(is_square_in_Qp(x, Place::finite(p)) == brute_square_in_Qp(x, p), x.get_str(), " at ", p);
      }
    }
  }
  CHECK(is_square_in_Qp(Rational(-7), Place::finite(2)));
  CHECK_FALSE(is_square_in_Qp(Rational(-3), Place::finite(2)));
  CHECK(is_square_in_Qp(Rational(2), Place::real()));
  CHECK_FALSE(is_square_in_Qp(Rational(-2), Place::real()));
}

TEST_CASE("places order finite primes first") {
  std::vector<Place> v{Place::real(), Place::finite(17), Place::finite(2)};
  std::sort(v.begin(), v.end());
  CHECK(v[0].to_string() == "2");
  CHECK(v[2].to_string() == "inf");
}

TEST_CASE("quadratic field arithmetic against floating point") {
  std::mt19937 rng(3);
  for (long c : {2, 3, 10, 7}) {
    double s = std::sqrt(static_cast<double>(c));
    for (int i = 0; i < 50; ++i) {
      auto r = [&] { return make_rational(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 5) + 1); };
      QuadFieldElement x(r(), r(), c), y(r(), r(), c);
      auto val = [&](const QuadFieldElement& z, double root) { return z.a().get_d() + z.b().get_d() * root; };
      CHECK(val(x * y, s) == doctest::Approx(val(x, s) * val(y, s)));
      CHECK(val((x * y).conjugate(), -s) == doctest::Approx(val(x, s) * val(y, s)));
      if (!y.is_zero()) CHECK(x / y * y == x);
      double v0 = val(x, s);
      if (!x.is_zero()) CHECK(x.sign(0) == (v0 > 0 ? 1 : -1));
    }
  }
  QuadFieldElement r_a(2341448, 0, 10);
  CHECK(r_a.is_totally_positive());
  CHECK(QuadFieldElement(3, -1, 10).sign(0) == -1);  // 3 - sqrt(10) < 0
  CHECK(QuadFieldElement(3, -1, 10).sign(1) == 1);
  CHECK(QuadFieldElement(0, 2, 2).is_square() == false);
  CHECK(QuadFieldElement(3, 2, 2).is_square());  // (1 + sqrt 2)^2
  CHECK(QuadFieldElement::rational(10, 10).is_square());
}

TEST_CASE("multiquadratic squares") {
  CHECK(is_square_in_multiquadratic(Rational(20), {10, 2}));
  CHECK(is_square_in_multiquadratic(Rational(5, 4), {10, 2}));
  CHECK_FALSE(is_square_in_multiquadratic(Rational(3), {10, 2}));
  CHECK_FALSE(is_square_in_multiquadratic(Rational(-1), {10, 2}));
}

TEST_CASE("polynomial division and rational roots") {
  Poly f{-21, -12, 1, 1};
  Poly g{1, 1};
  auto [q, r] = divmod(f, g);
  CHECK(q * g + r == f);
  CHECK(r.degree() < g.degree());
  Poly h = Poly::linear(Rational(1, 2)) * Poly::linear(-3) * Poly::linear(-3) * Poly{5, 0, 1};
  CHECK(rational_roots(h) == std::vector<Rational>{Rational(-3), Rational(1, 2)});
  CHECK(multiplicity(h, Poly::linear(-3)) == 2);
  CHECK(gcd(h, Poly::linear(-3) * Poly{1, 1}) == Poly::linear(-3));
  CHECK(rational_roots(Poly{-2, 0, 1}).empty());
  CHECK(f(Rational(2)) == -33);
}
