#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <doctest.h>

#include "brauerkit/quadratic_forms.hpp"

#include <random>

using namespace brauerkit;

namespace {

// Primitive zero of sum c_i x_i^2 modulo p^k, with integer coefficients of
// valuation at most 1. For k >= 3 (odd p) or k >= 5 (p = 2) Hensel's lemma
// lifts any such zero, so this decides isotropy over Q_p.
bool brute_isotropic(const std::vector<long>& c, long p) {
  long k = p == 2 ? 5 : 3;
  long m = 1;
  for (long i = 0; i < k; ++i) m *= p;
  std::vector<long> x(c.size(), 0);
  // enumerate all but the last variable and look the last term up
  const std::size_t r = c.size();
  long last = ((c[r - 1] % m) + m) % m;
  std::vector<char> by_unit(m, 0), by_any(m, 0);
  for (long z = 0; z < m; ++z) {
    long v = last * (z * z % m) % m;
    by_any[v] = 1;
    if (z % p) by_unit[v] = 1;
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i + 1 < r; ++i) total *= m;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t t = idx;
    long s = 0;
    bool unit = false;
    for (std::size_t i = 0; i + 1 < r; ++i) {
      long xi = static_cast<long>(t % m);
      t /= m;
      unit = unit || xi % p != 0;
      s = (s + (c[i] % m + m) % m * (xi * xi % m)) % m;
    }
    long need = (m - s) % m;
    if (unit ? by_any[need] : by_unit[need]) return true;
  }
  return false;
}

bool brute_real(const std::vector<long>& c) {
  bool pos = false, neg = false;
  for (long x : c) (x > 0 ? pos : neg) = true;
  return pos && neg;
}

std::vector<long> squarefree_list() {
  std::vector<long> out;
  for (long n = -30; n <= 30; ++n) {
    if (n != 0 && squarefree_part(Integer(n)) == n) out.push_back(n);
  }
  return out;
}

DiagonalForm form_of(const std::vector<long>& c) {
  std::vector<Rational> r(c.begin(), c.end());
  return DiagonalForm(r);
}

}  // namespace

TEST_CASE("Hilbert symbols agree with brute-force solubility of z^2 = a x^2 + b y^2") {
  auto sf = squarefree_list();
  for (long p : {2, 3, 5, 7}) {
    for (long a : sf) {
      for (long b : sf) {
        if ((a + b + p) % 3 != 0 && p == 7) continue;  // thin out the slowest prime
        bool iso = brute_isotropic({a, b, -1}, p);
        CHECK_MESSAGE(hilbert_symbol(Rational(a), Rational(b), Place::finite(p)) == (iso ? 1 : -1), a, ",", b,
                      " at ", p);
      }
    }
  }
  CHECK(hilbert_symbol(Rational(-1), Rational(-1), Place::real()) == -1);
  CHECK(hilbert_symbol(Rational(-1), Rational(3), Place::real()) == 1);
}

TEST_CASE("Hilbert symbol table for (5, 17)") {
  CHECK(hilbert_symbol(Rational(5), Rational(17), Place::finite(2)) == 1);
  CHECK(hilbert_symbol(Rational(5), Rational(17), Place::finite(5)) == -1);
  CHECK(hilbert_symbol(Rational(5), Rational(17), Place::finite(17)) == -1);
  CHECK(hilbert_symbol(Rational(5), Rational(17), Place::real()) == 1);
  CHECK(hilbert_symbol(Rational(5), Rational(17), Place::finite(3)) == 1);
}

TEST_CASE("product formula and symmetry on random rationals") {
  std::mt19937_64 rng(11);
  auto draw = [&] {
    long n = static_cast<long>(rng() % 2001) - 1000, d = static_cast<long>(rng() % 1000) + 1;
    if (n == 0) n = 1;
    return make_rational(n, d);
  };
  for (int i = 0; i < 100; ++i) {
    Rational a = draw(), b = draw();
    int prod = hilbert_symbol(a, b, Place::real());
    // primes of a and b taken separately, since they may cancel in a*b
    auto primes = support_primes(a), pb = support_primes(b);
    primes.insert(primes.end(), pb.begin(), pb.end());
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    if (std::find(primes.begin(), primes.end(), Integer(2)) == primes.end()) primes.push_back(2);
    for (const auto& p : primes) prod *= hilbert_symbol(a, b, Place::finite(p));
    CHECK(prod == 1);
    CHECK(hilbert_symbol(a, b, Place::finite(2)) == hilbert_symbol(b, a, Place::finite(2)));
    CHECK(hilbert_symbol(a, -a, Place::finite(3)) == 1);
    if (a != 1) CHECK(hilbert_symbol(a, Rational(1) - a, Place::finite(5)) == 1);
  }
}

TEST_CASE("local isotropy of ternary and quaternary forms against brute force") {
  std::vector<std::vector<long>> forms{{1, 1, 1},  {1, -5, -17}, {1, 1, 1, 7}, {1, 1, 1, 1}, {1, -2, -3},
                                       {3, 5, -7}, {2, 3, 5, -1},  {1, -1, 3},  {6, 10, 15}, {-1, -1, -1, 3}};
  for (const auto& f : forms) {
    DiagonalForm F = form_of(f);
    for (long p : {2, 3, 5}) {
      CHECK_MESSAGE(is_isotropic_local(F, Place::finite(p)) == brute_isotropic(f, p), F.to_string(), " at ", p);
    }
    CHECK(is_isotropic_local(F, Place::real()) == brute_real(f));
  }
}

TEST_CASE("anisotropic place sets") {
  CHECK(anisotropic_places(DiagonalForm{1, 1, 1}) == std::vector<Place>{Place::finite(2), Place::real()});
  CHECK(anisotropic_places(DiagonalForm{1, -5, -17}) == std::vector<Place>{Place::finite(5), Place::finite(17)});
  CHECK(anisotropic_places(DiagonalForm{1, 1, 1, 7}) == std::vector<Place>{Place::real()});
  CHECK(anisotropic_places(DiagonalForm{1, 1, -1}).empty());
  CHECK(is_isotropic_over_Q(DiagonalForm{1, 1, -2}));
  CHECK_FALSE(is_isotropic_over_Q(DiagonalForm{1, 1, 1, 7}));
  // rank 5 and up is isotropic at every finite place
  CHECK(anisotropic_places(DiagonalForm{1, 1, 1, 1, 1}) == std::vector<Place>{Place::real()});
}

TEST_CASE("rational isotropic vectors") {
  DiagonalForm f{-778032, 1, 1, 1};
  auto v = find_isotropic_vector(f, Integer(1000));
  REQUIRE(v.has_value());
  CHECK(f.evaluate(*v) == 0);
  bool nonzero = false;
  for (const auto& x : *v) nonzero = nonzero || x != 0;
  CHECK(nonzero);
  CHECK_FALSE(find_isotropic_vector(DiagonalForm{1, 1, 1}, Integer(50)).has_value());
}

TEST_CASE("Albert forms") {
  // (-1,-1) (x) (-1,-1) is split; (-1,-1) (x) (-1,3) is a quaternion algebra
  CHECK(albert_form(-1, -1, -1, -1).rank() == 6);
  CHECK_FALSE(albert_is_division(-1, -1, -1, -1));
  CHECK_FALSE(albert_is_division(-1, -1, -1, 3));
  CHECK_FALSE(albert_is_division(2, 5, 3, 7));
}

TEST_CASE("the completion of Q(sqrt c) at 2") {
  CHECK_THROWS_WITH_AS(TwoAdicCompletion::of(17), doctest::Contains("congruent to 1 modulo 8"), std::invalid_argument);
  auto k = TwoAdicCompletion::of(10);
  CHECK(k.ramified);
  CHECK_FALSE(TwoAdicCompletion::of(5).ramified);
  CHECK(k.valuation(QuadFieldElement(2, 0, 10)) == 2);
  CHECK(k.valuation(QuadFieldElement(0, 1, 10)) == 1);
}

TEST_CASE("Hensel certificates for <1,1,1> over the 2-adic completions") {
  for (long c : {2, 3, 5, 6, 7, 10, 11, 13}) {
    std::vector<QuadFieldElement> ones(3, QuadFieldElement::rational(1, c));
    auto cert = is_isotropic_quadfield_at_two(ones, c);
    CHECK_MESSAGE(cert.isotropic(), "c = ", c);
    CHECK(cert.witness.has_value());
    CHECK(verify_local_certificate(ones, c, cert));
  }
}

TEST_CASE("an anisotropic quaternion norm form over Q_2(sqrt 10)") {
  // (5, sqrt 10) is nontrivial: 5 generates the unramified extension and
  // sqrt 10 is a uniformizer
  const Integer c = 10;
  QuadFieldElement s(0, 1, c);
  std::vector<QuadFieldElement> f{QuadFieldElement::rational(1, c), QuadFieldElement::rational(-5, c), -s,
                                  QuadFieldElement::rational(5, c) * s};
  auto cert = is_isotropic_quadfield_at_two(f, c);
  CHECK_FALSE(cert.isotropic());
  CHECK(verify_local_certificate(f, c, cert));
}

TEST_CASE("tampered certificates are rejected") {
  const Integer c = 10;
  std::vector<QuadFieldElement> ones(3, QuadFieldElement::rational(1, c));
  auto cert = is_isotropic_quadfield_at_two(ones, c);
  REQUIRE(cert.witness.has_value());
  auto bad = cert;
  bad.witness->vector[0].first += 1;
  bad.witness->vector[0].second += 1;
  CHECK_FALSE(verify_local_certificate(ones, c, bad));
  auto flipped = cert;
  flipped.status = LocalCertificate::Status::Anisotropic;
  CHECK_FALSE(verify_local_certificate(ones, c, flipped));
}
