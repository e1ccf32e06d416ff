#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerkit/ap_cache.hpp"
#include "brauerkit/curves.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace brauerkit;

namespace {

const WeierstrassCurve E67 = WeierstrassCurve::from_ints(0, 1, 1, -12, -21);

long mod(long x, long p) { return ((x % p) + p) % p; }

// Affine solutions of the long Weierstrass equation, plus the point at infinity.
long naive_count(const WeierstrassCurve& E, long p) {
  std::array<long, 5> a{};
  for (int i = 0; i < 5; ++i) a[i] = static_cast<long>(reduce_mod(E.coefficients()[i], p));
  long n = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) {
      long lhs = mod(y * y + a[0] * x * y + a[2] * y, p);
      long rhs = mod(((x + a[1]) * x % p + a[3]) * x + a[4], p);
      if (lhs == rhs) ++n;
    }
  return n;
}

// The E^5 point (80, 300) carried to its short model.
QuadPoint to_short(const ShortModel& m, const Point<Rational>& P, const WeierstrassCurve& E, const Integer& c) {
  Rational x = m.identity ? P.x : m.u * P.x + m.r;
  Rational y = m.identity ? P.y : m.s * (2 * P.y + E.a1() * P.x + E.a3());
  return {QuadFieldElement::rational(x, c), QuadFieldElement::rational(y, c)};
}

}  // namespace

TEST_CASE("invariants of the conductor-67 curve") {
  const auto& v = E67.invariants();
  CHECK(v.b2 == 4);
  CHECK(v.b4 == -24);
  CHECK(v.b6 == -83);
  CHECK(v.b8 == -227);
  CHECK(E67.discriminant() == -67);
  CHECK(E67.bad_primes() == std::vector<Integer>{67});
  auto m = short_model(E67);
  CHECK(m.p == -15984);
  CHECK(m.q == -778032);
  CHECK(m.discriminant() < 0);
  CHECK(WeierstrassCurve::parse("[0, 1, 1, -12, -21]") == E67);
  CHECK(E67.id() == "[0,1,1,-12,-21]");
  CHECK_THROWS_AS(WeierstrassCurve::parse("[0,0,0,0,0]"), std::invalid_argument);
  CHECK_THROWS_AS(WeierstrassCurve::parse("[1,2,3]"), std::invalid_argument);
}

TEST_CASE("point counts agree with naive enumeration") {
  std::vector<WeierstrassCurve> curves{E67, WeierstrassCurve::from_ints(0, -1, 1, -10, -20),
                                       WeierstrassCurve::from_ints(1, 0, 1, 4, -6),
                                       WeierstrassCurve::from_ints(0, 0, 0, 1, 1), quadratic_twist(E67, 10)};
  for (const auto& E : curves) {
    for (auto p : primes_up_to(200)) {
      if (!E.has_good_reduction(p)) continue;
      auto pc = count_points_mod_p(E, p);
      CHECK_MESSAGE(static_cast<long>(pc.order) == naive_count(E, p), E.id(), " at ", p);
      CHECK(pc.a_p == static_cast<long>(p) + 1 - static_cast<long>(pc.order));
      CHECK(pc.a_p * pc.a_p <= 4 * static_cast<long>(p));
    }
  }
  CHECK(count_points_mod_p(E67, 2).a_p == 2);
  CHECK(count_points_mod_p(E67, 3).a_p == -2);
  CHECK_THROWS_AS(count_points_mod_p(E67, 67), BadReduction);
  CHECK_THROWS_AS(count_points_mod_p(E67, 91), std::invalid_argument);
}

TEST_CASE("traces of quadratic twists pick up the quadratic character") {
  for (long d : {-1, 2, 5, 10, -3}) {
    auto Ed = quadratic_twist(E67, d);
    for (auto p : primes_up_to(300)) {
      if (p == 2 || (d % static_cast<long>(p)) == 0 || !E67.has_good_reduction(p)) continue;
      CHECK(count_points_mod_p(Ed, p).a_p == legendre_symbol(Integer(d), Integer(p)) * count_points_mod_p(E67, p).a_p);
    }
  }
  CHECK_THROWS_AS(quadratic_twist(E67, 4), std::invalid_argument);
}

TEST_CASE("group law over F_p") {
  std::mt19937 rng(17);
  for (std::uint64_t p : {5ull, 7ull, 101ull, 997ull}) {
    auto G = reduction_group(E67, p);
    auto pts = enumerate_points(G, p);
    CHECK(pts.size() == count_points_mod_p(E67, p).order);
    const Integer order(static_cast<unsigned long>(pts.size()));
    for (int i = 0; i < 40; ++i) {
      const auto& P = pts[rng() % pts.size()];
      const auto& Q = pts[rng() % pts.size()];
      const auto& R = pts[rng() % pts.size()];
      CHECK(G.contains(G.add(P, Q)));
      CHECK(G.equal(G.add(P, Q), G.add(Q, P)));
      CHECK(G.equal(G.add(G.add(P, Q), R), G.add(P, G.add(Q, R))));
      CHECK(G.add(P, G.negate(P)).infinity);
      CHECK(G.multiply(P, order).infinity);  // Lagrange
    }
  }
}

TEST_CASE("rational points on the twists") {
  auto E2 = quadratic_twist(E67, 2);
  auto Q = rational_group(E2);
  Point<Rational> P{Rational(340, 9), Rational(4328, 27), false};
  CHECK(Q.contains(P));
  for (int k = 2; k <= 12; ++k) {
    auto kP = Q.multiply(P, k);
    CHECK(Q.contains(kP));
    CHECK_FALSE(kP.infinity);
  }
  auto found = search_rational_points(E2, Integer(400));
  REQUIRE(found.size() == 2);
  CHECK(found[0].x == P.x);
  CHECK(naive_height(P) == 340);

  auto E5 = quadratic_twist(E67, 5);
  auto found5 = search_rational_points(E5, Integer(100));
  REQUIRE_FALSE(found5.empty());
  CHECK(found5[0].x == 80);
  for (const auto& R : found5) CHECK(rational_group(E5).contains(R));
  CHECK(search_rational_points(E67, Integer(300)).empty());
}

TEST_CASE("torsion certificates") {
  for (long t : {1, 2, 5, 10}) {
    auto Et = quadratic_twist(E67, t);
    auto cert = torsion_trivial_certificate(Et, 200);
    CHECK_MESSAGE(cert.certified, "t = ", t);
    CHECK(verify_torsion_certificate(Et, cert));
  }
  auto B = biquadratic_torsion_free(E67, 10, 2);
  CHECK(B.certified);
  CHECK(B.twists.size() == 4);

  // 11a1 has a rational 5-torsion point; 27a3 has 3-torsion; y^2 = x^3 - x has 2-torsion
  for (auto E : {WeierstrassCurve::from_ints(0, -1, 1, -10, -20), WeierstrassCurve::from_ints(0, 0, 1, 0, 0),
                 WeierstrassCurve::from_ints(0, 0, 0, -1, 0)}) {
    auto cert = torsion_trivial_certificate(E, 200);
    CHECK_FALSE(cert.certified);
    CHECK(cert.bound > 1);
  }

  auto cert = torsion_trivial_certificate(E67, 200);
  auto forged = cert;
  REQUIRE_FALSE(forged.counts.empty());
  forged.counts[0].order += 1;
  forged.counts[0].a_p -= 1;
  CHECK_FALSE(verify_torsion_certificate(E67, forged));
}

TEST_CASE("mod-2 image") {
  auto m = mod2_image(E67);
  CHECK(m.full());
  CHECK(m.discriminant == -9115276032);
  CHECK_FALSE(mod2_image_full(WeierstrassCurve::from_ints(0, 0, 0, -1, 0)));
  // x^3 - 2 is irreducible with discriminant -108
  auto cm = mod2_image(WeierstrassCurve::from_ints(0, 0, 0, 0, -2));
  CHECK(cm.cubic_irreducible);
  CHECK_FALSE(cm.discriminant_square);
  CHECK(cm.full());
}

TEST_CASE("mod-ell surjectivity witnesses") {
  for (std::uint64_t ell : {3, 5, 7, 11, 13}) {
    auto r = mod_l_surjectivity_witnesses(E67, ell, 10000);
    CHECK_MESSAGE(r.certified, "ell = ", ell);
    CHECK(verify_surjectivity_report(E67, r));
  }
  // negative controls: rational 3-torsion, rational 5-torsion, CM
  CHECK_FALSE(mod_l_surjectivity_witnesses(WeierstrassCurve::from_ints(0, 0, 1, 0, 0), 3, 2000).certified);
  CHECK_FALSE(mod_l_surjectivity_witnesses(WeierstrassCurve::from_ints(0, 0, 0, 0, 1), 3, 2000).certified);
  CHECK_FALSE(mod_l_surjectivity_witnesses(WeierstrassCurve::from_ints(0, -1, 1, -10, -20), 5, 2000).certified);
  CHECK_FALSE(mod_l_surjectivity_witnesses(WeierstrassCurve::from_ints(0, 0, 0, 0, 1), 5, 10000).certified);

  auto r = mod_l_surjectivity_witnesses(E67, 7, 10000);
  auto forged = r;
  REQUIRE(forged.w1.has_value());
  forged.w1->a_p += 1;
  CHECK_FALSE(verify_surjectivity_report(E67, forged));
}

TEST_CASE("the 3-division polynomial") {
  auto psi = three_division_polynomial(E67);
  CHECK(psi == Poly{-227, -249, -72, 4, 3});  // 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
}

namespace {

struct Setup {
  ShortModel m = short_model(E67);
  QuadPoint P{QuadFieldElement(182, 0, 2), QuadFieldElement(0, 1082, 2)};
  std::vector<Integer> gens{10, 2};
};

}  // namespace

TEST_CASE("positivity and the choice of b") {
  Setup s;
  CHECK(s.m.rhs(s.P.x) == s.P.y * s.P.y);
  auto b = choose_negative_abscissa(s.m, 182);
  REQUIRE(b.has_value());
  CHECK(*b == 0);
  auto tp = total_positivity_checks(s.m, QuadFieldElement(182, 0, 10), QuadFieldElement(0, 0, 10));
  CHECK(tp.a_totally_positive);
  CHECK(tp.b_totally_negative);
  CHECK(splits_completely(41, s.gens));
  CHECK_FALSE(splits_completely(7, s.gens));
}

TEST_CASE("non-divisibility certificates") {
  Setup s;
  for (std::uint64_t ell : {2, 3, 5, 7, 11, 13}) {
    auto cert = nondivisibility_certificate(s.m, s.P, s.gens, ell, 10000);
    CHECK_MESSAGE(cert.found, "ell = ", ell);
    CHECK(verify_nondivisibility(s.m, s.P, cert));
    CHECK_FALSE(reduction_in_multiple(s.m, s.P, cert.p, ell));
  }
  // 2P and 3P are divisible, so no prime can certify otherwise
  CurveGroup<QuadFieldElement> G({QuadFieldElement(0, 0, 2), QuadFieldElement(0, 0, 2), QuadFieldElement(0, 0, 2),
                                  QuadFieldElement::rational(s.m.p, 2), QuadFieldElement::rational(s.m.q, 2)},
                                 QuadFieldElement(0, 0, 2), QuadFieldElement(1, 0, 2));
  Point<QuadFieldElement> Pt{s.P.x, s.P.y, false};
  auto P2 = G.multiply(Pt, 2), P3 = G.multiply(Pt, 3);
  CHECK_FALSE(nondivisibility_certificate(s.m, {P2.x, P2.y}, s.gens, 2, 3000).found);
  CHECK_FALSE(nondivisibility_certificate(s.m, {P3.x, P3.y}, s.gens, 3, 3000).found);

  auto cert = nondivisibility_certificate(s.m, s.P, s.gens, 5, 10000);
  auto forged = cert;
  forged.p = 43;
  CHECK_FALSE(verify_nondivisibility(s.m, s.P, forged));
}

TEST_CASE("halving quartic and preimage integrality") {
  // x(R) is a root of the quartic attached to x(2R)
  auto E5 = quadratic_twist(E67, 5);
  auto m5 = short_model(E5);
  Point<Rational> R{Rational(80), Rational(300), false};
  QuadPoint Rs = to_short(m5, R, E5, 2);
  auto G = rational_group(m5.curve());
  Point<Rational> Rp{Rs.x.a(), Rs.y.a(), false};
  REQUIRE(G.contains(Rp));
  auto R2 = G.add(Rp, Rp);
  CHECK(halving_quartic(m5, R2.x)(Rp.x) == 0);

  Setup s;
  auto cert = preimage_integrality_n2(s.m, s.P, s.gens, 10000);
  CHECK(cert.found);
  CHECK(cert.y_step);
  CHECK(verify_integrality(s.m, s.P, cert));

  // [2]^{-1}(2P) contains P itself, so the quartic cannot be irreducible
  CurveGroup<QuadFieldElement> GK({QuadFieldElement(0, 0, 2), QuadFieldElement(0, 0, 2), QuadFieldElement(0, 0, 2),
                                   QuadFieldElement::rational(s.m.p, 2), QuadFieldElement::rational(s.m.q, 2)},
                                  QuadFieldElement(0, 0, 2), QuadFieldElement(1, 0, 2));
  auto P2 = GK.multiply({s.P.x, s.P.y, false}, 2);
  CHECK_FALSE(preimage_integrality_n2(s.m, {P2.x, P2.y}, s.gens, 3000).found);
}

TEST_CASE("a_p cache round trip") {
  auto path = (std::filesystem::temp_directory_path() / "brauerkit_cache_test.txt").string();
  std::filesystem::remove(path);
  {
    ApCache cache(path);
    cache.load();
    for (auto p : {2u, 3u, 5u, 7u, 11u}) count_points_mod_p(E67, p, &cache);
    CHECK(cache.size() == 5);
    cache.flush();
  }
  {
    ApCache cache(path);
    cache.load();
    CHECK(cache.size() == 5);
    CHECK(cache.recounted_on_load() >= 1);
    auto hit = cache.find(E67.id(), 5);
    REQUIRE(hit.has_value());
    CHECK(hit->a_p == 2);
  }
  auto rec = parse_cache_record(format_cache_record(E67.id(), count_points_mod_p(E67, 13)));
  CHECK(rec.first == E67.id());
  CHECK(rec.second.p == 13);
  CHECK_THROWS_AS(parse_cache_record("[0,1,1,-12,-21], 13, 12, 5"), CacheCorrupted);
  CHECK_THROWS_AS(parse_cache_record("garbage"), CacheCorrupted);

  // a wrong record that still satisfies a_p = p + 1 - N is caught by the recount
  {
    std::ofstream out(path, std::ios::trunc);
    out << kApCacheHeader << "\n" << format_cache_record(E67.id(), PointCount{5, 7, -1}) << "\n";
  }
  ApCache bad(path);
  CHECK_THROWS_AS(bad.load(), CacheCorrupted);
  std::filesystem::remove(path);
}
