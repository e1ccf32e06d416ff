#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerkit/cohomology.hpp"
#include "cohomology_oracle.hpp"

#include <set>

using namespace brauerkit;

namespace {

std::set<oracle::Mat> as_set(const FiniteMatrixGroup& G) {
  std::set<oracle::Mat> s;
  for (const auto& g : G.elements()) s.insert({g.a(), g.b(), g.c(), g.d()});
  return s;
}

std::vector<oracle::Mat> as_list(const FiniteMatrixGroup& G) {
  std::vector<oracle::Mat> out;
  for (const auto& g : G.elements()) out.push_back({g.a(), g.b(), g.c(), g.d()});
  return out;
}

std::vector<std::int64_t> elementary_divisors(const CohomologyGroup& H) {
  std::vector<std::int64_t> out;
  for (const auto& f : H.invariant_factors) {
    std::int64_t n = f.get_si();
    for (std::int64_t p = 2; n > 1; ++p) {
      std::int64_t q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      if (q > 1) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ModMatrix M(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n) { return {a, b, c, d, n}; }

}  // namespace

TEST_CASE("group enumeration matches brute force") {
  for (std::int64_t n = 2; n <= 8; ++n) {
    auto s = sl2(n);
    auto brute = oracle::sl2_brute(n);
    CHECK(as_set(s) == std::set<oracle::Mat>(brute.begin(), brute.end()));
    auto sp = sl2_plus(n);
    auto bp = oracle::sl2_plus_brute(n);
    CHECK(as_set(sp) == std::set<oracle::Mat>(bp.begin(), bp.end()));
    CHECK(sp.order() * (n % 2 == 0 ? 2 : 1) == s.order());
    if (n <= 6) {
      auto g = gl2(n);
      auto bg = oracle::gl2_brute(n);
      CHECK(as_set(g) == std::set<oracle::Mat>(bg.begin(), bg.end()));
    }
  }
  CHECK(sl2_plus(16).order() == 1536);
  CHECK(sl2(5).order() == 120);
  CHECK_THROWS_AS(gl2(16, 5000), GroupCapExceeded);
}

TEST_CASE("signature character") {
  CHECK(signature_character(M(0, 1, 1, 0, 2)) == -1);
  CHECK(signature_character(M(1, 1, 1, 0, 2)) == 1);
  CHECK(signature_character(M(1, 1, 0, 1, 4)) == -1);
  CHECK(signature_character(ModMatrix::identity(6)) == 1);
}

TEST_CASE("fixed points vanish") {
  for (std::int64_t n = 2; n <= 16; ++n) {
    auto G = sl2_plus(n);
    auto fixed = h0(G);
    REQUIRE(fixed.size() == 1);
    CHECK(fixed[0] == Vec2{0, 0});
  }
  auto U = generate_group(6, {M(1, 1, 0, 1, 6)});
  CHECK(h0(U).size() == 6);  // the first basis vector is fixed
}

TEST_CASE("H^1 agrees with the full-function-space computation on small groups") {
  std::vector<FiniteMatrixGroup> groups{
      sl2(2), sl2_plus(2), sl2(3), gl2(3), sl2(4), sl2_plus(4), gl2(2),
      generate_group(4, {M(3, 0, 0, 3, 4)}),                          // -1 on (Z/4)^2
      generate_group(5, {M(2, 0, 0, 3, 5), M(1, 1, 0, 1, 5)}),        // Borel of SL_2(F_5)
      generate_group(3, {M(2, 0, 0, 1, 3), M(1, 1, 0, 1, 3)}),        // Borel of GL_2(F_3)
      generate_group(5, {M(2, 0, 0, 1, 5), M(1, 0, 0, 2, 5)}),        // split torus mod 5
      generate_group(7, {M(3, 0, 0, 5, 7), M(1, 1, 0, 1, 7)}),        // Borel of SL_2(F_7)
      generate_group(8, {M(1, 1, 0, 1, 8), M(7, 0, 0, 7, 8)}),
      generate_group(3, {M(0, 1, 2, 0, 3), M(1, 1, 1, 2, 3)}),        // quaternion group in SL_2(F_3)
      generate_group(6, {ModMatrix::identity(6)}),
      generate_group(9, {M(1, 3, 0, 1, 9), M(1, 0, 3, 1, 9)}),
      generate_group(12, {M(5, 0, 0, 5, 12), M(7, 0, 0, 1, 12)}),
  };
  for (std::int64_t n = 2; n <= 12; ++n) groups.push_back(generate_group(n, {M(1, 1, 0, 1, n)}));
  for (const auto& G : groups) {
    REQUIRE(G.order() <= 60);
    auto H = h1(G);
    auto got = elementary_divisors(H);
    auto want = oracle::h1_elementary_divisors(as_list(G), G.modulus());
    CHECK_MESSAGE(got == want, "n = ", G.modulus(), ", |G| = ", G.order(), ", H^1 = ", H.to_string());
    for (const auto& c : H.representatives) CHECK(is_cocycle(G, c));
  }
}

TEST_CASE("H^1 of SL_2 at odd prime powers") {
  for (std::int64_t m : {3, 5, 7, 9}) CHECK(h1(sl2(m)).is_trivial());
}

TEST_CASE("exponent bound at powers of two") {
  for (int r = 1; r <= 4; ++r) {
    std::int64_t n = std::int64_t{1} << r;
    auto H = h1(sl2_plus(n));
    CHECK(Integer(n / 2) % H.exponent() == 0);
  }
  CHECK_FALSE(h1(sl2_plus(4)).is_trivial());  // the bound is not vacuous
}

TEST_CASE("cocycle checks reject perturbations") {
  auto G = generate_group(4, {M(3, 0, 0, 3, 4)});
  auto H = h1(G);
  REQUIRE_FALSE(H.representatives.empty());
  auto c = H.representatives[0];
  CHECK(is_cocycle(G, c));
  c[G.index_of(ModMatrix::identity(4))] = {1, 0};
  CHECK_FALSE(is_cocycle(G, c));
}

TEST_CASE("restriction maps") {
  auto G = gl2(6);
  auto H = sl2_plus(6);
  CHECK(is_normal_subgroup(G, H));
  CHECK(h1_restriction_injectivity(G, H));
  auto U = generate_group(6, {M(1, 1, 0, 1, 6)});
  CHECK_THROWS_AS(h1_restriction_injectivity(sl2(6), U), PreconditionViolated);

  auto S = sl2_plus(6);
  auto G2 = subgroup_where(S, [](const ModMatrix& g) { return g.reduce(3) == ModMatrix::identity(3); });
  auto G3 = subgroup_where(S, [](const ModMatrix& g) { return g.reduce(2) == ModMatrix::identity(2); });
  CHECK(G2.order() * G3.order() == S.order());
  CHECK(restriction_jointly_injective(S, {{G2, 3}, {G3, 4}}));
}
