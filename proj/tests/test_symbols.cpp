#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerkit/symbols.hpp"

#include <random>

using namespace brauerkit;

namespace {

RatFunc lin(long t) { return RatFunc(Poly::linear(t)); }
RatFunc cst(long c) { return RatFunc::constant(c); }

bool same_class(const Rational& a, const Rational& b) { return is_square(a * b); }

}  // namespace

TEST_CASE("valuations and unit values") {
  RatFunc f(Poly::linear(2) * Poly::linear(2), Poly::linear(-1));
  CHECK(valuation_at(f, ClosedPoint::rational(2)) == 2);
  CHECK(valuation_at(f, ClosedPoint::rational(-1)) == -1);
  CHECK(valuation_at(f, ClosedPoint::infinity()) == -1);
  CHECK(unit_value_at(f, ClosedPoint::rational(2)) == Rational(1, 3));
  CHECK(unit_value_at(f, ClosedPoint::infinity()) == 1);
}

TEST_CASE("closed points") {
  CHECK_THROWS_AS(ClosedPoint::affine(Poly{-1, 0, 1}), std::invalid_argument);  // x^2 - 1 is reducible
  auto q = ClosedPoint::affine(Poly{-2, 0, 1});
  CHECK(q.degree() == 2);
  CHECK(q.quadratic_root() * q.quadratic_root() == QuadFieldElement::rational(2, 2));
  CHECK(ClosedPoint::rational(0) < ClosedPoint::infinity());
}

TEST_CASE("residues of (x, 3)") {
  Symbol s{lin(0), cst(3)};
  auto r0 = tame_residue(s, ClosedPoint::rational(0));
  CHECK_FALSE(r0.trivial);
  CHECK(same_class(r0.representative, 3));
  auto rinf = tame_residue(s, ClosedPoint::infinity());
  CHECK_FALSE(rinf.trivial);
  CHECK(same_class(rinf.representative, 3));
  CHECK(tame_residue(s, ClosedPoint::rational(5)).trivial);
  SymbolAlgebra A({s});
  CHECK(ramification_locus(A) == std::vector<ClosedPoint>{ClosedPoint::rational(0), ClosedPoint::infinity()});
  CHECK(ramification_locus(A, BaseField{{3}}).empty());
}

TEST_CASE("residues of (x, x - 1) by hand") {
  // at 0: (x-1)^{-1} -> -1; at 1: x -> 1; at infinity: -(x-1)/x -> -1
  Symbol s{lin(0), lin(1)};
  auto r0 = tame_residue(s, ClosedPoint::rational(0));
  CHECK(same_class(r0.representative, -1));
  CHECK(tame_residue(s, ClosedPoint::rational(1)).trivial);
  auto ri = tame_residue(s, ClosedPoint::infinity());
  CHECK(same_class(ri.representative, -1));
  CHECK(ramification_locus(SymbolAlgebra({s}), BaseField{{2}}).size() == 2);
  CHECK(ramification_locus(SymbolAlgebra({s}), BaseField{{-1}}).empty());
}

TEST_CASE("a residue over a quadratic residue field") {
  Symbol s{RatFunc(Poly{-2, 0, 1}), cst(3)};
  auto pt = ClosedPoint::affine(Poly{-2, 0, 1});
  auto r = tame_residue(s, pt);
  CHECK_FALSE(r.trivial);  // 3 is not a square in Q(sqrt 2)
  CHECK(tame_residue(s, pt, BaseField{{3}}).trivial);
  CHECK(tame_residue(Symbol{RatFunc(Poly{-2, 0, 1}), cst(2)}, pt).trivial);
  CHECK(tame_residue(s, ClosedPoint::infinity()).trivial);  // even valuation
}

TEST_CASE("residues are bimultiplicative") {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    long t1 = static_cast<long>(rng() % 7) - 3, t2 = static_cast<long>(rng() % 7) - 3;
    long c1 = static_cast<long>(rng() % 11) - 5, c2 = static_cast<long>(rng() % 11) - 5;
    if (c1 == 0) c1 = 7;
    if (c2 == 0) c2 = -3;
    RatFunc f = lin(t1) * cst(c1), g = lin(t2) * cst(c2), h = lin(t1 + 5) * cst(c2);
    for (long pt : {t1, t2, t1 + 5}) {
      auto P = ClosedPoint::rational(pt);
      auto gh = tame_residue(Symbol{f, g * h}, P);
      auto a = tame_residue(Symbol{f, g}, P), b = tame_residue(Symbol{f, h}, P);
      CHECK(same_class(gh.representative, a.representative * b.representative));
    }
    auto P = ClosedPoint::infinity();
    CHECK(tame_residue(Symbol{f, f}, P).trivial == tame_residue(Symbol{f, cst(-1)}, P).trivial);
  }
}

TEST_CASE("specialization at unramified points") {
  SymbolAlgebra A({Symbol{lin(0), cst(3)}});
  auto v = value_at_point(A, ClosedPoint::rational(2));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == std::pair<Integer, Integer>{2, 3});
  CHECK(value_at_point(A, ClosedPoint::rational(4)).empty());
  CHECK_THROWS_AS(value_at_point(A, ClosedPoint::rational(0)), RamifiedPointError);
  SymbolAlgebra B({Symbol{RatFunc(Poly::linear(1), Poly::linear(2)), cst(5)}, Symbol{cst(-1), cst(-1)}});
  auto inf = value_at_point(B, ClosedPoint::infinity());
  REQUIRE(inf.size() == 1);  // (1, 5) drops out
  CHECK(inf[0] == std::pair<Integer, Integer>{-1, -1});
}

TEST_CASE("residues pulled back to a double cover") {
  SymbolAlgebra A({Symbol{lin(0), cst(3)}});
  auto split_field = pullback_residue_to_curve(A, Poly{3, 1}, 0);  // y^2 = x + 3 above x = 0: Q(sqrt 3)
  CHECK(split_field.radicand == 3);
  CHECK(split_field.trivial);
  auto rational_point = pullback_residue_to_curve(A, Poly{1, 1}, 0);  // y^2 = x + 1: Q
  CHECK_FALSE(rational_point.trivial);
  CHECK_THROWS(pullback_residue_to_curve(A, Poly{0, 1}, 0));  // branch point
}
