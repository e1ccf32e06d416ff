#pragma once

// Elliptic curves over Q: invariants, short models, point counts, twists,
// torsion and Galois-image certificates, and the reduction certificates for a
// point defined over a quadratic field.

#include "brauerkit/arith.hpp"
#include "brauerkit/fp.hpp"
#include "brauerkit/poly.hpp"
#include "brauerkit/quad_field.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace brauerkit {

class ApCache;

struct CurveInvariants {
  Rational b2, b4, b6, b8, c4, c6, disc;
};

CurveInvariants compute_invariants(const std::array<Rational, 5>& a);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with nonzero discriminant.
class WeierstrassCurve {
 public:
  WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6);
  explicit WeierstrassCurve(const std::array<Rational, 5>& a);
  static WeierstrassCurve from_ints(long a1, long a2, long a3, long a4, long a6);
  /// Parses "[a1,a2,a3,a4,a6]".
  static WeierstrassCurve parse(const std::string& text);

  const std::array<Rational, 5>& coefficients() const { return a_; }
  const Rational& a1() const { return a_[0]; }
  const Rational& a2() const { return a_[1]; }
  const Rational& a3() const { return a_[2]; }
  const Rational& a4() const { return a_[3]; }
  const Rational& a6() const { return a_[4]; }
  const CurveInvariants& invariants() const { return inv_; }
  const Rational& discriminant() const { return inv_.disc; }

  bool is_integral() const;
  /// Primes dividing the discriminant or a coefficient denominator.
  std::vector<Integer> bad_primes(const FactorConfig& config = {}) const;
  bool has_good_reduction(std::uint64_t p) const;

  /// Canonical serialization "[a1,a2,a3,a4,a6]".
  std::string id() const;

  friend bool operator==(const WeierstrassCurve& x, const WeierstrassCurve& y) { return x.a_ == y.a_; }

 private:
  std::array<Rational, 5> a_;
  CurveInvariants inv_;
};

/// y^2 = x^3 + p x + q, reached from the long model by
/// x_s = u x + r, y_s = s (2y + a1 x + a3).
struct ShortModel {
  Rational p, q;
  Rational u = 1, r = 0, s = 1;
  bool identity = true;  // the long model was already short

  Rational discriminant() const { return -4 * p * p * p - 27 * q * q; }
  Poly cubic() const { return Poly(std::vector<Rational>{q, p, Rational(0), Rational(1)}); }
  Rational rhs(const Rational& x) const { return x * x * x + p * x + q; }
  QuadFieldElement rhs(const QuadFieldElement& x) const;
  WeierstrassCurve curve() const;
};

ShortModel short_model(const WeierstrassCurve& E);

// ---------------------------------------------------------------------------
// Group law over an arbitrary field type F (Rational, Fp, QuadFieldElement,
// FpExt).

template <class F>
struct Point {
  F x, y;
  bool infinity = false;
};

template <class F>
class CurveGroup {
 public:
  CurveGroup(std::array<F, 5> a, F zero, F one) : a_(std::move(a)), zero_(std::move(zero)), one_(std::move(one)) {}

  Point<F> identity() const { return {zero_, one_, true}; }
  Point<F> point(F x, F y) const { return {std::move(x), std::move(y), false}; }

  bool contains(const Point<F>& P) const {
    if (P.infinity) return true;
    const auto& [a1, a2, a3, a4, a6] = a_;
    return P.y * P.y + a1 * P.x * P.y + a3 * P.y == P.x * P.x * P.x + a2 * P.x * P.x + a4 * P.x + a6;
  }

  Point<F> negate(const Point<F>& P) const {
    if (P.infinity) return P;
    return {P.x, zero_ - P.y - a_[0] * P.x - a_[2], false};
  }

  Point<F> add(const Point<F>& P, const Point<F>& Q) const {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    const auto& [a1, a2, a3, a4, a6] = a_;
    F lambda = zero_, nu = zero_;
    if (P.x == Q.x) {
      F denom = P.y + P.y + a1 * P.x + a3;
      if (!(P.y == Q.y) || denom == zero_) return identity();
      F three = one_ + one_ + one_, two = one_ + one_;
      lambda = (three * P.x * P.x + two * a2 * P.x + a4 - a1 * P.y) / denom;
      nu = (zero_ - P.x * P.x * P.x + a4 * P.x + two * a6 - a3 * P.y) / denom;
    } else {
      lambda = (Q.y - P.y) / (Q.x - P.x);
      nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
    }
    F x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
    F y3 = zero_ - (lambda + a1) * x3 - nu - a3;
    return {x3, y3, false};
  }

  Point<F> multiply(const Point<F>& P, Integer m) const {
    Point<F> base = P, acc = identity();
    if (m < 0) {
      base = negate(P);
      m = -m;
    }
    while (m > 0) {
      if (mpz_odd_p(m.get_mpz_t())) acc = add(acc, base);
      base = add(base, base);
      m >>= 1;
    }
    return acc;
  }

  bool equal(const Point<F>& P, const Point<F>& Q) const {
    if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
    return P.x == Q.x && P.y == Q.y;
  }

  const std::array<F, 5>& coefficients() const { return a_; }

 private:
  std::array<F, 5> a_;
  F zero_, one_;
};

CurveGroup<Rational> rational_group(const WeierstrassCurve& E);
/// E over F_p; p must not divide a coefficient denominator.
CurveGroup<Fp> reduction_group(const WeierstrassCurve& E, std::uint64_t p);

/// Every point of E(F_p), the identity first, then by (x, y).
std::vector<Point<Fp>> enumerate_points(const CurveGroup<Fp>& G, std::uint64_t p);

// ---------------------------------------------------------------------------
// Point counts.

class BadReduction : public std::domain_error {
 public:
  BadReduction(const std::string& what, std::vector<Integer> primes)
      : std::domain_error(what), bad_primes(std::move(primes)) {}
  std::vector<Integer> bad_primes;
};

struct PointCount {
  std::uint64_t p = 0;
  std::uint64_t order = 0;
  long a_p = 0;
};

inline constexpr std::uint64_t kMaxCountPrime = 100000;

/// #E(F_p) by the quadratic-character sum (direct enumeration at p = 2).
/// Throws BadReduction at bad p and std::invalid_argument above
/// kMaxCountPrime or when p is not prime.
PointCount count_points_mod_p(const WeierstrassCurve& E, std::uint64_t p, ApCache* cache = nullptr);

/// Z^2 = X^3 + d b2 X^2 + 8 d^2 b4 X + 16 d^3 b6; E itself for d = 1.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, const Integer& d);

// ---------------------------------------------------------------------------
// Torsion.

struct TorsionCertificate {
  std::string curve_id;
  std::vector<PointCount> counts;  // good primes used, ascending
  /// The 2-division cubic has no rational root.
  bool no_rational_two_torsion = false;
  /// Proven multiple of #E(Q)_tors.
  Integer bound = 0;
  bool certified = false;
  std::uint64_t prime_bound = 0;
};

/// Reduction at a good prime p injects the prime-to-p torsion, and all of it
/// for odd p. The bound combines the orders at odd good primes, the odd part
/// at p = 2, and the absence of rational 2-torsion.
TorsionCertificate torsion_trivial_certificate(const WeierstrassCurve& E, std::uint64_t prime_bound = 200,
                                               ApCache* cache = nullptr);
bool verify_torsion_certificate(const WeierstrassCurve& E, const TorsionCertificate& cert);

struct BiquadraticCertificate {
  Integer c, d;
  /// Twist parameters checked: 1 (E itself) and the distinct nontrivial
  /// squarefree classes among c, d, cd.
  std::vector<Integer> twists;
  std::vector<TorsionCertificate> certificates;
  bool certified = false;
};

/// E(Q(sqrt c, sqrt d)) is torsion-free if E^t(Q) is for every t in
/// {1, c, d, cd} (two applications of 0 -> E^d(k) -> E(k(sqrt d)) -> E(k)).
BiquadraticCertificate biquadratic_torsion_free(const WeierstrassCurve& E, const Integer& c, const Integer& d,
                                                std::uint64_t prime_bound = 200, ApCache* cache = nullptr);

// ---------------------------------------------------------------------------
// Rational points.

/// Affine points with x = m/e^2, gcd(m, e) = 1, |m| <= bound, 1 <= e <= bound,
/// ordered by (e, m) and then y. Requires integral coefficients.
std::vector<Point<Rational>> search_rational_points(const WeierstrassCurve& E, const Integer& height_bound);

/// max(|num x|, den x).
Integer naive_height(const Point<Rational>& P);

// ---------------------------------------------------------------------------
// Galois images.

struct Mod2Image {
  bool cubic_irreducible = false;
  Rational discriminant;  // of the short cubic
  bool discriminant_square = false;
  std::vector<Rational> rational_roots;
  bool full() const { return cubic_irreducible && !discriminant_square; }
};

Mod2Image mod2_image(const WeierstrassCurve& E);

/// 3 x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8.
Poly three_division_polynomial(const WeierstrassCurve& E);
/// Whether the 3-division polynomial mod p (p good, p != 3) is squarefree
/// with exactly one root in F_p.
bool three_division_has_cubic_factor(const WeierstrassCurve& E, std::uint64_t p);
inline bool mod2_image_full(const WeierstrassCurve& E) { return mod2_image(E).full(); }

struct SurjectivityWitness {
  std::uint64_t p = 0;
  long a_p = 0;
};

struct SurjectivityWitnessReport {
  std::uint64_t ell = 0;
  std::uint64_t prime_bound = 0;
  std::optional<SurjectivityWitness> w1, w2, w3;  // w3 unused for ell = 3
  std::size_t primes_scanned = 0;
  bool certified = false;
};

/// W1: a_p != 0 with a_p^2 - 4p a nonzero square mod ell; W2: a_p != 0 with
/// a_p^2 - 4p a nonsquare; W3: u = a_p^2/p not in {0, 1, 2, 4} with
/// u^2 - 3u + 1 != 0. Certified when every class occurs.
///
/// For ell = 3 a nonzero square discriminant is impossible when p != 3, and
/// traces cannot separate an element of order 3 from a scalar. There W1 is a
/// prime with a_p != 0 at which the 3-division quartic factors as 1 + 3 mod p
/// (a 3-cycle in PGL_2(F_3) = S_4); with the 4-cycle from W2 the projective
/// image is S_4, which forces the full GL_2(F_3).
SurjectivityWitnessReport mod_l_surjectivity_witnesses(const WeierstrassCurve& E, std::uint64_t ell,
                                                       std::uint64_t prime_bound = 10000,
                                                       ApCache* cache = nullptr);
bool verify_surjectivity_report(const WeierstrassCurve& E, const SurjectivityWitnessReport& report);

// ---------------------------------------------------------------------------
// A point on a short model with coordinates in a multiquadratic field K,
// recorded as elements of one quadratic subfield Q(sqrt d).

struct QuadPoint {
  QuadFieldElement x, y;
};

/// Rational primes p >= 5 of good reduction at which every generator of K is
/// a nonzero square: the primes of K above p have residue field F_p.
bool splits_completely(std::uint64_t p, const std::vector<Integer>& field_generators);

/// Image of a + b sqrt(d) in F_p with sqrt(d) -> the smaller root.
Fp reduce_quad(const QuadFieldElement& z, std::uint64_t p);

struct NondivisibilityCertificate {
  std::uint64_t ell = 0;
  std::uint64_t prime_bound = 0;
  bool found = false;
  std::uint64_t p = 0;
  std::uint64_t sqrt_d = 0;
  std::uint64_t reduced_x = 0, reduced_y = 0;
  std::uint64_t group_order = 0;
  std::size_t primes_tried = 0;
  std::size_t primes_skipped = 0;  // ell does not divide #E(F_p)
};

/// Searches split primes p for which the reduction of P is not in ell E(F_p).
NondivisibilityCertificate nondivisibility_certificate(const ShortModel& model, const QuadPoint& P,
                                                       const std::vector<Integer>& field_generators,
                                                       std::uint64_t ell, std::uint64_t prime_bound = 10000);
bool verify_nondivisibility(const ShortModel& model, const QuadPoint& P, const NondivisibilityCertificate& cert);

/// Whether the reduction of P mod p lies in ell E(F_p) (p split, good).
bool reduction_in_multiple(const ShortModel& model, const QuadPoint& P, std::uint64_t p, std::uint64_t ell);

/// The quartic x^4 - 2p x^2 - 8q x + p^2 - 4 x_P (x^3 + p x + q) whose roots are
/// the x(Q) with 2Q = P. Requires x(P) rational.
Poly halving_quartic(const ShortModel& model, const Rational& xP);

struct IntegralityCertificate {
  std::vector<Rational> quartic;  // constant term first
  std::uint64_t prime_bound = 0;
  bool found = false;
  std::uint64_t p = 0;
  std::uint64_t sqrt_d = 0;
  /// In F_p[X]/(quartic): y(X) = ((3X^2 + p)(X - x_P) - 2 r(X)) / (2 y_P)
  /// satisfies y^2 = r(X) and doubles to the reduction of P.
  bool y_step = false;
  std::vector<std::uint64_t> y_coefficients;
  std::size_t primes_tried = 0;
};

IntegralityCertificate preimage_integrality_n2(const ShortModel& model, const QuadPoint& P,
                                               const std::vector<Integer>& field_generators,
                                               std::uint64_t prime_bound = 10000);
bool verify_integrality(const ShortModel& model, const QuadPoint& P, const IntegralityCertificate& cert);

// ---------------------------------------------------------------------------

struct PositivityCheck {
  QuadFieldElement value;
  int sign0 = 0, sign1 = 0;  // both real embeddings
};

struct TotalPositivity {
  PositivityCheck r_a, r_b;
  bool a_totally_positive = false;
  bool b_totally_negative = false;
};

/// Signs of r(a) and r(b) under both real embeddings of Q(sqrt c), c > 0.
TotalPositivity total_positivity_checks(const ShortModel& model, const QuadFieldElement& a,
                                        const QuadFieldElement& b);

/// The rational of least height (0, then +-1, +-1/2, +-2, ...) with r(b) < 0
/// and b != a; nullopt if none has height <= max_height.
std::optional<Rational> choose_negative_abscissa(const ShortModel& model, const Rational& a,
                                                 long max_height = 1000);

}  // namespace brauerkit
