#include "brauerkit/curves.hpp"

#include "brauerkit/ap_cache.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace brauerkit {

CurveInvariants compute_invariants(const std::array<Rational, 5>& a) {
  const auto& [a1, a2, a3, a4, a6] = a;
  CurveInvariants v;
  v.b2 = a1 * a1 + 4 * a2;
  v.b4 = 2 * a4 + a1 * a3;
  v.b6 = a3 * a3 + 4 * a6;
  v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
  return v;
}

WeierstrassCurve::WeierstrassCurve(const std::array<Rational, 5>& a) : a_(a), inv_(compute_invariants(a)) {
  if (inv_.disc == 0) throw std::invalid_argument("singular Weierstrass equation " + id());
}

WeierstrassCurve::WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
    : WeierstrassCurve(std::array<Rational, 5>{a1, a2, a3, a4, a6}) {}

WeierstrassCurve WeierstrassCurve::from_ints(long a1, long a2, long a3, long a4, long a6) {
  return WeierstrassCurve(a1, a2, a3, a4, a6);
}

WeierstrassCurve WeierstrassCurve::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s += ch;
  }
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw std::invalid_argument("curve must be written [a1,a2,a3,a4,a6], got '" + text + "'");
  }
  std::array<Rational, 5> a;
  std::stringstream in(s.substr(1, s.size() - 2));
  std::string item;
  std::size_t k = 0;
  while (std::getline(in, item, ',')) {
    if (k == 5) throw std::invalid_argument("curve has more than five coefficients: '" + text + "'");
    a[k++] = parse_rational(item);
  }
  if (k != 5) throw std::invalid_argument("curve needs five coefficients: '" + text + "'");
  return WeierstrassCurve(a);
}

bool WeierstrassCurve::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

std::vector<Integer> WeierstrassCurve::bad_primes(const FactorConfig& config) const {
  std::vector<Integer> out = support_primes(inv_.disc, config);
  for (const auto& x : a_) {
    if (x == 0) continue;
    for (const auto& p : support_primes(Rational(x.get_den()), config)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool WeierstrassCurve::has_good_reduction(std::uint64_t p) const {
  Integer P(static_cast<unsigned long>(p));
  for (const auto& x : a_) {
    if (mpz_divisible_p(x.get_den_mpz_t(), P.get_mpz_t())) return false;
  }
  return !mpz_divisible_p(inv_.disc.get_num_mpz_t(), P.get_mpz_t());
}

std::string WeierstrassCurve::id() const {
  std::string out = "[";
  for (std::size_t i = 0; i < 5; ++i) {
    if (i) out += ",";
    out += to_string(a_[i]);
  }
  return out + "]";
}

QuadFieldElement ShortModel::rhs(const QuadFieldElement& x) const {
  const Integer& c = x.c();
  return x * x * x + QuadFieldElement::rational(p, c) * x + QuadFieldElement::rational(q, c);
}

WeierstrassCurve ShortModel::curve() const { return WeierstrassCurve(0, 0, 0, p, q); }

ShortModel short_model(const WeierstrassCurve& E) {
  ShortModel m;
  if (E.a1() == 0 && E.a2() == 0 && E.a3() == 0) {
    m.p = E.a4();
    m.q = E.a6();
    return m;
  }
  // x_s = 36x + 3 b2, y_s = 108 (2y + a1 x + a3) clears every denominator
  const auto& v = E.invariants();
  m.p = -27 * v.c4;
  m.q = -54 * v.c6;
  m.u = 36;
  m.r = 3 * v.b2;
  m.s = 108;
  m.identity = false;
  return m;
}

CurveGroup<Rational> rational_group(const WeierstrassCurve& E) {
  return CurveGroup<Rational>(E.coefficients(), Rational(0), Rational(1));
}

CurveGroup<Fp> reduction_group(const WeierstrassCurve& E, std::uint64_t p) {
  std::array<Fp, 5> a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = Fp::from(E.coefficients()[i], p);
  return CurveGroup<Fp>(a, Fp(0, p), Fp(1, p));
}

std::vector<Point<Fp>> enumerate_points(const CurveGroup<Fp>& G, std::uint64_t p) {
  std::vector<Point<Fp>> out{G.identity()};
  const auto& [a1, a2, a3, a4, a6] = G.coefficients();
  if (p == 2) {
    for (std::uint64_t x = 0; x < 2; ++x) {
      for (std::uint64_t y = 0; y < 2; ++y) {
        auto P = G.point(Fp(x, p), Fp(y, p));
        if (G.contains(P)) out.push_back(P);
      }
    }
    return out;
  }
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  const Fp two(2, p), four(4, p);
  const Fp b2 = a1 * a1 + four * a2, b4 = two * a4 + a1 * a3, b6 = a3 * a3 + four * a6;
  const Fp half = two.inverse();
  for (std::uint64_t xv = 0; xv < p; ++xv) {
    Fp x(xv, p);
    Fp t = four * x * x * x + b2 * x * x + two * b4 * x + b6;
    auto s = sqrt_mod(t.value(), p);
    if (!s) continue;
    Fp shift = a1 * x + a3;
    std::vector<std::uint64_t> ys{((Fp(*s, p) - shift) * half).value()};
    if (*s != 0) ys.push_back(((Fp(p - *s, p) - shift) * half).value());
    std::sort(ys.begin(), ys.end());
    for (auto y : ys) out.push_back(G.point(x, Fp(y, p)));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_countable_prime(const WeierstrassCurve& E, std::uint64_t p) {
  if (p > kMaxCountPrime) {
    throw std::invalid_argument("point count: p = " + std::to_string(p) + " exceeds " +
                                std::to_string(kMaxCountPrime));
  }
  if (p < 2 || !is_prime(Integer(static_cast<unsigned long>(p)))) {
    throw std::invalid_argument("point count: " + std::to_string(p) + " is not prime");
  }
  if (!E.has_good_reduction(p)) {
    std::vector<Integer> bad = E.bad_primes();
    std::string list;
    for (const auto& q : bad) list += (list.empty() ? "" : ", ") + q.get_str();
    throw BadReduction("point count: " + E.id() + " has bad reduction at " + std::to_string(p) +
                           " (bad primes: " + list + ")",
                       bad);
  }
}

std::uint64_t count_by_character_sum(const WeierstrassCurve& E, std::uint64_t p) {
  if (p == 2) return enumerate_points(reduction_group(E, 2), 2).size();
  const auto& v = E.invariants();
  const std::uint64_t b2 = reduce_mod(v.b2, p), b4 = reduce_mod(v.b4, p), b6 = reduce_mod(v.b6, p);
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
  // #E = p + 1 + sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6)
  long sum = 0;
  const std::uint64_t c3 = 4 % p, c1 = 2 * b4 % p;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t t = ((c3 * x + b2) % p * x + c1) % p * x % p;
    sum += chi[(t + b6) % p];
  }
  return static_cast<std::uint64_t>(static_cast<long>(p) + 1 + sum);
}

}  // namespace

PointCount count_points_mod_p(const WeierstrassCurve& E, std::uint64_t p, ApCache* cache) {
  require_countable_prime(E, p);
  const std::string id = cache ? E.id() : std::string();
  if (cache) {
    if (auto hit = cache->find(id, p)) return *hit;
  }
  PointCount c;
  c.p = p;
  c.order = count_by_character_sum(E, p);
  c.a_p = static_cast<long>(p) + 1 - static_cast<long>(c.order);
  if (cache) cache->insert(id, c);
  return c;
}

WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, const Integer& d) {
  if (d == 0 || squarefree_part(d) != d) {
    throw std::invalid_argument("twist parameter must be squarefree and nonzero, got " + d.get_str());
  }
  if (d == 1) return E;
  const auto& v = E.invariants();
  Rational D(d);
  return WeierstrassCurve(0, D * v.b2, 0, 8 * D * D * v.b4, 16 * D * D * D * v.b6);
}

// ---------------------------------------------------------------------------

namespace {

Integer odd_part(Integer n) {
  if (n == 0) return 0;
  while (mpz_even_p(n.get_mpz_t())) n /= 2;
  return n;
}

// 0 when the counts do not yet bound the torsion.
Integer torsion_bound(const std::vector<PointCount>& counts, bool no_two_torsion) {
  Integer g = 0, odd2 = 0;
  bool have2 = false;
  for (const auto& c : counts) {
    Integer n(static_cast<unsigned long>(c.order));
    if (c.p == 2) {
      have2 = true;
      odd2 = odd_part(n);
    } else {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
  }
  // T divides g, odd(T) divides odd(N_2), and T is odd without rational 2-torsion
  long e2 = -1;
  if (g != 0) e2 = static_cast<long>(mpz_scan1(g.get_mpz_t(), 0));
  if (no_two_torsion) e2 = 0;
  Integer odd = g != 0 ? odd_part(g) : Integer(0);
  if (have2) {
    if (odd == 0) {
      odd = odd2;
    } else {
      mpz_gcd(odd.get_mpz_t(), odd.get_mpz_t(), odd2.get_mpz_t());
    }
  }
  if (e2 < 0 || odd == 0) return 0;
  Integer out = odd;
  mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(e2));
  return out;
}

bool has_rational_two_torsion(const WeierstrassCurve& E) {
  return !rational_roots(short_model(E).cubic()).empty();
}

}  // namespace

TorsionCertificate torsion_trivial_certificate(const WeierstrassCurve& E, std::uint64_t prime_bound,
                                               ApCache* cache) {
  TorsionCertificate cert;
  cert.curve_id = E.id();
  cert.prime_bound = prime_bound;
  cert.no_rational_two_torsion = !has_rational_two_torsion(E);
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(prime_bound))) {
    if (!E.has_good_reduction(p)) continue;
    cert.counts.push_back(count_points_mod_p(E, p, cache));
    cert.bound = torsion_bound(cert.counts, cert.no_rational_two_torsion);
    if (cert.bound == 1) break;
  }
  cert.certified = cert.bound == 1;
  return cert;
}

bool verify_torsion_certificate(const WeierstrassCurve& E, const TorsionCertificate& cert) {
  if (cert.curve_id != E.id()) return false;
  if (cert.no_rational_two_torsion == has_rational_two_torsion(E)) return false;
  for (const auto& c : cert.counts) {
    if (c.p > cert.prime_bound || !E.has_good_reduction(c.p)) return false;
    if (count_points_mod_p(E, c.p).order != c.order) return false;
  }
  Integer b = torsion_bound(cert.counts, cert.no_rational_two_torsion);
  return b == cert.bound && cert.certified == (b == 1);
}

BiquadraticCertificate biquadratic_torsion_free(const WeierstrassCurve& E, const Integer& c, const Integer& d,
                                                std::uint64_t prime_bound, ApCache* cache) {
  BiquadraticCertificate out;
  out.c = c;
  out.d = d;
  out.twists.push_back(1);
  for (const Integer& t : {squarefree_part(c), squarefree_part(d), squarefree_part(Integer(c * d))}) {
    if (t != 1 && std::find(out.twists.begin(), out.twists.end(), t) == out.twists.end()) out.twists.push_back(t);
  }
  out.certified = true;
  for (const auto& t : out.twists) {
    out.certificates.push_back(torsion_trivial_certificate(quadratic_twist(E, t), prime_bound, cache));
    out.certified = out.certified && out.certificates.back().certified;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// 2^6 * 3^2 * 5 * 7 * 11 * 13: squares modulo each factor
constexpr std::uint64_t kSieveModulus = 2882880;

const std::vector<bool>& residue_square_table() {
  static const std::vector<bool> table = [] {
    auto squares = [](std::uint64_t m) {
      std::vector<bool> s(m, false);
      for (std::uint64_t y = 0; y < m; ++y) s[y * y % m] = true;
      return s;
    };
    const std::uint64_t mods[] = {64, 9, 5, 7, 11, 13};
    std::vector<std::vector<bool>> sq;
    for (auto m : mods) sq.push_back(squares(m));
    std::vector<bool> t(kSieveModulus);
    for (std::uint64_t r = 0; r < kSieveModulus; ++r) {
      bool ok = true;
      for (std::size_t i = 0; i < sq.size() && ok; ++i) ok = sq[i][r % mods[i]];
      t[r] = ok;
    }
    return t;
  }();
  return table;
}

std::uint64_t mod_m(const Integer& x) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), kSieveModulus);
  return r.get_ui();
}

bool isqrt_exact(const Integer& v, Integer& root) {
  if (v < 0) return false;
  mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
  return root * root == v;
}

}  // namespace

std::vector<Point<Rational>> search_rational_points(const WeierstrassCurve& E, const Integer& height_bound) {
  if (!E.is_integral()) throw std::invalid_argument("point search needs integral coefficients: " + E.id());
  if (height_bound < 1 || height_bound > 1000000) {
    throw std::invalid_argument("point search: height bound must lie in [1, 10^6]");
  }
  const long H = height_bound.get_si();
  const auto& v = E.invariants();
  const Integer b2 = v.b2.get_num(), b4 = v.b4.get_num(), b6 = v.b6.get_num();
  const auto& table = residue_square_table();
  const std::uint64_t M = kSieveModulus;

  // g(m) = 4m^3 + b2 e^2 m^2 + 2 b4 e^4 m + b6 e^6 must be a square k^2; then
  // x = m/e^2 and 2y + a1 x + a3 = +-k/e^3.
  std::vector<Point<Rational>> out;
  for (long e = 1; e <= H; ++e) {
    const Integer E2 = Integer(e) * e, E4 = E2 * E2, E6 = E4 * E2;
    const Integer c2 = b2 * E2, c1 = 2 * b4 * E4, c0 = b6 * E6;
    auto g_exact = [&](const Integer& m) -> Integer { return ((4 * m + c2) * m + c1) * m + c0; };
    auto g_mod = [&](long m) {
      std::uint64_t mm = mod_m(Integer(m));
      std::uint64_t s = (4 * mm + mod_m(c2)) % M;
      s = (s * mm + mod_m(c1)) % M;
      s = (s * mm + mod_m(c0)) % M;
      return s;
    };
    // forward differences of the cubic in m, all modulo M
    std::uint64_t f0 = g_mod(-H), f1 = g_mod(-H + 1), f2 = g_mod(-H + 2), f3 = g_mod(-H + 3);
    std::uint64_t d1 = (f1 + M - f0) % M;
    std::uint64_t d2 = (f2 + 2 * (M - f1) + f0) % M;
    std::uint64_t d3 = (f3 + 3 * (M - f2) + 3 * f1 + (M - f0)) % M;
    std::uint64_t f = f0;
    for (long m = -H; m <= H; ++m) {
      if (table[f] && std::gcd(m, e) == 1) {
        Integer mz(m), k;
        Integer g = g_exact(mz);
        if (isqrt_exact(g, k)) {
          Rational x = make_rational(mz, E2);
          Rational shift = E.a1() * x + E.a3();
          std::vector<Rational> ys;
          Rational w = make_rational(k, E2 * e);
          ys.push_back((w - shift) / 2);
          if (k != 0) ys.push_back((-w - shift) / 2);
          std::sort(ys.begin(), ys.end());
          for (const auto& y : ys) out.push_back(Point<Rational>{x, y, false});
        }
      }
      f += d1;
      if (f >= M) f -= M;
      d1 += d2;
      if (d1 >= M) d1 -= M;
      d2 += d3;
      if (d2 >= M) d2 -= M;
    }
  }
  return out;
}

Integer naive_height(const Point<Rational>& P) {
  if (P.infinity) return 1;
  Integer n = abs(P.x.get_num());
  return std::max(n, Integer(P.x.get_den()));
}

// ---------------------------------------------------------------------------

Mod2Image mod2_image(const WeierstrassCurve& E) {
  ShortModel m = short_model(E);
  Mod2Image out;
  out.rational_roots = rational_roots(m.cubic());
  out.cubic_irreducible = out.rational_roots.empty();
  out.discriminant = m.discriminant();
  out.discriminant_square = is_square(out.discriminant);
  return out;
}

namespace {

FpPoly reduce_poly(const Poly& f, std::uint64_t p) {
  FpPoly out;
  for (const auto& c : f.coefficients()) out.push_back(reduce_mod(c, p));
  fp_trim(out);
  return out;
}

}  // namespace

Poly three_division_polynomial(const WeierstrassCurve& E) {
  const auto& v = E.invariants();
  return Poly(std::vector<Rational>{v.b8, 3 * v.b6, 3 * v.b4, v.b2, Rational(3)});
}

bool three_division_has_cubic_factor(const WeierstrassCurve& E, std::uint64_t p) {
  if (p == 3 || !E.has_good_reduction(p)) return false;
  FpPoly f = reduce_poly(three_division_polynomial(E), p);
  if (f.size() != 5) return false;
  FpPoly df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * (i % p) % p);
  fp_trim(df);
  if (fp_gcd(f, df, p).size() != 1) return false;
  FpPoly xp = fp_x_pow_mod(Integer(static_cast<unsigned long>(p)), f, p);
  FpPoly roots = fp_gcd(f, fp_sub(xp, FpPoly{0, 1}, p), p);
  return roots.size() == 2;
}

namespace {

enum class WitnessClass { none, w1, w2 };

WitnessClass trace_class(long ap, std::uint64_t p, std::uint64_t ell) {
  const long L = static_cast<long>(ell);
  long am = ((ap % L) + L) % L;
  if (am == 0) return WitnessClass::none;
  long disc = ((am * am - 4 * static_cast<long>(p % ell)) % L + L) % L;
  if (disc == 0) return WitnessClass::none;
  return legendre_small(static_cast<std::uint64_t>(disc), ell) == 1 ? WitnessClass::w1 : WitnessClass::w2;
}

bool third_class(long ap, std::uint64_t p, std::uint64_t ell) {
  const long L = static_cast<long>(ell);
  long am = ((ap % L) + L) % L;
  const long u = static_cast<long>(static_cast<std::uint64_t>(am * am % L) * inv_mod(p % ell, ell) % ell);
  if (u == 0 || u == 1 || u == 2 % L || u == 4 % L) return false;
  return ((u * u - 3 * u + 1) % L + L) % L != 0;
}

bool order_three_class(const WeierstrassCurve& E, long ap, std::uint64_t p) {
  return ap % 3 != 0 && p % 3 == 1 && three_division_has_cubic_factor(E, p);
}

}  // namespace

SurjectivityWitnessReport mod_l_surjectivity_witnesses(const WeierstrassCurve& E, std::uint64_t ell,
                                                       std::uint64_t prime_bound, ApCache* cache) {
  if (ell < 3 || !is_prime(Integer(static_cast<unsigned long>(ell)))) {
    throw std::invalid_argument("mod-ell witnesses need an odd prime ell, got " + std::to_string(ell));
  }
  SurjectivityWitnessReport r;
  r.ell = ell;
  r.prime_bound = prime_bound;
  const bool want3 = ell != 3;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(prime_bound))) {
    if (p == ell || !E.has_good_reduction(p)) continue;
    ++r.primes_scanned;
    PointCount c = count_points_mod_p(E, p, cache);
    auto cls = trace_class(c.a_p, p, ell);
    if (cls == WitnessClass::w1 && !r.w1) r.w1 = SurjectivityWitness{p, c.a_p};
    if (!want3 && !r.w1 && order_three_class(E, c.a_p, p)) r.w1 = SurjectivityWitness{p, c.a_p};
    if (cls == WitnessClass::w2 && !r.w2) r.w2 = SurjectivityWitness{p, c.a_p};
    if (want3 && !r.w3 && third_class(c.a_p, p, ell)) r.w3 = SurjectivityWitness{p, c.a_p};
    if (r.w1 && r.w2 && (!want3 || r.w3)) break;
  }
  r.certified = r.w1 && r.w2 && (!want3 || r.w3);
  return r;
}

bool verify_surjectivity_report(const WeierstrassCurve& E, const SurjectivityWitnessReport& report) {
  auto check = [&](const std::optional<SurjectivityWitness>& w, auto&& pred) {
    if (!w) return true;
    if (w->p == report.ell || w->p > report.prime_bound || !E.has_good_reduction(w->p)) return false;
    long ap = count_points_mod_p(E, w->p).a_p;
    return ap == w->a_p && pred(ap, w->p);
  };
  const std::uint64_t ell = report.ell;
  auto w1_ok = [&](long ap, std::uint64_t p) {
    return ell == 3 ? order_three_class(E, ap, p) : trace_class(ap, p, ell) == WitnessClass::w1;
  };
  bool ok = check(report.w1, w1_ok) &&
            check(report.w2, [&](long ap, std::uint64_t p) { return trace_class(ap, p, ell) == WitnessClass::w2; }) &&
            check(report.w3, [&](long ap, std::uint64_t p) { return third_class(ap, p, ell); });
  const bool complete = report.w1 && report.w2 && (ell == 3 || report.w3);
  return ok && report.certified == complete;
}

// ---------------------------------------------------------------------------

bool splits_completely(std::uint64_t p, const std::vector<Integer>& field_generators) {
  if (p < 5 || !is_prime(Integer(static_cast<unsigned long>(p)))) return false;
  for (const auto& g : field_generators) {
    if (legendre_small(reduce_mod(Rational(g), p), p) != 1) return false;
  }
  return true;
}

Fp reduce_quad(const QuadFieldElement& z, std::uint64_t p) {
  Fp a = Fp::from(z.a(), p);
  if (z.b() == 0) return a;
  auto s = sqrt_mod(reduce_mod(Rational(z.c()), p), p);
  if (!s) throw std::domain_error("reduce_quad: " + z.c().get_str() + " is not a square mod " + std::to_string(p));
  return a + Fp::from(z.b(), p) * Fp(*s, p);
}

namespace {

bool model_good_at(const ShortModel& model, std::uint64_t p) {
  Integer P(static_cast<unsigned long>(p));
  if (mpz_divisible_p(model.p.get_den_mpz_t(), P.get_mpz_t())) return false;
  if (mpz_divisible_p(model.q.get_den_mpz_t(), P.get_mpz_t())) return false;
  Rational D = model.discriminant();
  return !mpz_divisible_p(D.get_num_mpz_t(), P.get_mpz_t());
}

bool point_reducible_at(const QuadPoint& P, std::uint64_t p) {
  Integer pz(static_cast<unsigned long>(p));
  for (const Rational* x : {&P.x.a(), &P.x.b(), &P.y.a(), &P.y.b()}) {
    if (mpz_divisible_p(x->get_den_mpz_t(), pz.get_mpz_t())) return false;
  }
  return true;
}

std::uint64_t sqrt_of(const QuadPoint& P, std::uint64_t p) {
  auto s = sqrt_mod(reduce_mod(Rational(P.x.c()), p), p);
  return s ? *s : 0;
}

}  // namespace

bool reduction_in_multiple(const ShortModel& model, const QuadPoint& P, std::uint64_t p, std::uint64_t ell) {
  auto G = reduction_group(model.curve(), p);
  auto target = G.point(reduce_quad(P.x, p), reduce_quad(P.y, p));
  if (!G.contains(target)) throw std::domain_error("reduction of P is not on the reduced curve");
  for (const auto& Q : enumerate_points(G, p)) {
    if (G.equal(G.multiply(Q, Integer(static_cast<unsigned long>(ell))), target)) return true;
  }
  return false;
}

NondivisibilityCertificate nondivisibility_certificate(const ShortModel& model, const QuadPoint& P,
                                                       const std::vector<Integer>& field_generators,
                                                       std::uint64_t ell, std::uint64_t prime_bound) {
  NondivisibilityCertificate cert;
  cert.ell = ell;
  cert.prime_bound = prime_bound;
  const WeierstrassCurve C = model.curve();
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(prime_bound))) {
    if (!splits_completely(p, field_generators) || !model_good_at(model, p) || !point_reducible_at(P, p)) continue;
    ++cert.primes_tried;
    std::uint64_t order = count_points_mod_p(C, p).order;
    if (order % ell != 0) {
      // multiplication by ell is bijective on E(F_p)
      ++cert.primes_skipped;
      continue;
    }
    if (reduction_in_multiple(model, P, p, ell)) continue;
    cert.found = true;
    cert.p = p;
    cert.sqrt_d = sqrt_of(P, p);
    cert.reduced_x = reduce_quad(P.x, p).value();
    cert.reduced_y = reduce_quad(P.y, p).value();
    cert.group_order = order;
    break;
  }
  return cert;
}

bool verify_nondivisibility(const ShortModel& model, const QuadPoint& P, const NondivisibilityCertificate& cert) {
  if (!cert.found) return false;
  const std::uint64_t p = cert.p;
  if (p > cert.prime_bound || !model_good_at(model, p) || !point_reducible_at(P, p)) return false;
  if (cert.sqrt_d != sqrt_of(P, p)) return false;
  if (reduce_quad(P.x, p).value() != cert.reduced_x || reduce_quad(P.y, p).value() != cert.reduced_y) return false;
  if (count_points_mod_p(model.curve(), p).order != cert.group_order) return false;
  return cert.group_order % cert.ell == 0 && !reduction_in_multiple(model, P, p, cert.ell);
}

Poly halving_quartic(const ShortModel& model, const Rational& xP) {
  const Rational& p = model.p;
  const Rational& q = model.q;
  return Poly(std::vector<Rational>{p * p - 4 * xP * q, -8 * q - 4 * xP * p, -2 * p, -4 * xP, Rational(1)});
}

namespace {

struct YStep {
  bool ok = false;
  std::vector<std::uint64_t> coefficients;
};

YStep run_y_step(const ShortModel& model, const Rational& xP, const QuadFieldElement& yP, const FpPoly& f,
                 std::uint64_t p) {
  auto mod = std::make_shared<const FpExtModulus>(FpExtModulus{p, f});
  auto k = [&](std::uint64_t a) { return FpExt::constant(a, mod); };
  const FpExt X = FpExt::generator(mod);
  const FpExt P = k(reduce_mod(model.p, p)), Q = k(reduce_mod(model.q, p));
  const FpExt a = k(reduce_mod(xP, p)), yb = k(reduce_quad(yP, p).value());
  YStep out;
  if (yb.is_zero()) return out;
  FpExt r = X * X * X + P * X + Q;
  FpExt y = ((k(3) * X * X + P) * (X - a) - k(2) * r) / (k(2) * yb);
  out.coefficients = y.coefficients();
  if (!(y * y == r)) return out;
  CurveGroup<FpExt> G({k(0), k(0), k(0), P, Q}, k(0), k(1));
  auto D = G.add(G.point(X, y), G.point(X, y));
  out.ok = !D.infinity && D.x == a && D.y == yb;
  return out;
}


}  // namespace

IntegralityCertificate preimage_integrality_n2(const ShortModel& model, const QuadPoint& P,
                                               const std::vector<Integer>& field_generators,
                                               std::uint64_t prime_bound) {
  if (!P.x.is_rational()) throw std::invalid_argument("preimage integrality needs a rational abscissa");
  IntegralityCertificate cert;
  cert.prime_bound = prime_bound;
  const Rational xP = P.x.a();
  Poly quartic = halving_quartic(model, xP);
  cert.quartic = quartic.coefficients();
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(prime_bound))) {
    if (!splits_completely(p, field_generators) || !model_good_at(model, p) || !point_reducible_at(P, p)) continue;
    FpPoly f = reduce_poly(quartic, p);
    if (f.size() != 5) continue;
    ++cert.primes_tried;
    if (!fp_is_irreducible(f, p)) continue;
    YStep ys = run_y_step(model, xP, P.y, f, p);
    cert.found = true;
    cert.p = p;
    cert.sqrt_d = sqrt_of(P, p);
    cert.y_step = ys.ok;
    cert.y_coefficients = ys.coefficients;
    break;
  }
  return cert;
}

bool verify_integrality(const ShortModel& model, const QuadPoint& P, const IntegralityCertificate& cert) {
  if (!cert.found || !P.x.is_rational()) return false;
  Poly quartic = halving_quartic(model, P.x.a());
  if (quartic.coefficients() != cert.quartic) return false;
  const std::uint64_t p = cert.p;
  if (p > cert.prime_bound || !model_good_at(model, p) || !point_reducible_at(P, p)) return false;
  if (cert.sqrt_d != sqrt_of(P, p)) return false;
  FpPoly f = reduce_poly(quartic, p);
  if (f.size() != 5 || !fp_is_irreducible(f, p)) return false;
  YStep ys = run_y_step(model, P.x.a(), P.y, f, p);
  return ys.ok == cert.y_step && ys.coefficients == cert.y_coefficients && ys.ok;
}

// ---------------------------------------------------------------------------

TotalPositivity total_positivity_checks(const ShortModel& model, const QuadFieldElement& a,
                                        const QuadFieldElement& b) {
  if (a.c() != b.c() || a.c() <= 0) {
    throw std::invalid_argument("positivity checks need a, b in one real quadratic field");
  }
  auto fill = [&](const QuadFieldElement& x) {
    PositivityCheck c{model.rhs(x), 0, 0};
    c.sign0 = c.value.sign(0);
    c.sign1 = c.value.sign(1);
    return c;
  };
  TotalPositivity t{fill(a), fill(b)};
  t.a_totally_positive = t.r_a.sign0 > 0 && t.r_a.sign1 > 0;
  t.b_totally_negative = t.r_b.sign0 < 0 && t.r_b.sign1 < 0;
  return t;
}

std::optional<Rational> choose_negative_abscissa(const ShortModel& model, const Rational& a, long max_height) {
  auto accept = [&](const Rational& b) { return b != a && model.rhs(b) < 0; };
  if (accept(0)) return Rational(0);
  for (long h = 1; h <= max_height; ++h) {
    // height exactly h: n/h with gcd(n, h) = 1, |n| < h, and h/d
    std::vector<Rational> cands;
    for (long d = 1; d <= h; ++d) {
      if (std::gcd(h, d) == 1) cands.push_back(make_rational(h, d));
    }
    for (long n = 1; n < h; ++n) {
      if (std::gcd(n, h) == 1) cands.push_back(make_rational(n, h));
    }
    std::sort(cands.begin(), cands.end(), [](const Rational& x, const Rational& y) {
      if (x.get_den() != y.get_den()) return x.get_den() < y.get_den();
      return x < y;
    });
    for (const auto& c : cands) {
      if (accept(c)) return c;
      if (accept(-c)) return Rational(-c);
    }
  }
  return std::nullopt;
}

}  // namespace brauerkit
