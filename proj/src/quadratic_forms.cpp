#include "brauerkit/quadratic_forms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace brauerkit {

namespace {

Integer square_class_integer(const Rational& x) { return x.get_num() * x.get_den(); }

long mod8(const Integer& u) {
  Integer r = u % 8;
  if (r < 0) r += 8;
  return r.get_si();
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: zero argument");
  if (v.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const Integer& p = v.prime();
  Integer A = square_class_integer(a), B = square_class_integer(b);
  long alpha = padic_valuation(A, p), beta = padic_valuation(B, p);
  Integer u, w;
  mpz_remove(u.get_mpz_t(), A.get_mpz_t(), p.get_mpz_t());
  mpz_remove(w.get_mpz_t(), B.get_mpz_t(), p.get_mpz_t());
  if (p == 2) {
    long u8 = mod8(u), w8 = mod8(w);
    auto eps = [](long x) { return ((x - 1) / 2) & 1; };
    auto omega = [](long x) { return ((x * x - 1) / 8) & 1; };
    long exponent = eps(u8) * eps(w8) + alpha * omega(w8) + beta * omega(u8);
    return (exponent & 1) ? -1 : 1;
  }
  int s = 1;
  if ((alpha & 1) && (beta & 1) && mod8(p) % 4 == 3) s = -s;
  if (beta & 1) s *= legendre_symbol(u, p);
  if (alpha & 1) s *= legendre_symbol(w, p);
  return s;
}

DiagonalForm::DiagonalForm(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("DiagonalForm: rank must be at least 1");
  for (const auto& a : coeffs_) {
    if (a == 0) throw std::invalid_argument("DiagonalForm: zero coefficient");
  }
}

DiagonalForm::DiagonalForm(std::initializer_list<long> coefficients)
    : DiagonalForm(std::vector<Rational>(coefficients.begin(), coefficients.end())) {}

Rational DiagonalForm::discriminant() const {
  Rational d = 1;
  for (const auto& a : coeffs_) d *= a;
  return d;
}

Rational DiagonalForm::evaluate(std::span<const Rational> x) const {
  if (x.size() != coeffs_.size()) throw std::invalid_argument("DiagonalForm::evaluate: size");
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += coeffs_[i] * x[i] * x[i];
  return s;
}

std::string DiagonalForm::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ",";
    out += coeffs_[i].get_str();
  }
  return out + ">";
}

int hasse_invariant(const DiagonalForm& f, const Place& v) {
  int eps = 1;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    for (std::size_t j = i + 1; j < f.rank(); ++j) eps *= hilbert_symbol(f[i], f[j], v);
  }
  return eps;
}

bool is_isotropic_local(const DiagonalForm& f, const Place& v) {
  const std::size_t r = f.rank();
  if (v.is_real()) {
    bool pos = false, neg = false;
    for (const auto& a : f.coefficients()) (a > 0 ? pos : neg) = true;
    return pos && neg;
  }
  if (r == 1) return false;
  if (r >= 5) return true;
  const Rational d = f.discriminant();
  if (r == 2) return is_square_in_Qp(Rational(-d), v);
  const int eps = hasse_invariant(f, v);
  if (r == 3) return eps == hilbert_symbol(Rational(-1), Rational(-d), v);
  // rank 4
  if (!is_square_in_Qp(d, v)) return true;
  return eps == hilbert_symbol(Rational(-1), Rational(-1), v);
}

std::vector<Place> anisotropic_places(const DiagonalForm& f, const FactorConfig& config) {
  if (f.rank() < 2) throw std::invalid_argument("anisotropic_places: rank must be at least 2");
  std::set<Integer> primes{Integer(2)};
  for (const auto& a : f.coefficients()) {
    for (auto& p : support_primes(a, config)) primes.insert(p);
  }
  std::vector<Place> out;
  for (const auto& p : primes) {
    Place v = Place::finite(p);
    if (!is_isotropic_local(f, v)) out.push_back(v);
  }
  if (!is_isotropic_local(f, Place::real())) out.push_back(Place::real());
  return out;
}

bool is_isotropic_over_Q(const DiagonalForm& f, const FactorConfig& config) {
  return anisotropic_places(f, config).empty();
}

namespace {

// Integer coefficients with the same zero locus.
std::vector<Integer> integral_coefficients(const DiagonalForm& f) {
  Integer l = 1;
  for (const auto& a : f.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.get_den_mpz_t());
  std::vector<Integer> out;
  for (const auto& a : f.coefficients()) out.push_back(Integer(a * l));
  return out;
}

__int128 isqrt128(__int128 n) {
  if (n < 0) return -1;
  auto r = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

template <class T>
struct VectorSearch {
  std::vector<T> coeffs;
  T bound;
  std::vector<T> x;

  static bool exact_sqrt(const T& n, T& root);

  bool recurse(std::size_t i, const T& partial) {
    const std::size_t last = coeffs.size() - 1;
    if (i == last) {
      // coeffs[last] * x^2 = -partial
      T rhs = -partial;
      if (rhs % coeffs[last] != 0) return false;
      T sq = rhs / coeffs[last];
      T root;
      if (!exact_sqrt(sq, root) || root > bound) return false;
      x[last] = root;
      for (const auto& v : x) {
        if (v != 0) return true;
      }
      return false;
    }
    for (T v = 0; v <= bound; ++v) {
      x[i] = v;
      if (recurse(i + 1, partial + coeffs[i] * v * v)) return true;
    }
    return false;
  }
};

template <>
bool VectorSearch<__int128>::exact_sqrt(const __int128& n, __int128& root) {
  if (n < 0) return false;
  root = isqrt128(n);
  return root * root == n;
}

template <>
bool VectorSearch<Integer>::exact_sqrt(const Integer& n, Integer& root) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return false;
  root = sqrt(n);
  return true;
}

}  // namespace

std::optional<std::vector<Rational>> find_isotropic_vector(const DiagonalForm& f,
                                                            const Integer& height_bound) {
  if (f.rank() < 2) throw std::invalid_argument("find_isotropic_vector: rank must be at least 2");
  if (height_bound < 1) return std::nullopt;
  std::vector<Integer> coeffs = integral_coefficients(f);
  Integer maxc = 0;
  for (const auto& a : coeffs) maxc = std::max(maxc, Integer(abs(a)));
  Integer worst = maxc * height_bound * height_bound * static_cast<long>(coeffs.size());
  const Integer limit("1000000000000000000000000000000000000");  // < 2^120
  std::vector<Integer> found;
  const bool small = std::all_of(coeffs.begin(), coeffs.end(),
                                 [](const Integer& a) { return a.fits_slong_p(); });
  if (worst < limit && small && height_bound.fits_slong_p()) {
    VectorSearch<__int128> s;
    for (const auto& a : coeffs) s.coeffs.push_back(a.get_si());
    s.bound = height_bound.get_si();
    s.x.assign(coeffs.size(), 0);
    if (!s.recurse(0, 0)) return std::nullopt;
    for (auto v : s.x) found.push_back(Integer(static_cast<long>(v)));
  } else {
    VectorSearch<Integer> s{coeffs, height_bound, std::vector<Integer>(coeffs.size(), 0)};
    if (!s.recurse(0, 0)) return std::nullopt;
    found = s.x;
  }
  std::vector<Rational> out(found.begin(), found.end());
  if (f.evaluate(out) != 0) throw std::logic_error("find_isotropic_vector: internal error");
  return out;
}

DiagonalForm albert_form(const Rational& alpha, const Rational& beta, const Rational& gamma,
                         const Rational& delta) {
  return DiagonalForm({alpha, beta, -alpha * beta, -gamma, -delta, gamma * delta});
}

bool albert_is_division(const Rational& alpha, const Rational& beta, const Rational& gamma,
                        const Rational& delta, const FactorConfig& config) {
  return !is_isotropic_over_Q(albert_form(alpha, beta, gamma, delta), config);
}

// ---------------------------------------------------------------------------

TwoAdicCompletion TwoAdicCompletion::of(const Integer& c) {
  if (c <= 1) throw std::invalid_argument("quadratic field: c must be a squarefree integer > 1");
  if (squarefree_part(c) != c) throw std::invalid_argument("quadratic field: c is not squarefree");
  const long r = mod8(c);
  if (r == 1) {
    throw std::invalid_argument("c = " + c.get_str() +
                                " is congruent to 1 modulo 8: 2 splits and the prime over 2 is not unique");
  }
  if (r == 5) {
    return TwoAdicCompletion{c, false, 1, Integer((c - 1) / 4), QuadFieldElement::rational(2, c), 1};
  }
  if (r % 4 == 2) {
    return TwoAdicCompletion{c, true, 0, c, QuadFieldElement::sqrt_c(c), 2};
  }
  return TwoAdicCompletion{c, true, 0, c, QuadFieldElement(1, 1, c), 2};
}

long TwoAdicCompletion::valuation(const QuadFieldElement& x) const {
  if (x.is_zero()) throw std::invalid_argument("valuation of zero");
  long v = padic_valuation(x.norm(), Integer(2));
  return ramified ? v : v / 2;
}

std::pair<Rational, Rational> TwoAdicCompletion::coordinates(const QuadFieldElement& z) const {
  if (ramified) return {z.a(), z.b()};
  // sqrt(c) = 2*theta - 1
  return {z.a() - z.b(), 2 * z.b()};
}

std::string TwoAdicCompletion::description() const {
  std::string field = "Q(sqrt(" + c.get_str() + "))";
  if (!ramified) return field + " at 2 (inert, pi = 2)";
  return field + " at the prime over 2 (ramified, pi = " + uniformizer.to_string() + ")";
}

namespace {

constexpr int kBits = 48;
constexpr std::uint64_t kMask = (std::uint64_t{1} << kBits) - 1;

struct LocalElt {
  std::uint64_t x = 0, y = 0;
};

struct LocalRing {
  const TwoAdicCompletion& w;
  std::uint64_t t, n;

  explicit LocalRing(const TwoAdicCompletion& completion)
      : w(completion), t(static_cast<std::uint64_t>(completion.trace)), n(reduce(Rational(completion.norm_term))) {}

  static std::uint64_t reduce(const Rational& q) {
    if (q.get_den() % 2 == 0) throw std::logic_error("LocalRing: value not 2-integral");
    Integer num, den;
    mpz_fdiv_r_2exp(num.get_mpz_t(), q.get_num_mpz_t(), kBits);
    mpz_fdiv_r_2exp(den.get_mpz_t(), q.get_den_mpz_t(), kBits);
    std::uint64_t nu = mpz_get_ui(num.get_mpz_t()), d = mpz_get_ui(den.get_mpz_t());
    std::uint64_t inv = d;  // Newton iteration for d^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - d * inv;
    return (nu * inv) & kMask;
  }

  LocalElt from(const QuadFieldElement& z) const {
    auto [a, b] = w.coordinates(z);
    return {reduce(a), reduce(b)};
  }
  LocalElt add(LocalElt p, LocalElt q) const { return {(p.x + q.x) & kMask, (p.y + q.y) & kMask}; }
  LocalElt mul(LocalElt p, LocalElt q) const {
    return {(p.x * q.x + n * p.y * q.y) & kMask, (p.x * q.y + p.y * q.x + t * p.y * q.y) & kMask};
  }
  LocalElt scale(LocalElt p, std::uint64_t s) const { return {(p.x * s) & kMask, (p.y * s) & kMask}; }

  static long v2(std::uint64_t z) {
    z &= kMask;
    if (z == 0) return kBits;
    return __builtin_ctzll(z);
  }

  /// v_pi, capped at kBits.
  long val(LocalElt z) const {
    if (!w.ramified) return std::min(v2(z.x), v2(z.y));
    std::uint64_t norm = z.x * z.x + t * z.x * z.y - n * z.y * z.y;
    return v2(norm);
  }
  bool is_zero(LocalElt z) const { return (z.x & kMask) == 0 && (z.y & kMask) == 0; }
};

struct TreeSearch {
  const LocalRing& ring;
  std::vector<LocalElt> coeffs;
  std::vector<long> coeff_val;
  std::vector<LocalElt> digits;
  std::vector<LocalElt> pi_powers;

  long form_value_valuation(const std::vector<LocalElt>& x) const {
    LocalElt s{};
    for (std::size_t i = 0; i < x.size(); ++i) s = ring.add(s, ring.mul(coeffs[i], ring.mul(x[i], x[i])));
    return ring.val(s);
  }
  long gradient_valuation(const std::vector<LocalElt>& x) const {
    long g = kBits;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (ring.is_zero(x[i])) continue;
      g = std::min(g, ring.w.e + coeff_val[i] + ring.val(x[i]));
    }
    return g;
  }
};

std::vector<QuadFieldElement> normalize_coefficients(std::span<const QuadFieldElement> coefficients,
                                                     const TwoAdicCompletion& w) {
  const QuadFieldElement pi2 = w.uniformizer * w.uniformizer;
  std::vector<QuadFieldElement> out;
  for (const auto& a : coefficients) {
    if (a.c() != w.c) throw std::invalid_argument("quadfield form: coefficient from another field");
    if (a.is_zero()) throw std::invalid_argument("quadfield form: zero coefficient");
    long v = w.valuation(a);
    long s = v >= 0 ? v / 2 : -((-v + 1) / 2);
    QuadFieldElement b = a;
    for (long i = 0; i < std::labs(s); ++i) b = s > 0 ? b / pi2 : b * pi2;
    out.push_back(b);
  }
  return out;
}

LocalCertificate run_search(std::span<const QuadFieldElement> coefficients, const Integer& c,
                            int precision) {
  if (coefficients.empty()) throw std::invalid_argument("quadfield form: empty");
  const TwoAdicCompletion w = TwoAdicCompletion::of(c);
  LocalRing ring(w);
  LocalCertificate cert;
  cert.completion = w.description();
  cert.precision = precision;
  cert.normalized_coefficients = normalize_coefficients(coefficients, w);

  TreeSearch ts{ring, {}, {}, {}, {}};
  long max_val = 0;
  for (const auto& a : cert.normalized_coefficients) {
    ts.coeffs.push_back(ring.from(a));
    ts.coeff_val.push_back(w.valuation(a));
    max_val = std::max(max_val, ts.coeff_val.back());
  }
  const std::size_t r = ts.coeffs.size();
  cert.hensel_threshold = static_cast<int>(2 * (w.e + max_val) + 1);

  if (w.ramified) {
    ts.digits = {{0, 0}, {1, 0}};
  } else {
    ts.digits = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  }
  const LocalElt pi = ring.from(w.uniformizer);
  ts.pi_powers.push_back({1, 0});
  for (int j = 1; j <= cert.hensel_threshold + 1; ++j) ts.pi_powers.push_back(ring.mul(ts.pi_powers.back(), pi));

  struct Node {
    std::vector<LocalElt> x;
    std::size_t pivot;
  };

  auto try_witness = [&](const Node& node, long fv) -> bool {
    long g = ts.gradient_valuation(node.x);
    if (fv > 2 * g) {
      LocalCertificate::Witness wit;
      for (const auto& e : node.x) wit.vector.emplace_back(Integer(static_cast<unsigned long>(e.x)),
                                                           Integer(static_cast<unsigned long>(e.y)));
      wit.value_valuation = fv;
      wit.gradient_valuation = g;
      wit.pivot = node.pivot;
      cert.witness = wit;
      cert.status = LocalCertificate::Status::Isotropic;
      return true;
    }
    return false;
  };

  // Level 1: primitive vectors normalized so the first unit coordinate is 1.
  std::vector<Node> level;
  for (std::size_t pivot = 0; pivot < r; ++pivot) {
    std::size_t free = r - pivot - 1;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free; ++i) combos *= ts.digits.size();
    for (std::size_t m = 0; m < combos; ++m) {
      Node node{std::vector<LocalElt>(r), pivot};
      node.x[pivot] = {1, 0};
      std::size_t rest = m;
      for (std::size_t i = r; i-- > pivot + 1;) {
        node.x[i] = ts.digits[rest % ts.digits.size()];
        rest /= ts.digits.size();
      }
      ++cert.nodes_explored;
      long fv = ts.form_value_valuation(node.x);
      if (fv < 1) continue;
      if (try_witness(node, fv)) {
        cert.levels_searched = 1;
        return cert;
      }
      level.push_back(std::move(node));
    }
  }

  int j = 1;
  while (!level.empty()) {
    if (j >= cert.hensel_threshold) {
      throw std::logic_error("quadfield search: surviving node beyond the Hensel threshold");
    }
    if (j >= precision) {
      throw PrecisionExhausted("precision " + std::to_string(precision) +
                               " exhausted before the Hensel threshold " +
                               std::to_string(cert.hensel_threshold));
    }
    std::vector<Node> next;
    const LocalElt step = ts.pi_powers[j];
    for (const auto& node : level) {
      std::size_t combos = 1;
      for (std::size_t i = 0; i + 1 < r; ++i) combos *= ts.digits.size();
      for (std::size_t m = 0; m < combos; ++m) {
        Node child = node;
        std::size_t rest = m;
        for (std::size_t i = r; i-- > 0;) {
          if (i == node.pivot) continue;
          child.x[i] = ring.add(child.x[i], ring.mul(ts.digits[rest % ts.digits.size()], step));
          rest /= ts.digits.size();
        }
        ++cert.nodes_explored;
        long fv = ts.form_value_valuation(child.x);
        if (fv < j + 1) continue;
        if (try_witness(child, fv)) {
          cert.levels_searched = j + 1;
          return cert;
        }
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
    ++j;
  }
  cert.levels_searched = j;
  cert.status = LocalCertificate::Status::Anisotropic;
  return cert;
}

}  // namespace

LocalCertificate is_isotropic_quadfield_at_two(std::span<const QuadFieldElement> coefficients,
                                               const Integer& c, int precision) {
  return run_search(coefficients, c, precision);
}

bool verify_local_certificate(std::span<const QuadFieldElement> coefficients, const Integer& c,
                              const LocalCertificate& cert) {
  const TwoAdicCompletion w = TwoAdicCompletion::of(c);
  auto normalized = normalize_coefficients(coefficients, w);
  if (normalized != cert.normalized_coefficients) return false;
  if (!cert.isotropic()) {
    try {
      return !run_search(coefficients, c, cert.precision).isotropic();
    } catch (const PrecisionExhausted&) {
      return false;
    }
  }
  if (!cert.witness || cert.witness->vector.size() != normalized.size()) return false;
  LocalRing ring(w);
  TreeSearch ts{ring, {}, {}, {}, {}};
  for (const auto& a : normalized) {
    ts.coeffs.push_back(ring.from(a));
    ts.coeff_val.push_back(w.valuation(a));
  }
  std::vector<LocalElt> x;
  for (const auto& [a, b] : cert.witness->vector) {
    x.push_back({LocalRing::reduce(Rational(a)), LocalRing::reduce(Rational(b))});
  }
  // primitive: some coordinate must be a unit
  bool primitive = std::any_of(x.begin(), x.end(), [&](const LocalElt& e) { return ring.val(e) == 0; });
  long fv = ts.form_value_valuation(x);
  long g = ts.gradient_valuation(x);
  return primitive && fv > 2 * g && fv == cert.witness->value_valuation &&
         g == cert.witness->gradient_valuation;
}

}  // namespace brauerkit
