#include "brauerkit/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace brauerkit {

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer n;
  if (s.empty() || n.set_str(s, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return n;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return make_rational(num, den);
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational x(num, den);
  x.canonicalize();
  return x;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

Integer FactoredInteger::value() const {
  Integer v = sign;
  for (const auto& [p, e] : factors) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    v *= pe;
  }
  return v;
}

std::vector<Integer> FactoredInteger::primes() const {
  std::vector<Integer> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.first);
  return out;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

namespace {

const std::vector<std::uint32_t>& trial_primes(std::uint64_t bound) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::vector<std::uint32_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bound);
  if (it == cache.end()) {
    it = cache.emplace(bound, primes_up_to(static_cast<std::uint32_t>(bound))).first;
  }
  return it->second;
}

bool miller_rabin_round(const Integer& n, const Integer& d, unsigned s, unsigned long base) {
  Integer a = base;
  if (a % n == 0) return true;
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
Integer pollard_brent(const Integer& n, unsigned long seed, std::uint64_t max_iterations) {
  if (n % 2 == 0) return 2;
  Integer y = seed % n, c = (seed * 7 + 1) % n, g = 1, r = 1, q = 1, x, ys;
  const std::uint64_t m = 128;
  std::uint64_t iterations = 0;
  auto f = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (Integer i = 0; i < r; ++i) y = f(y);
    Integer k = 0;
    while (k < r && g == 1) {
      ys = y;
      Integer lim = r - k < m ? Integer(r - k) : Integer(m);
      for (Integer i = 0; i < lim; ++i) {
        y = f(y);
        Integer diff = x - y;
        q = (q * abs(diff)) % n;
        ++iterations;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      if (iterations > max_iterations) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Integer diff = x - ys;
      Integer absdiff = abs(diff);
      mpz_gcd(g.get_mpz_t(), absdiff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  if (g == n) return 0;
  return g;
}

void split_cofactor(const Integer& n, const FactorConfig& config,
                    std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (n <= deterministic_primality_limit() && is_prime(n)) {
    ++out[n];
    return;
  }
  if (n > deterministic_primality_limit()) {
    throw FactorizationError("cofactor " + n.get_str() +
                             " exceeds the deterministic primality range; increase bound");
  }
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  if (root * root == n) {
    split_cofactor(root, config, out);
    split_cofactor(root, config, out);
    return;
  }
  for (unsigned long seed = 2; seed < 12; ++seed) {
    Integer g = pollard_brent(n, seed, config.rho_iterations);
    if (g != 0 && g != 1 && g != n) {
      split_cofactor(g, config, out);
      split_cofactor(n / g, config, out);
      return;
    }
  }
  throw FactorizationError("cofactor " + n.get_str() + " survived rho splitting; increase bound");
}

}  // namespace

const Integer& deterministic_primality_limit() {
  static const Integer limit("3317044064679887385961981");
  return limit;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static const unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long b : bases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  if (n >= deterministic_primality_limit()) {
    throw std::domain_error("primality of " + n.get_str() + " is outside the deterministic range");
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (unsigned long b : bases) {
    if (!miller_rabin_round(n, d, s, b)) return false;
  }
  return true;
}

FactoredInteger factorize(const Integer& n, const FactorConfig& config) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  FactoredInteger result;
  result.sign = n < 0 ? -1 : 1;
  Integer m = abs(n);
  std::map<Integer, unsigned> found;
  for (std::uint32_t p : trial_primes(config.trial_bound)) {
    if (Integer(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++found[Integer(p)];
    }
  }
  if (m > 1) {
    Integer tb = config.trial_bound;  // every prime <= tb has been removed
    if (m <= tb * tb) {
      ++found[m];
    } else {
      split_cofactor(m, config, found);
    }
  }
  for (auto& [p, e] : found) result.factors.emplace_back(p, e);
  return result;
}

Integer squarefree_part(const Integer& n, const FactorConfig& config) {
  FactoredInteger f = factorize(n, config);
  Integer d = f.sign;
  for (const auto& [p, e] : f.factors) {
    if (e % 2 == 1) d *= p;
  }
  return d;
}

Integer squarefree_part(const Rational& x, const FactorConfig& config) {
  if (x == 0) throw std::invalid_argument("squarefree_part: zero");
  return squarefree_part(Integer(x.get_num() * x.get_den()), config);
}

bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

bool is_square(const Rational& x) { return is_square(x.get_num()) && is_square(x.get_den()); }

int legendre_symbol(const Integer& a, const Integer& p) {
  if (p <= 2 || p % 2 == 0) throw std::invalid_argument("legendre_symbol: p must be an odd prime");
  Integer r = a % p;
  if (r < 0) r += p;
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

long padic_valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw std::invalid_argument("padic_valuation: zero");
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long padic_valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw std::invalid_argument("padic_valuation: zero");
  return padic_valuation(x.get_num(), p) - padic_valuation(x.get_den(), p);
}

Rational padic_unit_part(const Rational& x, const Integer& p) {
  Integer num, den;
  mpz_remove(num.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t());
  mpz_remove(den.get_mpz_t(), x.get_den_mpz_t(), p.get_mpz_t());
  return make_rational(num, den);
}

std::vector<Integer> support_primes(const Rational& x, const FactorConfig& config) {
  std::vector<Integer> out;
  for (const Integer& part : {Integer(x.get_num()), Integer(x.get_den())}) {
    if (part == 0) continue;
    for (auto& p : factorize(part, config).primes()) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Place Place::real() { return Place(Integer(0)); }

Place Place::finite(const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument("Place::finite: " + p.get_str() + " is not prime");
  return Place(p);
}

const Integer& Place::prime() const {
  if (is_real()) throw std::logic_error("Place::prime: the real place has no prime");
  return prime_;
}

std::string Place::to_string() const { return is_real() ? "inf" : prime_.get_str(); }

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.is_real() || b.is_real()) {
    if (a.is_real() && b.is_real()) return std::strong_ordering::equal;
    return a.is_real() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  int c = cmp(a.prime_, b.prime_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool is_square_in_Qp(const Rational& x, const Place& v) {
  if (x == 0) throw std::invalid_argument("is_square_in_Qp: zero");
  if (v.is_real()) return x > 0;
  const Integer& p = v.prime();
  if (padic_valuation(x, p) % 2 != 0) return false;
  Rational u = padic_unit_part(x, p);
  Integer unit = u.get_num() * u.get_den();  // same square class, p-adic unit
  if (p == 2) {
    Integer r = unit % 8;
    if (r < 0) r += 8;
    return r == 1;
  }
  return legendre_symbol(unit, p) == 1;
}

}  // namespace brauerkit
