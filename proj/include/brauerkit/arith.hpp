#pragma once

// Exact integer and rational arithmetic, factorization and the residue-symbol
// primitives shared by every other part of the toolkit.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brauerkit {

using Integer = mpz_class;
using Rational = mpq_class;

Integer parse_integer(std::string_view text);
/// Accepts "n" or "n/d"; the result is in lowest terms.
Rational parse_rational(std::string_view text);
Rational make_rational(const Integer& num, const Integer& den);

std::string to_string(const Integer& n);
std::string to_string(const Rational& x);

/// Effort bounds for factorization of arbitrary input.
struct FactorConfig {
  std::uint64_t trial_bound = 1000000;
  std::uint64_t rho_iterations = 10000000;
};

/// A cofactor survived the configured effort bound; increase the bound.
class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FactoredInteger {
  int sign = 1;
  /// Primes strictly increasing, exponents >= 1.
  std::vector<std::pair<Integer, unsigned>> factors;

  Integer value() const;
  std::vector<Integer> primes() const;
};

/// Largest n for which the fixed Miller-Rabin witness set is deterministic.
const Integer& deterministic_primality_limit();

/// Deterministic Miller-Rabin. Throws std::domain_error above
/// deterministic_primality_limit().
bool is_prime(const Integer& n);

/// Precondition: n != 0.
FactoredInteger factorize(const Integer& n, const FactorConfig& config = {});

/// The squarefree d with n/d a positive square.
Integer squarefree_part(const Integer& n, const FactorConfig& config = {});
/// Canonical representative of the square class of x in Q*/Q*^2.
Integer squarefree_part(const Rational& x, const FactorConfig& config = {});

bool is_square(const Integer& n);
bool is_square(const Rational& x);

/// Quadratic-residue symbol (a|p) for an odd prime p.
int legendre_symbol(const Integer& a, const Integer& p);

/// v_p(x) for x != 0.
long padic_valuation(const Integer& x, const Integer& p);
long padic_valuation(const Rational& x, const Integer& p);

/// x / p^{v_p(x)}.
Rational padic_unit_part(const Rational& x, const Integer& p);

/// Primes dividing the numerator or denominator of x.
std::vector<Integer> support_primes(const Rational& x, const FactorConfig& config = {});

/// A place of Q: a finite prime or the real place.
class Place {
 public:
  static Place real();
  /// Throws std::invalid_argument unless p is a certified prime.
  static Place finite(const Integer& p);
  static Place finite(long p) { return finite(Integer(p)); }

  bool is_real() const { return prime_ == 0; }
  bool is_finite() const { return prime_ != 0; }
  const Integer& prime() const;

  std::string to_string() const;

  friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
  /// Finite places ascending, the real place last.
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);

 private:
  explicit Place(Integer p) : prime_(std::move(p)) {}
  Integer prime_;  // 0 encodes the real place
};

bool is_square_in_Qp(const Rational& x, const Place& v);

/// Primes up to the bound, by sieve.
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

}  // namespace brauerkit
