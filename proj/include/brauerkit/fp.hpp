#pragma once

// Arithmetic in F_p (p < 2^32), polynomials over F_p, and the extension
// F_p[X]/(f) for an irreducible f.

#include "brauerkit/arith.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace brauerkit {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);
/// Euler criterion: 1, -1 or 0.
int legendre_small(std::uint64_t a, std::uint64_t p);
/// The smaller square root of a modulo an odd prime p (Tonelli-Shanks);
/// nullopt for nonresidues.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);
/// x mod p for a rational with denominator prime to p.
std::uint64_t reduce_mod(const Rational& x, std::uint64_t p);

class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}
  static Fp from(const Rational& x, std::uint64_t p) { return {reduce_mod(x, p), p}; }

  std::uint64_t value() const { return v_; }
  std::uint64_t prime() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  Fp inverse() const;

  friend Fp operator+(Fp a, Fp b) { return {a.v_ + b.v_, a.p_}; }
  friend Fp operator-(Fp a, Fp b) { return {a.v_ + a.p_ - b.v_, a.p_}; }
  friend Fp operator-(Fp a) { return {a.p_ - a.v_, a.p_}; }
  friend Fp operator*(Fp a, Fp b) { return {a.v_ * b.v_, a.p_}; }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  std::string to_string() const { return std::to_string(v_); }

 private:
  std::uint64_t v_ = 0, p_ = 2;
};

/// Coefficients in [0, p), constant term first, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

void fp_trim(FpPoly& f);
FpPoly fp_mul(const FpPoly& f, const FpPoly& g, std::uint64_t p);
FpPoly fp_sub(const FpPoly& f, const FpPoly& g, std::uint64_t p);
/// Remainder of f by g (g nonzero).
FpPoly fp_rem(const FpPoly& f, const FpPoly& g, std::uint64_t p);
FpPoly fp_gcd(FpPoly f, FpPoly g, std::uint64_t p);
/// X^e mod f.
FpPoly fp_x_pow_mod(Integer e, const FpPoly& f, std::uint64_t p);
/// Whether f (deg >= 1) has an irreducible factor of degree 1 or 2.
bool fp_has_factor_degree_le2(const FpPoly& f, std::uint64_t p);
/// Irreducibility for degree <= 5 via factors of degree <= deg/2.
bool fp_is_irreducible(const FpPoly& f, std::uint64_t p);

/// F_p[X]/(f) with f monic irreducible.
struct FpExtModulus {
  std::uint64_t p;
  FpPoly f;
};

class FpExt {
 public:
  FpExt(FpPoly c, std::shared_ptr<const FpExtModulus> m);
  static FpExt constant(std::uint64_t a, const std::shared_ptr<const FpExtModulus>& m) {
    return FpExt(FpPoly{a % m->p}, m);
  }
  static FpExt generator(const std::shared_ptr<const FpExtModulus>& m) { return FpExt(FpPoly{0, 1}, m); }

  const FpPoly& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  FpExt inverse() const;

  friend FpExt operator+(const FpExt& a, const FpExt& b);
  friend FpExt operator-(const FpExt& a, const FpExt& b);
  friend FpExt operator-(const FpExt& a);
  friend FpExt operator*(const FpExt& a, const FpExt& b);
  friend FpExt operator/(const FpExt& a, const FpExt& b) { return a * b.inverse(); }
  friend bool operator==(const FpExt& a, const FpExt& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  FpPoly c_;
  std::shared_ptr<const FpExtModulus> m_;
};

}  // namespace brauerkit
