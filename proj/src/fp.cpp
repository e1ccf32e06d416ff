#include "brauerkit/fp.hpp"

#include <stdexcept>

namespace brauerkit {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<unsigned __int128>(r) * b % p;
    b = static_cast<unsigned __int128>(b) * b % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("inv_mod: zero has no inverse");
  return pow_mod(a, p - 2, p);
}

int legendre_small(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return 1;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre_small(a, p) != 1) return std::nullopt;
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint64_t z = 2;
  while (legendre_small(z, p) != -1) ++z;
  std::uint64_t m = s, c = pow_mod(z, q, p), t = pow_mod(a, q, p), r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = static_cast<unsigned __int128>(tt) * tt % p;
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = static_cast<unsigned __int128>(b) * b % p;
    m = i;
    c = static_cast<unsigned __int128>(b) * b % p;
    t = static_cast<unsigned __int128>(t) * c % p;
    r = static_cast<unsigned __int128>(r) * b % p;
  }
  return std::min(r, p - r);
}

std::uint64_t reduce_mod(const Rational& x, std::uint64_t p) {
  Integer P(static_cast<unsigned long>(p));
  Integer n = x.get_num() % P, d = x.get_den() % P;
  if (n < 0) n += P;
  if (d == 0) throw std::domain_error("reduce_mod: denominator divisible by " + std::to_string(p));
  std::uint64_t nv = n.get_ui(), dv = d.get_ui();
  return static_cast<unsigned __int128>(nv) * inv_mod(dv, p) % p;
}

Fp Fp::inverse() const { return {inv_mod(v_, p_), p_}; }

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly fp_mul(const FpPoly& f, const FpPoly& g, std::uint64_t p) {
  if (f.empty() || g.empty()) return {};
  FpPoly out(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = (out[i + j] + f[i] * g[j]) % p;
  }
  fp_trim(out);
  return out;
}

FpPoly fp_sub(const FpPoly& f, const FpPoly& g, std::uint64_t p) {
  FpPoly out(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
    out[i] = (a + p - b) % p;
  }
  fp_trim(out);
  return out;
}

FpPoly fp_rem(const FpPoly& f, const FpPoly& g, std::uint64_t p) {
  if (g.empty()) throw std::domain_error("fp_rem: division by zero");
  FpPoly r = f;
  fp_trim(r);
  const std::uint64_t li = inv_mod(g.back(), p);
  while (r.size() >= g.size()) {
    std::uint64_t t = r.back() * li % p;
    std::size_t shift = r.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) r[shift + i] = (r[shift + i] + p - t * g[i] % p) % p;
    fp_trim(r);
  }
  return r;
}

FpPoly fp_gcd(FpPoly f, FpPoly g, std::uint64_t p) {
  fp_trim(f);
  fp_trim(g);
  while (!g.empty()) {
    FpPoly r = fp_rem(f, g, p);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty()) {
    std::uint64_t li = inv_mod(f.back(), p);
    for (auto& c : f) c = c * li % p;
  }
  return f;
}

FpPoly fp_x_pow_mod(Integer e, const FpPoly& f, std::uint64_t p) {
  FpPoly result{1}, base = fp_rem(FpPoly{0, 1}, f, p);
  result = fp_rem(result, f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = fp_rem(fp_mul(result, base, p), f, p);
    base = fp_rem(fp_mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

namespace {

bool has_factor_of_degree_dividing(const FpPoly& f, std::uint64_t p, unsigned k) {
  Integer q = 1;
  for (unsigned i = 0; i < k; ++i) q *= static_cast<unsigned long>(p);
  // gcd(f, X^{p^k} - X) collects the irreducible factors of degree dividing k
  FpPoly h = fp_sub(fp_x_pow_mod(q, f, p), FpPoly{0, 1}, p);
  FpPoly g = fp_gcd(f, h, p);
  return g.size() > 1;
}

}  // namespace

bool fp_has_factor_degree_le2(const FpPoly& f, std::uint64_t p) {
  if (f.size() < 2) throw std::invalid_argument("fp_has_factor_degree_le2: constant polynomial");
  return has_factor_of_degree_dividing(f, p, 1) || has_factor_of_degree_dividing(f, p, 2);
}

bool fp_is_irreducible(const FpPoly& f, std::uint64_t p) {
  const std::size_t deg = f.size() - 1;
  if (f.size() < 2) return false;
  if (deg > 5) throw std::invalid_argument("fp_is_irreducible: degree above 5");
  if (deg == 1) return true;
  if (has_factor_of_degree_dividing(f, p, 1)) return false;
  if (deg >= 4 && has_factor_of_degree_dividing(f, p, 2)) return false;
  return true;
}

FpExt::FpExt(FpPoly c, std::shared_ptr<const FpExtModulus> m) : m_(std::move(m)) {
  for (auto& x : c) x %= m_->p;
  c_ = fp_rem(c, m_->f, m_->p);
}

FpExt operator+(const FpExt& a, const FpExt& b) {
  FpPoly out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ((i < a.c_.size() ? a.c_[i] : 0) + (i < b.c_.size() ? b.c_[i] : 0)) % a.m_->p;
  }
  fp_trim(out);
  return FpExt(std::move(out), a.m_);
}

FpExt operator-(const FpExt& a, const FpExt& b) { return FpExt(fp_sub(a.c_, b.c_, a.m_->p), a.m_); }

FpExt operator-(const FpExt& a) { return FpExt(fp_sub(FpPoly{}, a.c_, a.m_->p), a.m_); }

FpExt operator*(const FpExt& a, const FpExt& b) { return FpExt(fp_mul(a.c_, b.c_, a.m_->p), a.m_); }

FpExt FpExt::inverse() const {
  if (c_.empty()) throw std::domain_error("FpExt: zero has no inverse");
  const std::uint64_t p = m_->p;
  // extended Euclid: s*c + t*f = gcd
  FpPoly r0 = m_->f, r1 = c_, s0{}, s1{1};
  while (!r1.empty()) {
    // q = r0 div r1
    FpPoly q, r = r0;
    const std::uint64_t li = inv_mod(r1.back(), p);
    if (r.size() >= r1.size()) q.assign(r.size() - r1.size() + 1, 0);
    while (r.size() >= r1.size() && !r.empty()) {
      std::uint64_t t = r.back() * li % p;
      std::size_t shift = r.size() - r1.size();
      q[shift] = t;
      for (std::size_t i = 0; i < r1.size(); ++i) r[shift + i] = (r[shift + i] + p - t * r1[i] % p) % p;
      fp_trim(r);
    }
    fp_trim(q);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw std::domain_error("FpExt: modulus is not irreducible");
  const std::uint64_t li = inv_mod(r0[0], p);
  for (auto& x : s0) x = x * li % p;
  return FpExt(std::move(s0), m_);
}

std::string FpExt::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += std::to_string(c_[i]);
    if (i > 0) out += i == 1 ? "*X" : "*X^" + std::to_string(i);
  }
  return out;
}

}  // namespace brauerkit
