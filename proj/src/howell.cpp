#include "brauerkit/howell.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace brauerkit {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 mod(i128 a, i64 n) {
  i128 r = a % n;
  return static_cast<i64>(r < 0 ? r + n : r);
}

// g = s*a + t*b with g = gcd(a, b) >= 0.
i64 ext_gcd(i64 a, i64 b, i64& s, i64& t) {
  i64 old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cs;
    old_s = cs;
    cs = tmp;
    tmp = old_t - q * ct;
    old_t = ct;
    ct = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

// A unit u of Z/n with u*a = gcd(a, n) mod n; a != 0 mod n.
i64 normalizing_unit(i64 a, i64 n) {
  i64 s, t;
  i64 d = ext_gcd(a, n, s, t);
  i64 m = n / d;
  i64 u0 = mod(s, m);
  for (i64 k = 0;; ++k) {
    i64 u = u0 + k * m;
    if (u >= n) break;
    if (std::gcd(u, n) == 1) return u;
  }
  throw std::logic_error("normalizing_unit: no unit found");
}

void combine(ModRow& x, ModRow& y, i64 s, i64 t, i64 u, i64 v, i64 n) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    i64 a = x[k], b = y[k];
    x[k] = mod(static_cast<i128>(s) * a + static_cast<i128>(t) * b, n);
    y[k] = mod(static_cast<i128>(u) * a + static_cast<i128>(v) * b, n);
  }
}

void axpy(ModRow& y, i64 q, const ModRow& x, i64 n) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = mod(y[k] + static_cast<i128>(q) * x[k], n);
}

bool is_zero_row(const ModRow& r) {
  return std::all_of(r.begin(), r.end(), [](i64 v) { return v == 0; });
}

}  // namespace

std::vector<ModRow> howell_form(std::vector<ModRow> rows, std::size_t cols, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("howell_form: modulus must be positive");
  for (auto& r : rows) {
    if (r.size() != cols) throw std::invalid_argument("howell_form: row length mismatch");
    for (auto& v : r) v = mod(v, n);
  }
  if (n == 1) return {};
  std::size_t top = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    if (top >= rows.size()) break;
    for (std::size_t i = top + 1; i < rows.size(); ++i) {
      if (rows[i][j] == 0) continue;
      if (rows[top][j] == 0) {
        std::swap(rows[top], rows[i]);
        continue;
      }
      i64 a = rows[top][j], b = rows[i][j], s, t;
      i64 g = ext_gcd(a, b, s, t);
      combine(rows[top], rows[i], s, t, -(b / g), a / g, n);
    }
    if (rows[top][j] == 0) continue;
    i64 u = normalizing_unit(rows[top][j], n);
    for (auto& v : rows[top]) v = mod(static_cast<i128>(v) * u, n);
    const i64 p = rows[top][j];
    for (std::size_t i = 0; i < top; ++i) {
      i64 q = rows[i][j] / p;
      if (q != 0) axpy(rows[i], -q, rows[top], n);
    }
    // The annihilator multiple stays in the span with a zero in column j.
    ModRow extra = rows[top];
    for (auto& v : extra) v = mod(static_cast<i128>(v) * (n / p), n);
    if (!is_zero_row(extra)) rows.push_back(std::move(extra));
    ++top;
  }
  rows.resize(std::min(top, rows.size()));
  rows.erase(std::remove_if(rows.begin(), rows.end(), is_zero_row), rows.end());
  return rows;
}

bool in_span(const std::vector<ModRow>& howell, ModRow v, std::int64_t n) {
  for (auto& x : v) x = mod(x, n);
  for (const auto& r : howell) {
    auto it = std::find_if(r.begin(), r.end(), [](i64 x) { return x != 0; });
    if (it == r.end()) continue;
    std::size_t j = static_cast<std::size_t>(it - r.begin());
    for (std::size_t k = 0; k < j; ++k) {
      if (v[k] != 0) return false;
    }
    if (v[j] % *it != 0) return false;
    axpy(v, -(v[j] / *it), r, n);
  }
  return is_zero_row(v);
}

std::vector<ModRow> kernel_mod(const std::vector<ModRow>& rows, std::size_t cols, std::int64_t n) {
  auto h = howell_form(rows, cols, n);
  const std::size_t m = h.size();
  std::vector<ModRow> w(cols, ModRow(m + cols, 0));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t k = 0; k < m; ++k) w[i][k] = h[k][i];
    w[i][m + i] = 1;
  }
  auto hw = howell_form(std::move(w), m + cols, n);
  std::vector<ModRow> out;
  for (const auto& r : hw) {
    if (std::all_of(r.begin(), r.begin() + static_cast<long>(m), [](i64 v) { return v == 0; })) {
      out.emplace_back(r.begin() + static_cast<long>(m), r.end());
    }
  }
  return out;
}

std::vector<Integer> smith_diagonal(std::vector<std::vector<Integer>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) {
        for (std::size_t k = t; k < std::min(rows, cols); ++k) diag.push_back(0);
        return diag;
      }
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Integer q = a[i][t] / a[t][t];
        if (q != 0) {
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        }
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Integer q = a[t][j] / a[t][t];
        if (q != 0) {
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        }
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

namespace {

// Upper-triangular basis (positive diagonal) of span(gens) + n Z^dim.
std::vector<std::vector<Integer>> lattice_basis(const std::vector<ModRow>& gens, std::size_t dim, i64 n) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& g : gens) {
    std::vector<Integer> r;
    for (auto v : g) r.emplace_back(static_cast<long>(mod(v, n)));
    rows.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Integer> r(dim, 0);
    r[i] = n;
    rows.push_back(std::move(r));
  }
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = 0; j < dim; ++j) {
    // gcd-combine column j over the remaining rows into rows[0]
    std::size_t piv = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][j] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows.size()) throw std::logic_error("lattice_basis: lattice not of full rank");
    std::swap(rows[0], rows[piv]);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i][j] == 0) continue;
      Integer a = rows[0][j], b = rows[i][j], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer u = -b / g, v = a / g;
      for (std::size_t k = j; k < dim; ++k) {
        Integer x = rows[0][k], y = rows[i][k];
        rows[0][k] = s * x + t * y;
        rows[i][k] = u * x + v * y;
      }
    }
    if (rows[0][j] < 0) {
      for (auto& x : rows[0]) x = -x;
    }
    basis.push_back(rows[0]);
    rows.erase(rows.begin());
  }
  return basis;
}

}  // namespace

std::vector<Integer> quotient_invariant_factors(const std::vector<ModRow>& z_gens,
                                                const std::vector<ModRow>& b_gens, std::size_t dim,
                                                std::int64_t n) {
  if (dim == 0 || n == 1) return {};
  auto bz = lattice_basis(z_gens, dim, n);
  auto bb = lattice_basis(b_gens, dim, n);
  // Each row of bb in coordinates of bz, by forward substitution.
  std::vector<std::vector<Integer>> t(dim, std::vector<Integer>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    std::vector<Integer> rest = bb[r];
    for (std::size_t j = 0; j < dim; ++j) {
      if (rest[j] % bz[j][j] != 0) {
        throw std::logic_error("quotient_invariant_factors: B is not contained in Z");
      }
      Integer q = rest[j] / bz[j][j];
      t[r][j] = q;
      for (std::size_t k = j; k < dim; ++k) rest[k] -= q * bz[j][k];
    }
  }
  std::vector<Integer> out;
  for (auto& d : smith_diagonal(std::move(t))) {
    if (d == 0) throw std::logic_error("quotient_invariant_factors: infinite quotient");
    if (d != 1) out.push_back(d);
  }
  return out;
}

}  // namespace brauerkit
