#pragma once

// Reference H^1 computed from the whole function space M^G: every cocycle
// equation c(gh) = c(g) + g c(h) is imposed, and the module is split into its
// p-primary parts so that all linear algebra happens over the local rings
// Z/p^k. Shares nothing with the library's Howell-form code.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Mat = std::array<std::int64_t, 4>;  // a, b, c, d
using Row = std::vector<std::int64_t>;

inline std::int64_t mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

inline Mat mul(const Mat& x, const Mat& y, std::int64_t n) {
  return {mod(x[0] * y[0] + x[1] * y[2], n), mod(x[0] * y[1] + x[1] * y[3], n),
          mod(x[2] * y[0] + x[3] * y[2], n), mod(x[2] * y[1] + x[3] * y[3], n)};
}

inline std::int64_t det(const Mat& m, std::int64_t n) { return mod(m[0] * m[3] - m[1] * m[2], n); }

/// Brute force over all n^4 matrices.
template <class Pred>
std::vector<Mat> all_matrices(std::int64_t n, Pred keep) {
  std::vector<Mat> out;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b)
      for (std::int64_t c = 0; c < n; ++c)
        for (std::int64_t d = 0; d < n; ++d) {
          Mat m{a, b, c, d};
          if (keep(m)) out.push_back(m);
        }
  return out;
}

inline std::vector<Mat> sl2_brute(std::int64_t n) {
  return all_matrices(n, [n](const Mat& m) { return det(m, n) == 1 % n; });
}

inline std::vector<Mat> gl2_brute(std::int64_t n) {
  return all_matrices(n, [n](const Mat& m) { return std::gcd(det(m, n), n) == 1; });
}

/// Sign of m mod 2 acting on the three nonzero vectors of (Z/2)^2: a 3-cycle
/// or the identity is even, a transposition odd.
inline int sign_mod2(const Mat& m) {
  Mat r{m[0] & 1, m[1] & 1, m[2] & 1, m[3] & 1};
  bool identity = r == Mat{1, 0, 0, 1};
  // elements of order 3 in GL_2(F_2) have trace 1
  bool order3 = ((r[0] + r[3]) & 1) == 1;
  return identity || order3 ? 1 : -1;
}

inline std::vector<Mat> sl2_plus_brute(std::int64_t n) {
  return all_matrices(n, [n](const Mat& m) {
    if (det(m, n) != 1 % n) return false;
    return n % 2 == 1 || sign_mod2(m) == 1;
  });
}

struct LocalRing {
  std::int64_t p, k, q;  // q = p^k
  int val(std::int64_t x) const {
    x = mod(x, q);
    if (x == 0) return static_cast<int>(k);
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
  std::int64_t inv_unit(std::int64_t u) const {
    u = mod(u, q);
    for (std::int64_t t = 1; t < q; ++t) {
      if (mod(u * t, q) == 1) return t;
    }
    return 0;
  }
};

/// Echelon generators of the span of rows over Z/p^k and log_p of its size.
/// After a pivot of valuation v is taken, p^{k-v} times the pivot row (zero in
/// that column) rejoins the pool, so nothing in the span is lost.
inline std::pair<std::vector<Row>, long> echelon(std::vector<Row> pool, std::size_t cols, const LocalRing& R) {
  std::vector<Row> pivots;
  long logsize = 0;
  for (std::size_t j = 0; j < cols; ++j) {
    int best = static_cast<int>(R.k);
    std::size_t at = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      int v = R.val(pool[i][j]);
      if (v < best) {
        best = v;
        at = i;
      }
    }
    if (best == R.k) continue;
    Row piv = pool[at];
    pool.erase(pool.begin() + static_cast<long>(at));
    std::int64_t pv = 1;
    for (int t = 0; t < best; ++t) pv *= R.p;
    std::int64_t u = R.inv_unit(piv[j] / pv);
    for (auto& x : piv) x = mod(x * u, R.q);
    for (auto& row : pool) {
      std::int64_t e = mod(row[j], R.q);
      if (e == 0) continue;
      std::int64_t t = e / pv;
      for (std::size_t c = 0; c < cols; ++c) row[c] = mod(row[c] - t * piv[c], R.q);
    }
    Row shifted = piv;
    std::int64_t s = R.q / pv;
    bool nonzero = false;
    for (auto& x : shifted) {
      x = mod(x * s, R.q);
      nonzero = nonzero || x != 0;
    }
    if (nonzero) pool.push_back(shifted);
    logsize += R.k - best;
    pivots.push_back(std::move(piv));
  }
  return {pivots, logsize};
}

/// Generators of {x : A x = 0} over Z/p^k by diagonalising A with row and
/// column operations and tracking the column operations.
inline std::vector<Row> kernel(std::vector<Row> A, std::size_t cols, const LocalRing& R) {
  const std::size_t rows = A.size();
  std::vector<Row> V(cols, Row(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) V[i][i] = 1;
  std::vector<int> diag(cols, static_cast<int>(R.k));
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    int best = static_cast<int>(R.k);
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        int v = R.val(A[i][j]);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best == R.k) break;
    std::swap(A[t], A[bi]);
    for (auto& row : A) std::swap(row[t], row[bj]);
    for (auto& row : V) std::swap(row[t], row[bj]);
    std::int64_t pv = 1;
    for (int s = 0; s < best; ++s) pv *= R.p;
    std::int64_t u = R.inv_unit(A[t][t] / pv);
    for (auto& x : A[t]) x = mod(x * u, R.q);
    for (std::size_t i = t + 1; i < rows; ++i) {
      std::int64_t f = mod(A[i][t], R.q) / pv;
      if (f == 0) continue;
      for (std::size_t j = t; j < cols; ++j) A[i][j] = mod(A[i][j] - f * A[t][j], R.q);
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      std::int64_t f = mod(A[t][j], R.q) / pv;
      if (f == 0) continue;
      for (std::size_t i = 0; i < rows; ++i) A[i][j] = mod(A[i][j] - f * A[i][t], R.q);
      for (std::size_t i = 0; i < cols; ++i) V[i][j] = mod(V[i][j] - f * V[i][t], R.q);
    }
    diag[t] = best;
  }
  std::vector<Row> out;
  for (std::size_t j = 0; j < cols; ++j) {
    std::int64_t scale = 1;
    for (int s = 0; s < R.k - diag[j]; ++s) scale *= R.p;
    if (diag[j] == R.k) scale = 1;
    Row x(cols);
    bool nonzero = false;
    for (std::size_t i = 0; i < cols; ++i) {
      x[i] = mod(V[i][j] * scale, R.q);
      nonzero = nonzero || x[i] != 0;
    }
    if (nonzero) out.push_back(std::move(x));
  }
  return out;
}

/// Elementary divisors (prime powers, ascending) of H^1(G, (Z/n)^2) where G
/// is given by its elements as matrices mod n.
inline std::vector<std::int64_t> h1_elementary_divisors(const std::vector<Mat>& G, std::int64_t n) {
  std::map<Mat, std::size_t> index;
  for (std::size_t i = 0; i < G.size(); ++i) index[G[i]] = i;
  const std::size_t g = G.size(), cols = 2 * g;
  std::vector<std::int64_t> out;

  std::int64_t rest = n;
  for (std::int64_t p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    LocalRing R{p, 0, 1};
    while (rest % p == 0) {
      rest /= p;
      ++R.k;
      R.q *= p;
    }
    std::vector<Row> eqs;
    for (std::size_t x = 0; x < g; ++x)
      for (std::size_t y = 0; y < g; ++y) {
        std::size_t xy = index.at(mul(G[x], G[y], n));
        const Mat& m = G[x];
        for (int comp = 0; comp < 2; ++comp) {
          Row e(cols, 0);
          e[2 * xy + comp] += 1;
          e[2 * x + comp] -= 1;
          e[2 * y + 0] -= m[2 * comp + 0];
          e[2 * y + 1] -= m[2 * comp + 1];
          for (auto& v : e) v = mod(v, R.q);
          eqs.push_back(std::move(e));
        }
      }
    auto compressed = echelon(eqs, cols, R).first;
    auto Z = kernel(compressed, cols, R);
    std::vector<Row> B;
    for (int comp = 0; comp < 2; ++comp) {
      Row f(cols);
      for (std::size_t x = 0; x < g; ++x) {
        const Mat& m = G[x];
        f[2 * x + 0] = mod(m[0 * 2 + comp] - (comp == 0), R.q);
        f[2 * x + 1] = mod(m[1 * 2 + comp] - (comp == 1), R.q);
      }
      B.push_back(f);
    }
    const long logB = echelon(B, cols, R).second;
    // h[j] = log_p |p^j H^1|
    std::vector<long> h;
    std::int64_t pj = 1;
    for (long j = 0; j <= R.k; ++j) {
      std::vector<Row> gens = B;
      for (const auto& z : Z) {
        Row s(cols);
        for (std::size_t c = 0; c < cols; ++c) s[c] = mod(z[c] * pj, R.q);
        gens.push_back(s);
      }
      h.push_back(echelon(gens, cols, R).second - logB);
      pj *= p;
    }
    // factors of order >= p^{j+1}: h[j] - h[j+1]
    std::int64_t pw = p;
    for (long j = 0; j < R.k; ++j) {
      long at_least = h[j] - h[j + 1];
      long more = j + 1 < R.k ? h[j + 1] - h[j + 2] : 0;
      for (long c = 0; c < at_least - more; ++c) out.push_back(pw);
      pw *= p;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
