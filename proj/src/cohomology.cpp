#include "brauerkit/cohomology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace brauerkit {

namespace {

using i64 = std::int64_t;

i64 mod(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

i64 inverse_mod(i64 a, i64 n) {
  i64 g = n, x = 0, y = 1, r = mod(a, n);
  // extended Euclid on (n, r)
  while (r != 0) {
    i64 q = g / r;
    i64 t = g - q * r;
    g = r;
    r = t;
    t = x - q * y;
    x = y;
    y = t;
  }
  if (g != 1) throw std::domain_error("inverse_mod: not a unit");
  return mod(x, n);
}

ModMatrix inverse(const ModMatrix& m) {
  const i64 n = m.modulus();
  i64 di = inverse_mod(m.det(), n);
  return {m.d() * di, -m.b() * di, -m.c() * di, m.a() * di, n};
}

}  // namespace

ModMatrix::ModMatrix(i64 a, i64 b, i64 c, i64 d, i64 n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ModMatrix: modulus must be positive");
  e_ = {mod(a, n), mod(b, n), mod(c, n), mod(d, n)};
}

i64 ModMatrix::det() const { return mod(e_[0] * e_[3] - e_[1] * e_[2], n_); }

bool ModMatrix::is_invertible() const { return std::gcd(det(), n_) == 1; }

ModMatrix ModMatrix::reduce(i64 m) const {
  if (m < 1 || n_ % m != 0) throw std::invalid_argument("ModMatrix::reduce: modulus must divide n");
  return {e_[0], e_[1], e_[2], e_[3], m};
}

Vec2 ModMatrix::apply(const Vec2& v) const {
  return {mod(e_[0] * v[0] + e_[1] * v[1], n_), mod(e_[2] * v[0] + e_[3] * v[1], n_)};
}

ModMatrix operator*(const ModMatrix& x, const ModMatrix& y) {
  if (x.n_ != y.n_) throw std::invalid_argument("ModMatrix: mismatched moduli");
  const auto& p = x.e_;
  const auto& q = y.e_;
  return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
          p[2] * q[1] + p[3] * q[3], x.n_};
}

std::string ModMatrix::to_string() const {
  return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" + std::to_string(e_[2]) + "," +
         std::to_string(e_[3]) + "]]";
}

FiniteMatrixGroup::FiniteMatrixGroup(i64 n, std::vector<ModMatrix> generators, std::vector<ModMatrix> elements)
    : n_(n), gens_(std::move(generators)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
}

long FiniteMatrixGroup::index_of(const ModMatrix& g) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || !(*it == g)) return -1;
  return static_cast<long>(it - elements_.begin());
}

FiniteMatrixGroup generate_group(i64 n, const std::vector<ModMatrix>& generators, std::size_t cap) {
  for (const auto& g : generators) {
    if (g.modulus() != n) throw std::invalid_argument("generate_group: generator with another modulus");
    if (!g.is_invertible()) throw std::invalid_argument("generate_group: " + g.to_string() + " is not invertible");
  }
  std::set<ModMatrix> seen{ModMatrix::identity(n)};
  std::deque<ModMatrix> queue{ModMatrix::identity(n)};
  while (!queue.empty()) {
    ModMatrix g = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      ModMatrix h = s * g;
      if (seen.insert(h).second) {
        if (seen.size() > cap) {
          throw GroupCapExceeded("group order exceeds the cap of " + std::to_string(cap) + " elements");
        }
        queue.push_back(h);
      }
    }
  }
  return FiniteMatrixGroup(n, generators, std::vector<ModMatrix>(seen.begin(), seen.end()));
}

namespace {

FiniteMatrixGroup with_greedy_generators(i64 n, std::vector<ModMatrix> elements) {
  std::sort(elements.begin(), elements.end());
  std::vector<ModMatrix> gens;
  FiniteMatrixGroup current = generate_group(n, gens, elements.size());
  for (const auto& g : elements) {
    if (current.order() == elements.size()) break;
    if (current.contains(g)) continue;
    gens.push_back(g);
    current = generate_group(n, gens, elements.size());
  }
  if (current.order() != elements.size()) {
    throw std::logic_error("subgroup_where: the predicate does not cut out a subgroup");
  }
  return FiniteMatrixGroup(n, gens, std::move(elements));
}

}  // namespace

FiniteMatrixGroup subgroup_where(const FiniteMatrixGroup& G, const std::function<bool(const ModMatrix&)>& pred) {
  std::vector<ModMatrix> keep;
  for (const auto& g : G.elements()) {
    if (pred(g)) keep.push_back(g);
  }
  return with_greedy_generators(G.modulus(), std::move(keep));
}

int signature_character(const ModMatrix& m) {
  ModMatrix r = m.reduce(2);
  if (!r.is_invertible()) throw std::invalid_argument("signature_character: not invertible mod 2");
  const Vec2 vs[3] = {{1, 0}, {0, 1}, {1, 1}};
  int perm[3];
  for (int i = 0; i < 3; ++i) {
    Vec2 w = r.apply(vs[i]);
    for (int j = 0; j < 3; ++j) {
      if (w == vs[j]) perm[i] = j;
    }
  }
  int inversions = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) inversions += perm[i] > perm[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

FiniteMatrixGroup sl2(i64 n, std::size_t cap) {
  if (n < 2) throw std::invalid_argument("sl2: n must be at least 2");
  return generate_group(n, {ModMatrix(1, 1, 0, 1, n), ModMatrix(1, 0, 1, 1, n)}, cap);
}

FiniteMatrixGroup gl2(i64 n, std::size_t cap) {
  if (n < 2) throw std::invalid_argument("gl2: n must be at least 2");
  std::vector<ModMatrix> gens{ModMatrix(1, 1, 0, 1, n), ModMatrix(1, 0, 1, 1, n)};
  for (i64 u = 2; u < n; ++u) {
    if (std::gcd(u, n) == 1) gens.emplace_back(u, 0, 0, 1, n);
  }
  return generate_group(n, gens, cap);
}

FiniteMatrixGroup sl2_plus(i64 n, std::size_t cap) {
  if (n < 2) throw std::invalid_argument("sl2_plus: n must be at least 2");
  if (n % 2 == 1) return sl2(n, cap);
  std::vector<ModMatrix> els;
  for (i64 a = 0; a < n; ++a) {
    for (i64 b = 0; b < n; ++b) {
      for (i64 c = 0; c < n; ++c) {
        for (i64 d = 0; d < n; ++d) {
          if (mod(a * d - b * c, n) != 1) continue;
          ModMatrix m(a, b, c, d, n);
          if (signature_character(m) != 1) continue;
          els.push_back(m);
          if (els.size() > cap) {
            throw GroupCapExceeded("group order exceeds the cap of " + std::to_string(cap) + " elements");
          }
        }
      }
    }
  }
  return with_greedy_generators(n, std::move(els));
}

bool is_normal_subgroup(const FiniteMatrixGroup& G, const FiniteMatrixGroup& H) {
  for (const auto& h : H.elements()) {
    if (!G.contains(h)) return false;
  }
  for (const auto& g : G.generators()) {
    ModMatrix gi = inverse(g);
    for (const auto& h : H.generators()) {
      if (!H.contains(g * h * gi)) return false;
    }
  }
  return true;
}

std::vector<Vec2> h0(const FiniteMatrixGroup& G) {
  const i64 n = G.modulus();
  std::vector<Vec2> out;
  for (i64 x = 0; x < n; ++x) {
    for (i64 y = 0; y < n; ++y) {
      Vec2 v{x, y};
      bool fixed = std::all_of(G.generators().begin(), G.generators().end(),
                               [&](const ModMatrix& g) { return g.apply(v) == v; });
      if (fixed) out.push_back(v);
    }
  }
  return out;
}

Integer CohomologyGroup::order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::string CohomologyGroup::to_string() const {
  if (invariant_factors.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + invariant_factors[i].get_str();
  }
  return out;
}

namespace {

// c(g) = A_g v for v = (c(s_1), ..., c(s_k)): two rows of length 2k per group
// element, consistent on the BFS spanning tree from the identity; every other
// edge g -> s g contributes the relation c(s g) = c(s) + s c(g).
struct CocycleSystem {
  std::int64_t n;
  std::size_t dim;
  std::vector<std::array<ModRow, 2>> A;
  std::vector<ModRow> relations;  // Howell form
};

ModRow combine_rows(const ModMatrix& s, const std::array<ModRow, 2>& a, std::size_t r, i64 n) {
  ModRow out(a[0].size());
  const i64 x = r == 0 ? s.a() : s.c(), y = r == 0 ? s.b() : s.d();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = mod(x * a[0][k] + y * a[1][k], n);
  return out;
}

CocycleSystem build_system(const FiniteMatrixGroup& G) {
  const i64 n = G.modulus();
  const std::size_t k = G.generators().size();
  CocycleSystem sys{n, 2 * k, {}, {}};
  sys.A.resize(G.order());
  std::vector<bool> known(G.order(), false);
  long e = G.index_of(ModMatrix::identity(n));
  sys.A[e] = {ModRow(sys.dim, 0), ModRow(sys.dim, 0)};
  known[e] = true;
  std::deque<long> queue{e};
  std::vector<ModRow> pending;
  auto flush = [&]() {
    for (auto& r : sys.relations) pending.push_back(std::move(r));
    sys.relations = howell_form(std::move(pending), sys.dim, n);
    pending.clear();
  };
  while (!queue.empty()) {
    long g = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < k; ++j) {
      const ModMatrix& s = G.generators()[j];
      long t = G.index_of(s * G.elements()[g]);
      std::array<ModRow, 2> value;
      for (std::size_t r = 0; r < 2; ++r) {
        value[r] = combine_rows(s, sys.A[g], r, n);
        value[r][2 * j + r] = mod(value[r][2 * j + r] + 1, n);
      }
      if (!known[t]) {
        sys.A[t] = std::move(value);
        known[t] = true;
        queue.push_back(t);
        continue;
      }
      for (std::size_t r = 0; r < 2; ++r) {
        ModRow rel(sys.dim);
        bool nonzero = false;
        for (std::size_t c = 0; c < sys.dim; ++c) {
          rel[c] = mod(sys.A[t][r][c] - value[r][c], n);
          nonzero |= rel[c] != 0;
        }
        if (nonzero) pending.push_back(std::move(rel));
      }
      if (pending.size() >= 512) flush();
    }
  }
  flush();
  if (!std::all_of(known.begin(), known.end(), [](bool b) { return b; })) {
    throw std::logic_error("h1: generators do not generate the group");
  }
  return sys;
}

std::vector<ModRow> coboundary_generators(const FiniteMatrixGroup& G) {
  const i64 n = G.modulus();
  std::vector<ModRow> out;
  for (const Vec2& m : {Vec2{1, 0}, Vec2{0, 1}}) {
    ModRow row;
    for (const auto& s : G.generators()) {
      Vec2 w = s.apply(m);
      row.push_back(mod(w[0] - m[0], n));
      row.push_back(mod(w[1] - m[1], n));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Cocycle expand(const CocycleSystem& sys, const ModRow& v) {
  Cocycle c(sys.A.size());
  for (std::size_t g = 0; g < sys.A.size(); ++g) {
    for (std::size_t r = 0; r < 2; ++r) {
      i64 acc = 0;
      for (std::size_t k = 0; k < sys.dim; ++k) acc = mod(acc + sys.A[g][r][k] * v[k], sys.n);
      c[g][r] = acc;
    }
  }
  return c;
}

}  // namespace

CohomologyGroup h1(const FiniteMatrixGroup& G) {
  CohomologyGroup out;
  out.modulus = G.modulus();
  if (G.modulus() == 1 || G.generators().empty()) return out;
  CocycleSystem sys = build_system(G);
  auto z = kernel_mod(sys.relations, sys.dim, sys.n);
  auto b = coboundary_generators(G);
  out.cocycle_generators = z.size();
  out.coboundary_generators = b.size();
  out.invariant_factors = quotient_invariant_factors(z, b, sys.dim, sys.n);
  auto hb = howell_form(b, sys.dim, sys.n);
  for (const auto& v : z) {
    if (!in_span(hb, v, sys.n)) out.representatives.push_back(expand(sys, v));
  }
  return out;
}

bool is_cocycle(const FiniteMatrixGroup& G, const Cocycle& c) {
  if (c.size() != G.order()) return false;
  const i64 n = G.modulus();
  const auto& els = G.elements();
  for (std::size_t g = 0; g < els.size(); ++g) {
    for (std::size_t h = 0; h < els.size(); ++h) {
      long gh = G.index_of(els[g] * els[h]);
      Vec2 w = els[g].apply(c[h]);
      if (c[gh][0] != mod(c[g][0] + w[0], n) || c[gh][1] != mod(c[g][1] + w[1], n)) return false;
    }
  }
  return true;
}

bool restriction_jointly_injective(const FiniteMatrixGroup& G, const std::vector<RestrictionTarget>& targets) {
  const i64 n = G.modulus();
  if (n == 1 || G.generators().empty()) return true;
  CocycleSystem sys = build_system(G);
  const std::size_t dim = sys.dim + 2 * targets.size();
  std::vector<ModRow> rows;
  for (const auto& r : sys.relations) {
    ModRow w(dim, 0);
    std::copy(r.begin(), r.end(), w.begin());
    rows.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& H = targets[i].subgroup;
    const i64 e = targets[i].projection;
    if (H.modulus() != n) throw std::invalid_argument("restriction: subgroup with another modulus");
    for (const auto& h : H.generators()) {
      long idx = G.index_of(h);
      if (idx < 0) throw std::invalid_argument("restriction: " + h.to_string() + " is not in G");
      // e * c(h) - (h - 1) m_i = 0
      for (std::size_t r = 0; r < 2; ++r) {
        ModRow w(dim, 0);
        for (std::size_t k = 0; k < sys.dim; ++k) w[k] = mod(e * sys.A[idx][r][k], n);
        const i64 x = r == 0 ? h.a() : h.c(), y = r == 0 ? h.b() : h.d();
        w[sys.dim + 2 * i] = mod(-(x - (r == 0 ? 1 : 0)), n);
        w[sys.dim + 2 * i + 1] = mod(-(y - (r == 1 ? 1 : 0)), n);
        rows.push_back(std::move(w));
      }
    }
  }
  auto kernel = kernel_mod(rows, dim, n);
  auto hb = howell_form(coboundary_generators(G), sys.dim, n);
  for (const auto& s : kernel) {
    ModRow v(s.begin(), s.begin() + static_cast<long>(sys.dim));
    if (!in_span(hb, v, n)) return false;
  }
  return true;
}

bool h1_restriction_injectivity(const FiniteMatrixGroup& G, const FiniteMatrixGroup& H) {
  if (!is_normal_subgroup(G, H)) throw PreconditionViolated("restriction: H is not a normal subgroup of G");
  if (h0(H).size() != 1) throw PreconditionViolated("restriction: H has nonzero fixed vectors");
  return restriction_jointly_injective(G, {{H, 1}});
}

}  // namespace brauerkit
