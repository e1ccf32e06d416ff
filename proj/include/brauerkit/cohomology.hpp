#pragma once

// Finite subgroups of GL_2(Z/n) and the cohomology groups H^0, H^1 of such a
// group with coefficients in the tautological module (Z/n)^2.

#include "brauerkit/howell.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauerkit {

using Vec2 = std::array<std::int64_t, 2>;

class ModMatrix {
 public:
  ModMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t n);
  static ModMatrix identity(std::int64_t n) { return {1, 0, 0, 1, n}; }

  std::int64_t a() const { return e_[0]; }
  std::int64_t b() const { return e_[1]; }
  std::int64_t c() const { return e_[2]; }
  std::int64_t d() const { return e_[3]; }
  std::int64_t modulus() const { return n_; }
  const std::array<std::int64_t, 4>& entries() const { return e_; }

  std::int64_t det() const;
  bool is_invertible() const;
  ModMatrix reduce(std::int64_t m) const;  // m | n
  Vec2 apply(const Vec2& v) const;

  friend ModMatrix operator*(const ModMatrix& x, const ModMatrix& y);
  friend bool operator==(const ModMatrix& x, const ModMatrix& y) = default;
  friend auto operator<=>(const ModMatrix& x, const ModMatrix& y) = default;

  std::string to_string() const;

 private:
  std::array<std::int64_t, 4> e_;
  std::int64_t n_;
};

class GroupCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultGroupCap = 5000;

class FiniteMatrixGroup {
 public:
  /// Elements sorted lexicographically by entries; generators as given.
  FiniteMatrixGroup(std::int64_t n, std::vector<ModMatrix> generators, std::vector<ModMatrix> elements);

  std::int64_t modulus() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<ModMatrix>& generators() const { return gens_; }
  const std::vector<ModMatrix>& elements() const { return elements_; }
  /// Position of g in elements(), or -1.
  long index_of(const ModMatrix& g) const;
  bool contains(const ModMatrix& g) const { return index_of(g) >= 0; }

 private:
  std::int64_t n_;
  std::vector<ModMatrix> gens_;
  std::vector<ModMatrix> elements_;
  std::vector<std::int32_t> lookup_;  // indexed by the entries read in base n
};

/// Closure of the generators under multiplication (breadth first).
FiniteMatrixGroup generate_group(std::int64_t n, const std::vector<ModMatrix>& generators,
                                 std::size_t cap = kDefaultGroupCap);

/// The elements of G satisfying pred, with generators chosen greedily in
/// element order. The predicate must cut out a subgroup.
FiniteMatrixGroup subgroup_where(const FiniteMatrixGroup& G, const std::function<bool(const ModMatrix&)>& pred);

/// Sign of the permutation induced on the nonzero vectors of (Z/2)^2 by m mod 2.
int signature_character(const ModMatrix& m);

FiniteMatrixGroup sl2(std::int64_t n, std::size_t cap = kDefaultGroupCap);
FiniteMatrixGroup gl2(std::int64_t n, std::size_t cap = kDefaultGroupCap);
/// SL_2(Z/n) for odd n; for even n the kernel of the signature of the
/// reduction mod 2.
FiniteMatrixGroup sl2_plus(std::int64_t n, std::size_t cap = kDefaultGroupCap);

bool is_normal_subgroup(const FiniteMatrixGroup& G, const FiniteMatrixGroup& H);

/// Fixed vectors of G in (Z/n)^2, in lexicographic order.
std::vector<Vec2> h0(const FiniteMatrixGroup& G);

/// A crossed homomorphism as its values c(g), indexed like G.elements().
using Cocycle = std::vector<Vec2>;

struct CohomologyGroup {
  std::int64_t modulus = 1;
  std::vector<Integer> invariant_factors;  // > 1, each dividing the next
  /// Cocycles whose classes generate the group.
  std::vector<Cocycle> representatives;
  std::size_t cocycle_generators = 0;
  std::size_t coboundary_generators = 0;

  bool is_trivial() const { return invariant_factors.empty(); }
  Integer exponent() const { return invariant_factors.empty() ? Integer(1) : invariant_factors.back(); }
  Integer order() const;
  std::string to_string() const;
};

CohomologyGroup h1(const FiniteMatrixGroup& G);

/// c(gh) = c(g) + g c(h) for every pair (g, h).
bool is_cocycle(const FiniteMatrixGroup& G, const Cocycle& c);

/// A subgroup H of G with a Z/n-linear idempotent projection e of the module
/// (multiplication by e); restriction lands in H^1(H, eM).
struct RestrictionTarget {
  FiniteMatrixGroup subgroup;
  std::int64_t projection = 1;
};

/// Whether H^1(G, M) -> (+)_i H^1(H_i, e_i M) has trivial kernel.
bool restriction_jointly_injective(const FiniteMatrixGroup& G, const std::vector<RestrictionTarget>& targets);

class PreconditionViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Injectivity of H^1(G, M) -> H^1(H, M). Requires H normal in G with
/// h0(H) = 0, else throws PreconditionViolated.
bool h1_restriction_injectivity(const FiniteMatrixGroup& G, const FiniteMatrixGroup& H);

}  // namespace brauerkit
