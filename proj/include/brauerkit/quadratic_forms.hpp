#pragma once

// Hilbert symbols, local isotropy of diagonal quadratic forms over the
// completions of Q, and over the completion of a real quadratic field at its
// unique prime above 2.

#include "brauerkit/arith.hpp"
#include "brauerkit/quad_field.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace brauerkit {

/// (a, b)_v in {+1, -1}; a, b nonzero.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Diagonal form <a_1, ..., a_r> with nonzero rational coefficients.
class DiagonalForm {
 public:
  explicit DiagonalForm(std::vector<Rational> coefficients);
  DiagonalForm(std::initializer_list<long> coefficients);

  std::size_t rank() const { return coeffs_.size(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }

  Rational discriminant() const;
  Rational evaluate(std::span<const Rational> x) const;

  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
};

/// Product of (a_i, a_j)_v over i < j.
int hasse_invariant(const DiagonalForm& f, const Place& v);

bool is_isotropic_local(const DiagonalForm& f, const Place& v);

/// Places where f is anisotropic, sorted (finite ascending, real last).
/// Only 2, the real place and primes in the support of the coefficients are
/// examined; every other symbol is unramified. Requires rank >= 2.
std::vector<Place> anisotropic_places(const DiagonalForm& f, const FactorConfig& config = {});

/// Hasse-Minkowski. Requires rank >= 2.
bool is_isotropic_over_Q(const DiagonalForm& f, const FactorConfig& config = {});

/// Nonzero integral x with f(x) = 0 and every |x_i| <= height_bound, searched
/// in increasing lexicographic order of (|x_1|, ..., |x_{r-1}|). An empty
/// result proves nothing.
std::optional<std::vector<Rational>> find_isotropic_vector(const DiagonalForm& f,
                                                            const Integer& height_bound);

/// The Albert form <a, b, -ab, -c, -d, cd> of (a, b) (x) (c, d).
DiagonalForm albert_form(const Rational& alpha, const Rational& beta, const Rational& gamma,
                         const Rational& delta);

/// Whether (alpha, beta) (x) (gamma, delta) over Q is a division algebra.
bool albert_is_division(const Rational& alpha, const Rational& beta, const Rational& gamma,
                        const Rational& delta, const FactorConfig& config = {});

// ---------------------------------------------------------------------------
// Completion of Q(sqrt(c)) at the prime above 2.

/// Neither certificate could be reached at the requested precision.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model of the 2-adic completion k_w of k = Q(sqrt(c)), c squarefree positive
/// and c != 1 mod 8. Elements of O_w are x + y*theta with theta = sqrt(c)
/// (c = 2, 3 mod 4) or theta = (1 + sqrt(c))/2 (c = 5 mod 8).
struct TwoAdicCompletion {
  Integer c;
  bool ramified = true;
  long trace = 0;     // theta^2 = trace*theta + norm_term
  Integer norm_term;
  QuadFieldElement uniformizer;
  long e = 2;         // v_pi(2)

  static TwoAdicCompletion of(const Integer& c);

  /// v_pi of a nonzero element of k.
  long valuation(const QuadFieldElement& x) const;
  /// Coordinates (x, y) of x + y*theta; x, y have odd denominators when z is
  /// w-integral.
  std::pair<Rational, Rational> coordinates(const QuadFieldElement& z) const;
  std::string description() const;
};

struct LocalCertificate {
  enum class Status { Isotropic, Anisotropic };

  /// Primitive approximate zero x in O_w^r (coordinates in the basis 1, theta)
  /// with v(f(x)) > 2 * min_i v(df/dx_i (x)).
  struct Witness {
    std::vector<std::pair<Integer, Integer>> vector;
    long value_valuation = 0;
    long gradient_valuation = 0;
    std::size_t pivot = 0;
  };

  Status status = Status::Anisotropic;
  std::optional<Witness> witness;
  /// Coefficients after removing even powers of the uniformizer; the witness
  /// refers to these.
  std::vector<QuadFieldElement> normalized_coefficients;
  int precision = 0;         // pi-adic digits allowed
  int hensel_threshold = 0;  // level at which every surviving node lifts
  int levels_searched = 0;
  std::size_t nodes_explored = 0;
  std::string completion;

  bool isotropic() const { return status == Status::Isotropic; }
};

/// Decides isotropy of <coefficients> over k_w by a pi-adic digit tree search
/// with the Hensel criterion. Throws PrecisionExhausted if the Hensel
/// threshold exceeds `precision` and no zero was found first.
LocalCertificate is_isotropic_quadfield_at_two(std::span<const QuadFieldElement> coefficients,
                                               const Integer& c, int precision = 12);

/// Re-derives a certificate: an isotropic witness is re-checked directly and an
/// anisotropy claim by repeating the exhaustive search.
bool verify_local_certificate(std::span<const QuadFieldElement> coefficients, const Integer& c,
                              const LocalCertificate& cert);

}  // namespace brauerkit
