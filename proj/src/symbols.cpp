#include "brauerkit/symbols.hpp"

#include <algorithm>
#include <stdexcept>

namespace brauerkit {

ClosedPoint ClosedPoint::affine(const Poly& m) {
  if (m.degree() < 1 || m.degree() > 2 || m.leading() != 1) {
    throw std::invalid_argument("ClosedPoint: minimal polynomial must be monic of degree 1 or 2, got " +
                                m.to_string());
  }
  if (m.degree() == 2) {
    Rational disc = m.coefficient(1) * m.coefficient(1) - 4 * m.coefficient(0);
    if (is_square(disc)) throw std::invalid_argument("ClosedPoint: " + m.to_string() + " is reducible");
  }
  return ClosedPoint(m);
}

const Poly& ClosedPoint::minimal_polynomial() const {
  if (is_infinity()) throw std::logic_error("ClosedPoint: infinity has no minimal polynomial");
  return *m_;
}

Rational ClosedPoint::rational_value() const {
  if (is_infinity() || m_->degree() != 1) throw std::logic_error("ClosedPoint: not an affine rational point");
  return -m_->coefficient(0);
}

QuadFieldElement ClosedPoint::quadratic_root() const {
  if (is_infinity() || m_->degree() != 2) throw std::logic_error("ClosedPoint: not a degree-2 point");
  Rational p = m_->coefficient(1), q = m_->coefficient(0);
  Rational disc = p * p - 4 * q;
  Integer D = squarefree_part(disc);
  Rational ratio = disc / D;  // a rational square
  Rational s(sqrt(ratio.get_num()), sqrt(ratio.get_den()));
  return {Rational(-p / 2), Rational(s / 2), D};
}

std::string ClosedPoint::to_string() const {
  if (is_infinity()) return "inf";
  if (m_->degree() == 1) return "x=" + rational_value().get_str();
  return m_->to_string() + "=0";
}

bool operator<(const ClosedPoint& a, const ClosedPoint& b) {
  if (a.is_infinity() || b.is_infinity()) return !a.is_infinity() && b.is_infinity();
  if (a.m_->degree() != b.m_->degree()) return a.m_->degree() < b.m_->degree();
  return a.m_->coefficients() < b.m_->coefficients();
}

long valuation_at(const RatFunc& f, const ClosedPoint& pt) {
  if (f.is_zero()) throw std::domain_error("valuation of the zero function");
  if (pt.is_infinity()) return f.den().degree() - f.num().degree();
  return multiplicity(f.num(), pt.minimal_polynomial()) - multiplicity(f.den(), pt.minimal_polynomial());
}

namespace {

Poly strip(const Poly& f, const Poly& m) {
  Poly h = f;
  while (true) {
    auto [q, r] = divmod(h, m);
    if (!r.is_zero()) return h;
    h = std::move(q);
  }
}

}  // namespace

Rational unit_value_at(const RatFunc& f, const ClosedPoint& pt) {
  if (f.is_zero()) throw std::domain_error("unit value of the zero function");
  if (pt.is_infinity()) return f.num().leading() / f.den().leading();
  if (pt.degree() != 1) throw std::invalid_argument("unit_value_at: point of degree 2");
  const Poly& m = pt.minimal_polynomial();
  Rational t = pt.rational_value();
  Rational n = strip(f.num(), m)(t), d = strip(f.den(), m)(t);
  if (n == 0 || d == 0) throw std::logic_error("unit_value_at: unit part vanishes");
  return n / d;
}

QuadFieldElement unit_value_at_quadratic(const RatFunc& f, const ClosedPoint& pt) {
  if (f.is_zero()) throw std::domain_error("unit value of the zero function");
  if (pt.degree() != 2) throw std::invalid_argument("unit_value_at_quadratic: point of degree 1");
  const Poly& m = pt.minimal_polynomial();
  QuadFieldElement theta = pt.quadratic_root();
  QuadFieldElement n = strip(f.num(), m)(theta), d = strip(f.den(), m)(theta);
  if (n.is_zero() || d.is_zero()) throw std::logic_error("unit_value_at_quadratic: unit part vanishes");
  return n / d;
}

bool BaseField::is_square(const Rational& e) const { return is_square_in_multiquadratic(e, generators); }

bool BaseField::is_square_over(const QuadFieldElement& e) const {
  const std::size_t k = generators.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Rational t = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) t *= generators[i];
    }
    if ((e * QuadFieldElement::rational(t, e.c())).is_square()) return true;
  }
  return false;
}

std::string BaseField::describe() const {
  if (generators.empty()) return "Q";
  std::string out = "Q(";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ", ";
    out += "sqrt(" + generators[i].get_str() + ")";
  }
  return out + ")";
}

SymbolAlgebra::SymbolAlgebra(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  for (const auto& s : symbols_) {
    if (s.f.is_zero() || s.g.is_zero()) throw std::invalid_argument("SymbolAlgebra: zero entry");
  }
}

void SymbolAlgebra::add(RatFunc f, RatFunc g) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("SymbolAlgebra: zero entry");
  symbols_.push_back({std::move(f), std::move(g)});
}

std::vector<ClosedPoint> SymbolAlgebra::candidate_points(const FactorConfig& config) const {
  std::vector<ClosedPoint> pts;
  for (const auto& s : symbols_) {
    for (const Poly* p : {&s.f.num(), &s.f.den(), &s.g.num(), &s.g.den()}) {
      if (p->degree() < 1) continue;
      for (const auto& fac : factor_low_degree(*p, config).second) pts.push_back(ClosedPoint::affine(fac.factor));
    }
  }
  pts.push_back(ClosedPoint::infinity());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace {

struct RawResidue {
  long vf, vg;
  Rational value;                           // degree-1 points
  std::optional<QuadFieldElement> ext;      // degree-2 points
};

RawResidue raw_residue(const Symbol& sym, const ClosedPoint& pt) {
  RawResidue out{valuation_at(sym.f, pt), valuation_at(sym.g, pt), 1, std::nullopt};
  const int sign = ((out.vf * out.vg) % 2 != 0) ? -1 : 1;
  auto power = [](auto base, long e, auto one) {
    auto acc = one;
    auto b = e < 0 ? base.inverse() : base;
    for (long i = 0; i < std::labs(e); ++i) acc = acc * b;
    return acc;
  };
  if (pt.degree() == 1) {
    Rational uf = unit_value_at(sym.f, pt), ug = unit_value_at(sym.g, pt);
    Rational acc = sign;
    for (long i = 0; i < std::labs(out.vg); ++i) acc *= out.vg > 0 ? uf : Rational(1 / uf);
    for (long i = 0; i < std::labs(out.vf); ++i) acc *= out.vf > 0 ? Rational(1 / ug) : ug;
    out.value = acc;
  } else {
    QuadFieldElement uf = unit_value_at_quadratic(sym.f, pt), ug = unit_value_at_quadratic(sym.g, pt);
    const Integer& D = uf.c();
    QuadFieldElement one = QuadFieldElement::rational(1, D);
    out.ext = QuadFieldElement::rational(sign, D) * power(uf, out.vg, one) * power(ug, -out.vf, one);
  }
  return out;
}

ResidueClass classify(const ClosedPoint& pt, const BaseField& base, const Rational& value,
                      const std::optional<QuadFieldElement>& ext) {
  ResidueClass rc;
  rc.point = pt;
  if (pt.degree() == 1) {
    rc.residue_field = base.describe();
    rc.representative = squarefree_part(value);
    rc.trivial = base.is_square(value);
  } else {
    rc.residue_field = base.describe() + " adjoined sqrt(" + ext->c().get_str() + ")";
    rc.extension_value = ext;
    rc.trivial = base.is_square_over(*ext);
  }
  return rc;
}

}  // namespace

ResidueClass tame_residue(const Symbol& sym, const ClosedPoint& pt, const BaseField& base) {
  RawResidue r = raw_residue(sym, pt);
  return classify(pt, base, r.value, r.ext);
}

ResidueClass tame_residue(const SymbolAlgebra& A, const ClosedPoint& pt, const BaseField& base) {
  Rational value = 1;
  std::optional<QuadFieldElement> ext;
  if (pt.degree() == 2) ext = QuadFieldElement::rational(1, pt.quadratic_root().c());
  for (const auto& s : A.symbols()) {
    RawResidue r = raw_residue(s, pt);
    if (ext) {
      ext = *ext * *r.ext;
    } else {
      value *= r.value;
    }
  }
  return classify(pt, base, value, ext);
}

std::vector<ClosedPoint> ramification_locus(const SymbolAlgebra& A, const BaseField& base,
                                            const FactorConfig& config) {
  std::vector<ClosedPoint> out;
  for (const auto& pt : A.candidate_points(config)) {
    if (!tame_residue(A, pt, base).trivial) out.push_back(pt);
  }
  return out;
}

std::vector<std::pair<Integer, Integer>> value_at_point(const SymbolAlgebra& A, const ClosedPoint& pt,
                                                        const BaseField& base) {
  if (pt.degree() != 1) throw std::invalid_argument("value_at_point: point of degree 2");
  if (!tame_residue(A, pt, base).trivial) {
    throw RamifiedPointError("value_at_point: A is ramified at " + pt.to_string());
  }
  std::vector<std::pair<Integer, Integer>> out;
  for (const auto& s : A.symbols()) {
    long vf = valuation_at(s.f, pt), vg = valuation_at(s.g, pt);
    if (vf % 2 != 0 || vg % 2 != 0) {
      if (!tame_residue(s, pt, base).trivial) {
        throw RamifiedPointError("value_at_point: symbol (" + s.f.to_string() + ", " + s.g.to_string() +
                                 ") is ramified at " + pt.to_string() +
                                 " and only cancels against other symbols");
      }
      continue;  // locally (pi*u, w) with w a square: split
    }
    Rational uf = unit_value_at(s.f, pt), ug = unit_value_at(s.g, pt);
    if (base.is_square(uf) || base.is_square(ug)) continue;
    out.emplace_back(squarefree_part(uf), squarefree_part(ug));
  }
  return out;
}

CurveResidue pullback_residue_to_curve(const SymbolAlgebra& A, const Poly& r, const Rational& abscissa,
                                       const BaseField& base) {
  CurveResidue out;
  out.abscissa = abscissa;
  out.radicand = r(abscissa);
  if (out.radicand == 0) {
    throw std::domain_error("pullback_residue_to_curve: r vanishes at x = " + abscissa.get_str() +
                            " (a point of order 2)");
  }
  out.residue = tame_residue(A, ClosedPoint::rational(abscissa), base);
  BaseField extended = base;
  Integer d = squarefree_part(out.radicand);
  if (d != 1) extended.generators.push_back(d);
  out.residue_field = extended.describe();
  out.trivial = extended.is_square(out.residue.representative);
  return out;
}

}  // namespace brauerkit
