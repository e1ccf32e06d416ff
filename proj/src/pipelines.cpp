#include "brauerkit/pipelines.hpp"

#include "brauerkit/ap_cache.hpp"
#include "brauerkit/symbols.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

namespace brauerkit {

Json PipelineConfig::to_json() const {
  return Json{{"prime_bound", prime_bound},
              {"height_bound", height_bound},
              {"coh_cap", coh_cap},
              {"torsion_prime_bound", torsion_prime_bound}};
}

PipelineConfig PipelineConfig::from_json(const Json& j) {
  PipelineConfig c;
  c.prime_bound = j.value("prime_bound", c.prime_bound);
  c.height_bound = j.value("height_bound", c.height_bound);
  c.coh_cap = j.value("coh_cap", c.coh_cap);
  c.torsion_prime_bound = j.value("torsion_prime_bound", c.torsion_prime_bound);
  return c;
}

Json ThreefoldRealInputs::to_json() const {
  Json f = Json::array();
  for (const auto& x : form) f.push_back(rational_json(x));
  return Json{{"form", f}, {"n", rational_json(n)}, {"a", rational_json(a)}};
}

ThreefoldRealInputs ThreefoldRealInputs::from_json(const Json& j) {
  ThreefoldRealInputs in;
  if (j.contains("form")) {
    in.form.clear();
    for (const auto& x : j.at("form")) in.form.push_back(rational_from(x));
  }
  if (j.contains("n")) in.n = rational_from(j.at("n"));
  if (j.contains("a")) in.a = rational_from(j.at("a"));
  return in;
}

Json ThreefoldPadicInputs::to_json() const {
  return Json{{"p1", integer_json(p1)}, {"p2", integer_json(p2)}, {"D", integer_json(D)}};
}

ThreefoldPadicInputs ThreefoldPadicInputs::from_json(const Json& j) {
  ThreefoldPadicInputs in;
  if (j.contains("p1")) in.p1 = integer_from(j.at("p1"));
  if (j.contains("p2")) in.p2 = integer_from(j.at("p2"));
  if (j.contains("D")) in.D = integer_from(j.at("D"));
  return in;
}

Json SurfaceInputs::to_json() const {
  return Json{{"curve", curve}, {"c", integer_json(c)}, {"d", integer_json(d)}, {"max_ell", max_ell}};
}

SurfaceInputs SurfaceInputs::from_json(const Json& j) {
  SurfaceInputs in;
  in.curve = j.value("curve", in.curve);
  if (j.contains("c")) in.c = integer_from(j.at("c"));
  if (j.contains("d")) in.d = integer_from(j.at("d"));
  in.max_ell = j.value("max_ell", in.max_ell);
  return in;
}

Json CohomologyInputs::to_json() const { return Json{{"max_n", max_n}, {"max_r", max_r}}; }

CohomologyInputs CohomologyInputs::from_json(const Json& j) {
  CohomologyInputs in;
  in.max_n = j.value("max_n", in.max_n);
  in.max_r = j.value("max_r", in.max_r);
  return in;
}

// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

CheckResult run_check(std::string id, std::string statement, std::string ref, CheckTier tier, Json parameters,
                      const std::function<void(CheckResult&)>& body) {
  CheckResult c;
  c.check_id = std::move(id);
  c.statement = std::move(statement);
  c.paper_ref = std::move(ref);
  c.tier = tier;
  c.parameters = parameters.is_null() ? Json::object() : std::move(parameters);
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const GroupCapExceeded& e) {
    c.status = CheckStatus::inconclusive;
    c.witness["reason"] = e.what();
  } catch (const PrecisionExhausted& e) {
    c.status = CheckStatus::inconclusive;
    c.witness["reason"] = e.what();
  } catch (const PipelineRefused&) {
    throw;
  } catch (const std::exception& e) {
    c.status = CheckStatus::fail;
    c.witness["error"] = e.what();
  }
  c.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  return c;
}

CheckStatus verdict(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

/// Folds row verdicts: any failure fails, then any open row is inconclusive.
struct RowTally {
  bool failed = false, open = false;
  void add(CheckStatus s) {
    failed = failed || s == CheckStatus::fail;
    open = open || s == CheckStatus::inconclusive;
  }
  CheckStatus status() const {
    if (failed) return CheckStatus::fail;
    return open ? CheckStatus::inconclusive : CheckStatus::pass;
  }
};

Json places_json(const std::vector<Place>& places) {
  Json out = Json::array();
  for (const auto& v : places) out.push_back(v.to_string());
  return out;
}

std::vector<Place> real_and_two() { return {Place::finite(2), Place::real()}; }

/// 2, the primes dividing the coefficients, and the real place.
std::vector<Place> relevant_places(const DiagonalForm& f) {
  Rational prod = 2;
  for (const auto& x : f.coefficients()) prod *= x;
  std::vector<Place> out;
  for (const auto& p : support_primes(prod)) out.push_back(Place::finite(p));
  out.push_back(Place::real());
  return out;
}

Json hasse_table(const DiagonalForm& f) {
  Json out = Json::object();
  for (const auto& v : relevant_places(f)) out[v.to_string()] = hasse_invariant(f, v);
  return out;
}

bool definite(const DiagonalForm& f) {
  const auto& c = f.coefficients();
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x > 0; }) ||
         std::all_of(c.begin(), c.end(), [](const Rational& x) { return x < 0; });
}

int unit_mod_8(const Rational& x) {
  Rational u = padic_unit_part(x, 2);
  Integer m = u.get_num() * u.get_den();
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), m.get_mpz_t(), 8);
  return static_cast<int>(r.get_ui());
}

}  // namespace

// ---------------------------------------------------------------------------

Report pipeline_threefold_real(const ThreefoldRealInputs& in, const PipelineConfig& config) {
  if (in.form.size() != 3 || std::any_of(in.form.begin(), in.form.end(), [](const Rational& x) { return x == 0; })) {
    throw PipelineRefused("the base conic needs three nonzero coefficients");
  }
  if (in.n == 0 || in.a == 0) throw PipelineRefused("n and a must be nonzero");
  Report r;
  r.pipeline = "threefold-real";
  r.inputs = in.to_json();
  r.inputs["bounds"] = config.to_json();
  const std::string ref = "quadric bundle Q + n t(t-a) x3^2 = 0 over the t-line; obstruction at the real place";
  const DiagonalForm Q(in.form);
  std::vector<Rational> fibre = in.form;
  fibre.push_back(in.n);
  const DiagonalForm F(fibre);

  r.checks.push_back(run_check(
      "conic-anisotropic-places", "the conic " + Q.to_string() + " is anisotropic exactly at {2, inf}", ref,
      CheckTier::required, {}, [&](CheckResult& c) {
        auto places = anisotropic_places(Q);
        c.witness = Json{{"form", Q.to_string()},
                         {"discriminant", rational_json(Q.discriminant())},
                         {"hasse_invariants", hasse_table(Q)},
                         {"anisotropic_places", places_json(places)}};
        c.status = verdict(places == real_and_two());
      }));

  r.checks.push_back(run_check(
      "minus-n-square-at-2", "-n Q(1,0,0) is a square in Q_2, so the smooth fibre has Q_2-points", ref,
      CheckTier::required, {}, [&](CheckResult& c) {
        Rational v = -in.n * in.form[0];
        bool sq = is_square_in_Qp(v, Place::finite(2));
        c.witness = Json{{"value", rational_json(v)},
                         {"valuation_at_2", padic_valuation(v, 2)},
                         {"unit_part_mod_8", unit_mod_8(v)},
                         {"square_in_Q2", sq}};
        c.status = verdict(sq);
      }));

  r.checks.push_back(run_check(
      "smooth-fibre-places", "the fibre form " + F.to_string() + " is anisotropic exactly at the real place", ref,
      CheckTier::required, {}, [&](CheckResult& c) {
        auto places = anisotropic_places(F);
        c.witness = Json{{"form", F.to_string()},
                         {"discriminant", rational_json(F.discriminant())},
                         {"hasse_invariants", hasse_table(F)},
                         {"anisotropic_places", places_json(places)}};
        c.status = verdict(places == std::vector<Place>{Place::real()});
      }));

  r.checks.push_back(run_check(
      "degenerate-fibres", "n t(t-a) vanishes only at t = 0 and t = a, where the fibre is the rank-3 form Q", ref,
      CheckTier::required, {}, [&](CheckResult& c) {
        Poly coeff = Rational(in.n) * (Poly::x() * Poly::linear(in.a));
        auto roots = rational_roots(coeff);
        std::vector<Rational> expected{Rational(0), in.a};
        std::sort(expected.begin(), expected.end());
        Json rs = Json::array();
        for (const auto& t : roots) rs.push_back(rational_json(t));
        c.witness = Json{{"coefficient", coeff.to_string("t")},
                         {"degenerate_t", rs},
                         {"residual_form", Q.to_string()},
                         {"residual_rank", Q.rank()},
                         {"residual_discriminant", rational_json(Q.discriminant())}};
        c.status = verdict(roots == expected && coeff.degree() == 2 && Q.discriminant() != 0);
      }));

  r.checks.push_back(run_check(
      "real-fibres", "the fibre form <Q, n> is definite while the fibre at t = a/2 is indefinite", ref,
      CheckTier::required, {}, [&](CheckResult& c) {
        Rational t = in.a / 2;
        Rational coeff = in.n * t * (t - in.a);
        std::vector<Rational> mid = in.form;
        mid.push_back(coeff);
        DiagonalForm M(mid);
        bool ok = definite(F) && !definite(M);
        c.witness = Json{{"smooth_fibre_definite", definite(F)},
                         {"t", rational_json(t)},
                         {"coefficient_at_t", rational_json(coeff)},
                         {"fibre_at_t", M.to_string()},
                         {"fibre_at_t_indefinite", !definite(M)}};
        c.status = verdict(ok);
      }));
  return r;
}

// ---------------------------------------------------------------------------

Report pipeline_threefold_padic(const ThreefoldPadicInputs& in, const PipelineConfig& config) {
  for (const Integer* p : {&in.p1, &in.p2}) {
    if (*p < 3 || !is_prime(*p)) throw PipelineRefused("p1 and p2 must be odd primes, got " + p->get_str());
  }
  if (in.p1 == in.p2) throw PipelineRefused("p1 and p2 must differ");
  if (in.D == 0 || in.D == 1 || squarefree_part(in.D) != in.D) {
    throw PipelineRefused("D must be a squarefree integer other than 0 and 1");
  }
  Report r;
  r.pipeline = "threefold-padic";
  r.inputs = in.to_json();
  r.inputs["bounds"] = config.to_json();
  const std::string ref = "quadric bundle r^2 - p1 s^2 - p2 t^2 - u^2 = 0; obstruction at two p-adic places";
  const std::string K = "Q(sqrt(" + in.D.get_str() + "))";
  const DiagonalForm C(std::vector<Rational>{Rational(1), Rational(-in.p1), Rational(-in.p2)});

  r.checks.push_back(run_check(
      "conic-anisotropic-places",
      "the conic " + C.to_string() + " is anisotropic exactly at {" + in.p1.get_str() + ", " + in.p2.get_str() + "}",
      ref, CheckTier::required, {}, [&](CheckResult& c) {
        auto places = anisotropic_places(C);
        Json table = Json::object();
        for (const auto& v : relevant_places(C)) {
          table[v.to_string()] = hilbert_symbol(Rational(in.p1), Rational(in.p2), v);
        }
        std::vector<Place> expected{Place::finite(std::min(in.p1, in.p2)), Place::finite(std::max(in.p1, in.p2))};
        c.witness = Json{{"form", C.to_string()},
                         {"hilbert_symbols_p1_p2", table},
                         {"anisotropic_places", places_json(places)}};
        c.status = verdict(places == expected);
      }));

  r.checks.push_back(run_check(
      "primes-split-in-K", in.p1.get_str() + " and " + in.p2.get_str() + " split in K = " + K, ref,
      CheckTier::required, {}, [&](CheckResult& c) {
        Json leg = Json::object();
        bool ok = true;
        for (const Integer* p : {&in.p1, &in.p2}) {
          int s = legendre_symbol(in.D, *p);
          leg[p->get_str()] = s;
          ok = ok && s == 1;
        }
        c.witness = Json{{"K", K}, {"legendre_D_p", leg}};
        c.status = verdict(ok);
      }));

  r.checks.push_back(run_check(
      "minus-one-square", "-1 is a square in Q_p1 and Q_p2, giving the local points u = alpha_p", ref,
      CheckTier::required, {}, [&](CheckResult& c) {
        Json roots = Json::object();
        bool ok = true;
        for (const Integer* p : {&in.p1, &in.p2}) {
          auto s = sqrt_mod(Integer(*p - 1).get_ui(), p->get_ui());
          roots[p->get_str()] = s ? Json(*s) : Json(nullptr);
          ok = ok && s.has_value();
        }
        c.witness = Json{{"alpha_p", roots}};
        c.status = verdict(ok);
      }));

  r.checks.push_back(run_check(
      "symbol-nontrivial-over-K",
      "the symbol (p1, p2) stays nontrivial over K, detected at a split place of K", ref, CheckTier::required, {},
      [&](CheckResult& c) {
        // a quadratic extension of a local field splits every quaternion
        // algebra, so only a split place can detect the class
        Json rows = Json::array();
        bool ok = false;
        for (const Integer* p : {&in.p1, &in.p2}) {
          bool split = legendre_symbol(in.D, *p) == 1;
          int s = hilbert_symbol(Rational(in.p1), Rational(in.p2), Place::finite(*p));
          rows.push_back(Json{{"place_over", p->get_str()},
                              {"split", split},
                              {"local_field", split ? "Q_" + p->get_str() : "quadratic over Q_" + p->get_str()},
                              {"symbol", split ? s : 1}});
          ok = ok || (split && s == -1);
        }
        c.witness = Json{{"K", K}, {"places", rows}};
        c.status = verdict(ok);
      }));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Json curve_json(const WeierstrassCurve& E) {
  const auto& v = E.invariants();
  return Json{{"curve", E.id()},
              {"b2", rational_json(v.b2)},
              {"b4", rational_json(v.b4)},
              {"b6", rational_json(v.b6)},
              {"b8", rational_json(v.b8)},
              {"c4", rational_json(v.c4)},
              {"c6", rational_json(v.c6)},
              {"discriminant", rational_json(v.disc)}};
}

Json model_json(const ShortModel& m) {
  return Json{{"p", rational_json(m.p)},
              {"q", rational_json(m.q)},
              {"u", rational_json(m.u)},
              {"r", rational_json(m.r)},
              {"s", rational_json(m.s)}};
}

ShortModel model_from(const Json& j) {
  ShortModel m;
  m.p = rational_from(j.at("p"));
  m.q = rational_from(j.at("q"));
  m.u = rational_from(j.at("u"));
  m.r = rational_from(j.at("r"));
  m.s = rational_from(j.at("s"));
  m.identity = m.u == 1 && m.r == 0 && m.s == 1;
  return m;
}

Json point_json(const Point<Rational>& P) { return Json{{"x", rational_json(P.x)}, {"y", rational_json(P.y)}}; }

Json quad_point_json(const QuadPoint& P) { return Json{{"x", quad_json(P.x)}, {"y", quad_json(P.y)}}; }

QuadPoint quad_point_from(const Json& j) { return {quad_from(j.at("x")), quad_from(j.at("y"))}; }

// Mazur: a rational torsion point has order at most 12.
bool non_torsion_by_mazur(const WeierstrassCurve& E, const Point<Rational>& P) {
  auto G = rational_group(E);
  auto Q = P;
  for (int k = 1; k <= 12; ++k) {
    if (Q.infinity) return false;
    Q = G.add(Q, P);
  }
  return true;
}

// A point (X, Z) on the twist by t, carried to the short model of E over
// Q(sqrt t): x = X/(4t) on the long model and 2y + a1 x + a3 = Z/(4t sqrt t).
QuadPoint point_from_twist(const ShortModel& m, const Integer& t, const Point<Rational>& Pt) {
  Rational T(t);
  Rational x_long = Pt.x / (4 * T);
  Rational beta;
  Rational xs;
  if (m.identity) {
    xs = x_long;
    beta = Pt.y / (8 * T * T);
  } else {
    xs = m.u * x_long + m.r;
    beta = m.s * Pt.y / (4 * T * T);
  }
  return {QuadFieldElement(xs, 0, t), QuadFieldElement(0, beta, t)};
}

std::vector<std::uint64_t> primes_through(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (auto p : primes_up_to(static_cast<std::uint32_t>(bound))) out.push_back(p);
  return out;
}

Json quad_list_json(const std::vector<QuadFieldElement>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(quad_json(z));
  return out;
}

std::vector<QuadFieldElement> quad_list_from(const Json& j) {
  std::vector<QuadFieldElement> out;
  for (const auto& z : j) out.push_back(quad_from(z));
  return out;
}

}  // namespace

Report pipeline_surface(const SurfaceInputs& in, const PipelineConfig& config) {
  const Integer& c = in.c;
  const Integer& d = in.d;
  if (c <= 1 || squarefree_part(c) != c) throw PipelineRefused("c must be a squarefree integer > 1, got " + c.get_str());
  {
    Integer r8;
    mpz_fdiv_r_ui(r8.get_mpz_t(), c.get_mpz_t(), 8);
    if (r8 == 1) {
      throw PipelineRefused("c = " + c.get_str() +
                            " is congruent to 1 modulo 8: 2 splits in Q(sqrt c) and x^2+y^2+z^2=0 stays "
                            "anisotropic at the places over 2");
    }
  }
  if (d <= 1 || squarefree_part(d) != d || d == c) {
    throw PipelineRefused("d must be a squarefree integer > 1 different from c, got " + d.get_str());
  }
  if (in.max_ell < 2) throw PipelineRefused("max_ell must be at least 2");
  const WeierstrassCurve E = WeierstrassCurve::parse(in.curve);
  if (!E.is_integral()) throw PipelineRefused("the curve needs integral coefficients: " + E.id());
  const ShortModel model = short_model(E);
  const Integer cd = squarefree_part(Integer(c * d));
  const std::vector<Integer> gens{c, d};
  const BaseField k{{c}};

  Report rep;
  rep.pipeline = "surface";
  rep.inputs = in.to_json();
  rep.inputs["bounds"] = config.to_json();
  const std::string ref_curve = "elliptic curve E over k = Q(sqrt c) with K = Q(sqrt c, sqrt d)";
  const std::string ref_bundle = "conic bundle over E defined by A = ((x-a)/(x-b), r(b)) (x) (-1,-1)";

  rep.checks.push_back(run_check(
      "curve-discriminant", "E has negative discriminant and so does its short model y^2 = x^3 + p x + q",
      ref_curve, CheckTier::required, {}, [&](CheckResult& ch) {
        Rational D = E.discriminant();
        bool sqfree = D.get_den() == 1 && squarefree_part(Integer(abs(D.get_num()))) == abs(D.get_num());
        ch.witness = curve_json(E);
        ch.witness["discriminant_squarefree"] = sqfree;
        ch.witness["short_model"] = model_json(model);
        ch.witness["short_discriminant"] = rational_json(model.discriminant());
        ch.status = verdict(D < 0 && model.discriminant() < 0);
      }));

  bool torsion_free = false;
  rep.checks.push_back(run_check(
      "torsion-certificates", "E^t(Q) has trivial torsion for t in {1, c, d, cd}, so E(K) is torsion-free",
      ref_curve, CheckTier::bounded, Json{{"torsion_prime_bound", config.torsion_prime_bound}},
      [&](CheckResult& ch) {
        auto B = biquadratic_torsion_free(E, c, d, config.torsion_prime_bound, config.cache);
        Json rows = Json::array();
        for (std::size_t i = 0; i < B.twists.size(); ++i) {
          rows.push_back(Json{{"t", integer_json(B.twists[i])}, {"certificate", to_json(B.certificates[i])}});
        }
        ch.witness = Json{{"curve", E.id()}, {"twists", rows}, {"biquadratic_torsion_free", B.certified}};
        torsion_free = B.certified;
        ch.status = B.certified ? CheckStatus::pass : CheckStatus::inconclusive;
      }));

  std::optional<QuadPoint> P;
  Json P_source;
  rep.checks.push_back(run_check(
      "rank-positivity-witnesses", "E^d(Q) and E^cd(Q) contain points of infinite order", ref_curve,
      CheckTier::bounded, Json{{"height_bound", config.height_bound}}, [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (const Integer& t : {d, cd}) {
          WeierstrassCurve Et = quadratic_twist(E, t);
          auto pts = search_rational_points(Et, Integer(config.height_bound));
          std::optional<Point<Rational>> chosen;
          for (const auto& p : pts) {
            if (p.y > 0 && non_torsion_by_mazur(Et, p)) {
              chosen = p;
              break;
            }
          }
          Json row{{"t", integer_json(t)}, {"curve", Et.id()}, {"points_found", pts.size()}};
          if (chosen) {
            row["point"] = point_json(*chosen);
            row["naive_height"] = integer_json(naive_height(*chosen));
            row["multiples_nonzero_through"] = 12;
            if (t == d) {
              P = point_from_twist(model, d, *chosen);
              P_source = Json{{"twist", integer_json(d)}, {"point", point_json(*chosen)}};
            }
          }
          tally.add(chosen ? CheckStatus::pass : CheckStatus::inconclusive);
          rows.push_back(row);
        }
        ch.witness = Json{{"twists", rows},
                          {"non_torsion_argument", "no multiple kP with k <= 12 vanishes; torsion orders are at most 12"},
                          {"external_input", "rank E(Q) = rank E^c(Q) = 0"}};
        ch.status = tally.status();
      }));

  rep.checks.push_back(run_check(
      "mod-2-image", "the 2-division cubic is irreducible with nonsquare discriminant: the mod-2 image is GL_2(F_2)",
      ref_curve, CheckTier::required, {}, [&](CheckResult& ch) {
        auto m2 = mod2_image(E);
        Json roots = Json::array();
        for (const auto& x : m2.rational_roots) roots.push_back(rational_json(x));
        ch.witness = Json{{"cubic", model.cubic().to_string()},
                          {"rational_roots", roots},
                          {"discriminant", rational_json(m2.discriminant)},
                          {"discriminant_square", m2.discriminant_square}};
        ch.status = verdict(m2.full());
      }));

  rep.checks.push_back(run_check(
      "mod-ell-surjectivity", "Frobenius traces certify rho_ell(G_Q) = GL_2(F_ell) for odd ell <= max_ell",
      ref_curve, CheckTier::bounded, Json{{"prime_bound", config.prime_bound}, {"max_ell", in.max_ell}},
      [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (auto ell : primes_through(in.max_ell)) {
          if (ell == 2) continue;
          auto rpt = mod_l_surjectivity_witnesses(E, ell, config.prime_bound, config.cache);
          rows.push_back(to_json(rpt));
          tally.add(rpt.certified ? CheckStatus::pass : CheckStatus::inconclusive);
        }
        ch.witness = Json{{"curve", E.id()}, {"reports", rows}};
        ch.status = tally.status();
      }));

  std::optional<Rational> a, b;
  rep.checks.push_back(run_check(
      "point-and-abscissae",
      "P in E(K) from E^d(Q), a = x(P) with r(a) totally positive, and b with r(b) totally negative", ref_bundle,
      CheckTier::required, {}, [&](CheckResult& ch) {
        if (!P) {
          ch.status = CheckStatus::inconclusive;
          ch.witness["reason"] = "no point of infinite order on E^d within the height bound";
          return;
        }
        bool on_curve = model.rhs(P->x) == P->y * P->y;
        if (!P->x.is_rational()) throw std::logic_error("twisted point with irrational abscissa");
        a = P->x.a();
        b = choose_negative_abscissa(model, *a);
        ch.witness = Json{{"short_model", model_json(model)},
                          {"K", BaseField{gens}.describe()},
                          {"P", quad_point_json(*P)},
                          {"P_from", P_source},
                          {"P_on_curve", on_curve},
                          {"a", rational_json(*a)}};
        if (!b) {
          ch.status = CheckStatus::inconclusive;
          ch.witness["reason"] = "no b of height <= 1000 with r(b) < 0";
          return;
        }
        auto tp = total_positivity_checks(model, QuadFieldElement(*a, 0, c), QuadFieldElement(*b, 0, c));
        ch.witness["b"] = rational_json(*b);
        ch.witness["r_a"] = Json{{"value", quad_json(tp.r_a.value)}, {"signs", {tp.r_a.sign0, tp.r_a.sign1}}};
        ch.witness["r_b"] = Json{{"value", quad_json(tp.r_b.value)}, {"signs", {tp.r_b.sign0, tp.r_b.sign1}}};
        ch.status = verdict(on_curve && tp.a_totally_positive && tp.b_totally_negative);
      }));

  auto need_ab = [&](CheckResult& ch) {
    if (a && b) return true;
    ch.status = CheckStatus::inconclusive;
    ch.witness["reason"] = "P, a or b unavailable";
    return false;
  };

  rep.checks.push_back(run_check(
      "albert-subform-isotropy",
      "Phi = <r(b), 1, 1, 1> is isotropic at every place of k, so A is similar to a quaternion algebra", ref_bundle,
      CheckTier::required, Json{{"two_adic_precision", 12}}, [&](CheckResult& ch) {
        if (!need_ab(ch)) return;
        Rational rb = model.rhs(*b);
        std::vector<QuadFieldElement> coeffs{QuadFieldElement::rational(rb, c), QuadFieldElement::rational(1, c),
                                             QuadFieldElement::rational(1, c), QuadFieldElement::rational(1, c)};
        auto cert = is_isotropic_quadfield_at_two(coeffs, c, 12);
        bool verified = verify_local_certificate(coeffs, c, cert);
        auto ternary = anisotropic_places(DiagonalForm{1, 1, 1});
        bool odd_ok = std::all_of(ternary.begin(), ternary.end(),
                                  [](const Place& v) { return v.is_real() || v.prime() == 2; });
        QuadFieldElement rbq = QuadFieldElement::rational(rb, c);
        bool real_ok = rbq.sign(0) < 0 && rbq.sign(1) < 0;
        ch.witness = Json{{"albert_form", "<f, r(b), -f r(b), 1, 1, 1> with f = (x-a)/(x-b), contains Phi"},
                          {"coefficients", quad_list_json(coeffs)},
                          {"field_c", integer_json(c)},
                          {"real_places", Json{{"r_b_signs", {rbq.sign(0), rbq.sign(1)}}, {"indefinite", real_ok}}},
                          {"odd_places", Json{{"subform", "<1,1,1>"},
                                              {"anisotropic_places_over_Q", places_json(ternary)},
                                              {"isotropic_at_every_odd_place", odd_ok}}},
                          {"place_over_2", to_json(cert)},
                          {"place_over_2_verified", verified}};
        auto v = find_isotropic_vector(DiagonalForm(std::vector<Rational>{rb, 1, 1, 1}), Integer(1000));
        if (v) {
          Json vec = Json::array();
          for (const auto& x : *v) vec.push_back(rational_json(x));
          ch.witness["rational_isotropic_vector"] = vec;
        }
        ch.status = verdict(real_ok && odd_ok && cert.isotropic() && verified);
      }));

  SymbolAlgebra A;
  auto build_A = [&] {
    A = SymbolAlgebra();
    A.add(RatFunc(Poly::linear(*a), Poly::linear(*b)), RatFunc::constant(model.rhs(*b)));
    A.add(RatFunc::constant(-1), RatFunc::constant(-1));
  };

  rep.checks.push_back(run_check(
      "residues-of-A",
      "A is ramified exactly at x = a and x = b; on E its residue is trivial above b and nontrivial at P", ref_bundle,
      CheckTier::required, {}, [&](CheckResult& ch) {
        if (!need_ab(ch)) return;
        build_A();
        auto locus = ramification_locus(A, k);
        std::vector<ClosedPoint> expected{ClosedPoint::rational(*a), ClosedPoint::rational(*b)};
        std::sort(expected.begin(), expected.end());
        Json lj = Json::array();
        for (const auto& pt : locus) lj.push_back(pt.to_string());
        auto res_a = tame_residue(A, ClosedPoint::rational(*a), k);
        auto res_b = tame_residue(A, ClosedPoint::rational(*b), k);
        const Poly r = model.cubic();
        auto pb_a = pullback_residue_to_curve(A, r, *a, k);
        auto pb_b = pullback_residue_to_curve(A, r, *b, k);
        auto pb_json = [](const CurveResidue& x) {
          return Json{{"abscissa", rational_json(x.abscissa)},
                      {"radicand", rational_json(x.radicand)},
                      {"residue_field", x.residue_field},
                      {"residue_class", rational_json(x.residue.representative)},
                      {"trivial", x.trivial}};
        };
        ch.witness = Json{{"base_field", k.describe()},
                          {"ramification_locus", lj},
                          {"residue_at_a", rational_json(res_a.representative)},
                          {"residue_at_b", rational_json(res_b.representative)},
                          {"pullback_at_P", pb_json(pb_a)},
                          {"pullback_above_b", pb_json(pb_b)}};
        ch.status = verdict(locus == expected && pb_b.trivial && !pb_a.trivial);
      }));

  rep.checks.push_back(run_check(
      "value-at-infinity",
      "A at infinity is (-1,-1): the fibre over 0 in E(k) is x^2+y^2+z^2=0, which has points at every place of k "
      "except the two real ones",
      ref_bundle, CheckTier::required, Json{{"two_adic_precision", 12}}, [&](CheckResult& ch) {
        if (!need_ab(ch)) return;
        build_A();
        auto value = value_at_point(A, ClosedPoint::infinity(), k);
        Json vj = Json::array();
        for (const auto& [x, y] : value) vj.push_back(Json::array({integer_json(x), integer_json(y)}));
        const std::vector<QuadFieldElement> ones(3, QuadFieldElement::rational(1, c));
        auto cert = is_isotropic_quadfield_at_two(ones, c, 12);
        bool verified = verify_local_certificate(ones, c, cert);
        auto over_Q = anisotropic_places(DiagonalForm{1, 1, 1});
        bool value_ok = value == std::vector<std::pair<Integer, Integer>>{{-1, -1}};
        ch.witness = Json{{"value", vj},
                          {"fibre", "x^2+y^2+z^2=0"},
                          {"anisotropic_places_over_Q", places_json(over_Q)},
                          {"coefficients", quad_list_json(ones)},
                          {"field_c", integer_json(c)},
                          {"place_over_2", to_json(cert)},
                          {"place_over_2_verified", verified},
                          {"anisotropic_places_over_k", Json::array({"inf (sqrt c > 0)", "inf (sqrt c < 0)"})}};
        ch.status = verdict(value_ok && over_Q == real_and_two() && cert.isotropic() && verified);
      }));

  rep.checks.push_back(run_check(
      "nondivisibility", "P is not in ell E(K) for every prime ell <= max_ell", ref_bundle, CheckTier::bounded,
      Json{{"prime_bound", config.prime_bound}, {"max_ell", in.max_ell}}, [&](CheckResult& ch) {
        if (!P) {
          ch.status = CheckStatus::inconclusive;
          ch.witness["reason"] = "P unavailable";
          return;
        }
        Json rows = Json::array();
        RowTally tally;
        for (auto ell : primes_through(in.max_ell)) {
          auto cert = nondivisibility_certificate(model, *P, gens, ell, config.prime_bound);
          rows.push_back(to_json(cert));
          tally.add(cert.found ? CheckStatus::pass : CheckStatus::inconclusive);
        }
        ch.witness = Json{{"short_model", model_json(model)},
                          {"P", quad_point_json(*P)},
                          {"K_generators", Json::array({integer_json(c), integer_json(d)})},
                          {"certificates", rows}};
        ch.status = tally.status();
      }));

  rep.checks.push_back(run_check(
      "preimage-integrality", "[2]^{-1}(P) is a single closed point: its x-quartic is irreducible over K",
      ref_bundle, CheckTier::bounded, Json{{"prime_bound", config.prime_bound}}, [&](CheckResult& ch) {
        if (!P) {
          ch.status = CheckStatus::inconclusive;
          ch.witness["reason"] = "P unavailable";
          return;
        }
        auto cert = preimage_integrality_n2(model, *P, gens, config.prime_bound);
        ch.witness = Json{{"short_model", model_json(model)},
                          {"P", quad_point_json(*P)},
                          {"K_generators", Json::array({integer_json(c), integer_json(d)})},
                          {"certificate", to_json(cert)}};
        if (!cert.found) {
          ch.status = CheckStatus::inconclusive;
        } else {
          ch.status = verdict(cert.y_step);
        }
      }));
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

Json factors_json(const CohomologyGroup& H) {
  Json out = Json::array();
  for (const auto& f : H.invariant_factors) out.push_back(integer_json(f));
  return out;
}

bool divides(const Integer& a, const Integer& b) { return b % a == 0; }

/// 2^{v_2(n)}, or 0 for odd n.
std::int64_t two_part(std::int64_t n) {
  std::int64_t q = 1;
  while (n % 2 == 0) {
    n /= 2;
    q *= 2;
  }
  return q == 1 ? 0 : q;
}

/// The exponent bound for H^1(G, (Z/n)^2) with G containing SL_2^+(Z/n):
/// 1 for odd n, 2^{r-1} for n = 2^r m.
Integer exponent_bound(std::int64_t n) {
  std::int64_t q = two_part(n);
  return q == 0 ? Integer(1) : Integer(q / 2);
}

std::int64_t idempotent(std::int64_t q, std::int64_t m) {
  // e = 1 mod q, e = 0 mod m
  for (std::int64_t e = 0; e < q * m; e += m) {
    if (e % q == 1 % q) return e;
  }
  throw std::logic_error("idempotent: moduli not coprime");
}

}  // namespace

Report pipeline_cohomology(const CohomologyInputs& in, const PipelineConfig& config) {
  if (in.max_n < 1) throw PipelineRefused("max_n must be at least 1");
  if (in.max_r < 0) throw PipelineRefused("max_r must be nonnegative");
  Report rep;
  rep.pipeline = "cohomology";
  rep.inputs = in.to_json();
  rep.inputs["bounds"] = config.to_json();
  const std::string ref = "cohomology of subgroups of GL_2(Z/n) containing SL_2^+(Z/n) with coefficients (Z/n)^2";
  const std::size_t cap = config.coh_cap;
  const Json cap_param{{"coh_cap", cap}};

  rep.checks.push_back(run_check(
      "h0-sl2plus", "H^0(SL_2^+(Z/n), (Z/n)^2) = 0 for 2 <= n <= max_n, witnessed by (x, y) -> (x + y, -x)", ref,
      CheckTier::required, Json{{"coh_cap", cap}, {"max_n", in.max_n}}, [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (std::int64_t n = 2; n <= in.max_n; ++n) {
          Json row{{"n", n}};
          try {
            auto G = sl2_plus(n, cap);
            ModMatrix T(1, 1, n - 1, 0, n);
            auto fixed = h0(G);
            row["order"] = G.order();
            row["fixed_vectors"] = fixed.size();
            row["contains_witness"] = G.contains(T);
            tally.add(verdict(fixed.size() == 1 && G.contains(T)));
          } catch (const GroupCapExceeded& e) {
            row["inconclusive"] = e.what();
            tally.add(CheckStatus::inconclusive);
          }
          rows.push_back(row);
        }
        ch.witness = Json{{"witness_matrix", "[[1,1],[-1,0]]"}, {"rows", rows}};
        if (in.max_n < 2) ch.witness["note"] = "vacuous: no modulus in range";
        ch.status = tally.status();
      }));

  rep.checks.push_back(run_check(
      "h1-sl2-odd-prime-powers", "H^1(SL_2(Z/p^r), (Z/p^r)^2) = 0 for the odd prime powers 3, 5, 7, 9", ref,
      CheckTier::required, cap_param, [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (std::int64_t m : {3, 5, 7, 9}) {
          Json row{{"n", m}};
          try {
            auto G = sl2(m, cap);
            auto H = h1(G);
            row["order"] = G.order();
            row["invariant_factors"] = factors_json(H);
            tally.add(verdict(H.is_trivial()));
          } catch (const GroupCapExceeded& e) {
            row["inconclusive"] = e.what();
            tally.add(CheckStatus::inconclusive);
          }
          rows.push_back(row);
        }
        ch.witness = Json{{"rows", rows}};
        ch.status = tally.status();
      }));

  rep.checks.push_back(run_check(
      "h1-sl2plus-two-powers", "H^1(SL_2^+(Z/2^r), (Z/2^r)^2) is annihilated by 2^{r-1} for 1 <= r <= max_r", ref,
      CheckTier::required, Json{{"coh_cap", cap}, {"max_r", in.max_r}}, [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (int r = 1; r <= in.max_r; ++r) {
          std::int64_t n = std::int64_t{1} << r;
          Json row{{"r", r}, {"n", n}};
          try {
            auto G = sl2_plus(n, cap);
            auto H = h1(G);
            row["order"] = G.order();
            row["invariant_factors"] = factors_json(H);
            row["exponent"] = integer_json(H.exponent());
            tally.add(verdict(divides(H.exponent(), Integer(n / 2))));
          } catch (const GroupCapExceeded& e) {
            row["inconclusive"] = e.what();
            tally.add(CheckStatus::inconclusive);
          }
          rows.push_back(row);
        }
        ch.witness = Json{{"rows", rows}};
        if (in.max_r < 1) ch.witness["note"] = "vacuous: no exponent in range";
        ch.status = tally.status();
      }));

  rep.checks.push_back(run_check(
      "h1-overgroups",
      "for SL_2^+(Z/n) <= G <= GL_2(Z/n): H^1 = 0 for odd n and 2^{r-1} H^1 = 0 for n = 2^r m", ref,
      CheckTier::required, cap_param, [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (std::int64_t n : {3, 4, 5, 6, 7, 8, 9, 10, 12}) {
          if (n > in.max_n) continue;
          for (const char* name : {"sl2plus", "sl2", "gl2"}) {
            Json row{{"n", n}, {"group", name}};
            try {
              std::string g = name;
              auto G = g == "sl2plus" ? sl2_plus(n, cap) : g == "sl2" ? sl2(n, cap) : gl2(n, cap);
              auto H = h1(G);
              row["order"] = G.order();
              row["invariant_factors"] = factors_json(H);
              row["exponent_bound"] = integer_json(exponent_bound(n));
              tally.add(verdict(divides(H.exponent(), exponent_bound(n))));
            } catch (const GroupCapExceeded& e) {
              row["inconclusive"] = e.what();
              tally.add(CheckStatus::inconclusive);
            }
            rows.push_back(row);
          }
        }
        ch.witness = Json{{"rows", rows}};
        ch.status = tally.status();
      }));

  rep.checks.push_back(run_check(
      "restriction-products",
      "for n = 2^r m, H^1(SL_2^+(Z/n), M) injects into the sum over the 2-part and odd-part factors", ref,
      CheckTier::required, cap_param, [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (std::int64_t n : {6, 10, 12}) {
          if (n > in.max_n) continue;
          std::int64_t q = two_part(n), m = n / q;
          Json row{{"n", n}, {"two_part", q}, {"odd_part", m}};
          try {
            auto G = sl2_plus(n, cap);
            // G_q acts through Z/q on e_q M and trivially on e_m M
            auto Gq = subgroup_where(G, [&](const ModMatrix& g) { return g.reduce(m) == ModMatrix::identity(m); });
            auto Gm = subgroup_where(G, [&](const ModMatrix& g) { return g.reduce(q) == ModMatrix::identity(q); });
            std::int64_t eq = idempotent(q, m), em = idempotent(m, q);
            bool product = Gq.order() * Gm.order() == G.order();
            bool inj = restriction_jointly_injective(G, {{Gq, eq}, {Gm, em}});
            row["order"] = G.order();
            row["factor_orders"] = Json::array({Gq.order(), Gm.order()});
            row["projections"] = Json::array({eq, em});
            row["injective"] = inj;
            tally.add(verdict(product && inj));
          } catch (const GroupCapExceeded& e) {
            row["inconclusive"] = e.what();
            tally.add(CheckStatus::inconclusive);
          }
          rows.push_back(row);
        }
        ch.witness = Json{{"rows", rows}};
        ch.status = tally.status();
      }));

  rep.checks.push_back(run_check(
      "restriction-to-sl2plus", "restriction H^1(GL_2(Z/n), M) -> H^1(SL_2^+(Z/n), M) is injective", ref,
      CheckTier::required, cap_param, [&](CheckResult& ch) {
        Json rows = Json::array();
        RowTally tally;
        for (std::int64_t n : {3, 4, 6, 8}) {
          if (n > in.max_n) continue;
          Json row{{"n", n}};
          try {
            auto G = gl2(n, cap);
            auto H = sl2_plus(n, cap);
            bool inj = h1_restriction_injectivity(G, H);
            row["orders"] = Json::array({G.order(), H.order()});
            row["injective"] = inj;
            tally.add(verdict(inj));
          } catch (const GroupCapExceeded& e) {
            row["inconclusive"] = e.what();
            tally.add(CheckStatus::inconclusive);
          }
          rows.push_back(row);
        }
        ch.witness = Json{{"rows", rows}};
        ch.status = tally.status();
      }));
  return rep;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names{"threefold-real", "threefold-padic", "surface", "cohomology"};
  return names;
}

Report pipeline_all(const PipelineConfig& config) {
  Report all;
  all.pipeline = "all";
  all.inputs["bounds"] = config.to_json();
  for (const auto& name : pipeline_names()) {
    Report r = run_pipeline(name, Json::object(), config);
    all.inputs[name] = r.inputs;
    all.inputs[name].erase("bounds");
    for (auto& c : r.checks) {
      c.check_id = name + "/" + c.check_id;
      all.checks.push_back(std::move(c));
    }
  }
  return all;
}

Report run_pipeline(const std::string& name, const Json& inputs, const PipelineConfig& config) {
  if (name == "threefold-real") return pipeline_threefold_real(ThreefoldRealInputs::from_json(inputs), config);
  if (name == "threefold-padic") return pipeline_threefold_padic(ThreefoldPadicInputs::from_json(inputs), config);
  if (name == "surface") return pipeline_surface(SurfaceInputs::from_json(inputs), config);
  if (name == "cohomology") return pipeline_cohomology(CohomologyInputs::from_json(inputs), config);
  if (name == "all") return pipeline_all(config);
  throw PipelineRefused("unknown pipeline '" + name + "'");
}

// ---------------------------------------------------------------------------

namespace {

/// Independent verification of the certificates recorded in a row; nullopt
/// when the row carries none.
std::optional<bool> verify_witness(const CheckResult& row) {
  std::string id = row.check_id;
  if (auto slash = id.rfind('/'); slash != std::string::npos) id = id.substr(slash + 1);
  const Json& w = row.witness;
  if (w.contains("error") || w.contains("reason")) return std::nullopt;

  if (id == "torsion-certificates") {
    const WeierstrassCurve E = WeierstrassCurve::parse(w.at("curve").get<std::string>());
    bool ok = true;
    for (const auto& t : w.at("twists")) {
      WeierstrassCurve Et = quadratic_twist(E, integer_from(t.at("t")));
      ok = ok && verify_torsion_certificate(Et, torsion_certificate_from(t.at("certificate")));
    }
    return ok;
  }
  if (id == "mod-ell-surjectivity") {
    const WeierstrassCurve E = WeierstrassCurve::parse(w.at("curve").get<std::string>());
    bool ok = true;
    for (const auto& r : w.at("reports")) ok = ok && verify_surjectivity_report(E, surjectivity_report_from(r));
    return ok;
  }
  if (id == "rank-positivity-witnesses") {
    bool ok = true;
    for (const auto& t : w.at("twists")) {
      if (!t.contains("point")) continue;
      WeierstrassCurve Et = WeierstrassCurve::parse(t.at("curve").get<std::string>());
      Point<Rational> P{rational_from(t.at("point").at("x")), rational_from(t.at("point").at("y")), false};
      ok = ok && rational_group(Et).contains(P) && non_torsion_by_mazur(Et, P);
    }
    return ok;
  }
  if (id == "point-and-abscissae") {
    ShortModel m = model_from(w.at("short_model"));
    QuadPoint P = quad_point_from(w.at("P"));
    bool ok = m.rhs(P.x) == P.y * P.y;
    if (w.contains("b")) {
      Rational b = rational_from(w.at("b"));
      ok = ok && m.rhs(P.x).is_totally_positive() && m.rhs(b) < 0;
    }
    return ok;
  }
  if (id == "albert-subform-isotropy" || id == "value-at-infinity") {
    auto coeffs = quad_list_from(w.at("coefficients"));
    bool ok = verify_local_certificate(coeffs, integer_from(w.at("field_c")), local_certificate_from(w.at("place_over_2")));
    if (w.contains("rational_isotropic_vector")) {
      std::vector<Rational> x, diag;
      for (const auto& v : w.at("rational_isotropic_vector")) x.push_back(rational_from(v));
      for (const auto& z : coeffs) diag.push_back(z.a());
      ok = ok && DiagonalForm(diag).evaluate(x) == 0;
    }
    return ok;
  }
  if (id == "nondivisibility") {
    ShortModel m = model_from(w.at("short_model"));
    QuadPoint P = quad_point_from(w.at("P"));
    bool ok = true;
    for (const auto& c : w.at("certificates")) {
      auto cert = nondivisibility_certificate_from(c);
      if (cert.found) ok = ok && verify_nondivisibility(m, P, cert);
    }
    return ok;
  }
  if (id == "preimage-integrality") {
    auto cert = integrality_certificate_from(w.at("certificate"));
    if (!cert.found) return std::nullopt;
    return verify_integrality(model_from(w.at("short_model")), quad_point_from(w.at("P")), cert);
  }
  return std::nullopt;
}

}  // namespace

std::vector<RecheckRow> recheck_report(const Json& report, ApCache* cache) {
  Report original = Report::from_json(report);
  PipelineConfig config = PipelineConfig::from_json(original.inputs.value("bounds", Json::object()));
  config.cache = cache;
  Json inputs = original.inputs;
  inputs.erase("bounds");
  Report fresh = run_pipeline(original.pipeline, inputs, config);
  std::map<std::string, const CheckResult*> by_id;
  for (const auto& c : fresh.checks) by_id[c.check_id] = &c;

  std::vector<RecheckRow> out;
  for (const auto& c : original.checks) {
    RecheckRow row;
    row.check_id = c.check_id;
    auto it = by_id.find(c.check_id);
    bool same = it != by_id.end() && strip_runtime(it->second->to_json()) == strip_runtime(c.to_json());
    std::optional<bool> verified;
    try {
      verified = verify_witness(c);
    } catch (const std::exception& e) {
      verified = false;
      row.detail = std::string("witness rejected: ") + e.what();
    }
    row.method = verified ? "verifier" : "recomputed";
    row.ok = same && verified.value_or(true);
    if (row.detail.empty()) {
      if (!same) {
        row.detail = it == by_id.end() ? "absent from a fresh run" : "differs from a fresh run";
      } else if (verified && !*verified) {
        row.detail = "certificate failed verification";
      } else {
        row.detail = "ok";
      }
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace brauerkit
