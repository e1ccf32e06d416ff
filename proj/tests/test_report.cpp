#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brauerkit/pipelines.hpp"

using namespace brauerkit;

namespace {

CheckResult row(const std::string& id, CheckStatus s, CheckTier t) {
  CheckResult c;
  c.check_id = id;
  c.statement = "s";
  c.paper_ref = "r";
  c.status = s;
  c.tier = t;
  return c;
}

Report with(std::vector<CheckResult> rows) {
  Report r;
  r.pipeline = "test";
  r.checks = std::move(rows);
  return r;
}

const CheckResult& find(const Report& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.check_id == id) return c;
  }
  throw std::out_of_range(id);
}

}  // namespace

TEST_CASE("overall verdict and exit codes") {
  using S = CheckStatus;
  using T = CheckTier;
  CHECK(exit_code(with({row("a", S::pass, T::required)})) == kExitPass);
  CHECK(exit_code(with({row("a", S::pass, T::required), row("b", S::inconclusive, T::bounded)})) == kExitPass);
  CHECK(exit_code(with({row("a", S::inconclusive, T::required)})) == kExitInconclusive);
  CHECK(exit_code(with({row("a", S::inconclusive, T::required), row("b", S::fail, T::bounded)})) == kExitFail);
  CHECK(exit_code(with({})) == kExitPass);
}

TEST_CASE("report JSON round trip") {
  Report r = with({row("a", CheckStatus::pass, CheckTier::bounded)});
  r.checks[0].witness = Json{{"x", "1/2"}};
  r.checks[0].runtime_ms = 17;
  Json j = r.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["overall"] == "pass");
  CHECK(j["checks"][0]["tier"] == "bounded");
  Report back = Report::from_json(j);
  CHECK(back.to_json() == j);
  Json bad = j;
  bad["schema"] = 2;
  CHECK_THROWS_AS(Report::from_json(bad), std::invalid_argument);
  bad = j;
  bad.erase("checks");
  CHECK_THROWS_AS(Report::from_json(bad), std::invalid_argument);
  Json s = strip_runtime(j);
  CHECK_FALSE(s["checks"][0].contains("runtime_ms"));
  CHECK(s["checks"][0].contains("witness"));
}

TEST_CASE("value encodings") {
  CHECK(rational_from(rational_json(Rational(-4328, 27))) == Rational(-4328, 27));
  CHECK(rational_from(Json(3)) == 3);
  CHECK(integer_from(integer_json(Integer("-9115276032"))) == Integer("-9115276032"));
  QuadFieldElement z(182, Rational(1, 3), 10);
  CHECK(quad_from(quad_json(z)) == z);
}

TEST_CASE("certificate encodings round trip") {
  auto E = WeierstrassCurve::from_ints(0, 1, 1, -12, -21);
  auto t = torsion_trivial_certificate(E, 200);
  CHECK(to_json(torsion_certificate_from(to_json(t))) == to_json(t));
  auto s = mod_l_surjectivity_witnesses(E, 7, 10000);
  CHECK(to_json(surjectivity_report_from(to_json(s))) == to_json(s));
  auto m = short_model(E);
  QuadPoint P{QuadFieldElement(182, 0, 2), QuadFieldElement(0, 1082, 2)};
  auto n = nondivisibility_certificate(m, P, {10, 2}, 3, 10000);
  CHECK(to_json(nondivisibility_certificate_from(to_json(n))) == to_json(n));
  auto i = preimage_integrality_n2(m, P, {10, 2}, 10000);
  CHECK(to_json(integrality_certificate_from(to_json(i))) == to_json(i));
  std::vector<QuadFieldElement> ones(3, QuadFieldElement::rational(1, 10));
  auto l = is_isotropic_quadfield_at_two(ones, 10);
  auto l2 = local_certificate_from(to_json(l));
  CHECK(to_json(l2) == to_json(l));
  CHECK(verify_local_certificate(ones, 10, l2));
}

TEST_CASE("threefold pipelines and their altered inputs") {
  Report real = pipeline_threefold_real();
  CHECK(real.overall() == CheckStatus::pass);
  ThreefoldRealInputs n3;
  n3.n = 3;
  CHECK(find(pipeline_threefold_real(n3), "minus-n-square-at-2").status == CheckStatus::fail);
  ThreefoldRealInputs q;
  q.form = {1, 1, -1};
  CHECK(find(pipeline_threefold_real(q), "conic-anisotropic-places").status == CheckStatus::fail);

  Report padic = pipeline_threefold_padic();
  CHECK(padic.overall() == CheckStatus::pass);
  ThreefoldPadicInputs k5;
  k5.D = -5;
  CHECK(find(pipeline_threefold_padic(k5), "primes-split-in-K").status == CheckStatus::fail);
  ThreefoldPadicInputs p13;
  p13.p2 = 13;
  auto places = find(pipeline_threefold_padic(p13), "conic-anisotropic-places").witness["anisotropic_places"];
  CHECK(places == Json::array({"5", "13"}));
  ThreefoldPadicInputs bad;
  bad.p1 = 4;
  CHECK_THROWS_AS(pipeline_threefold_padic(bad), PipelineRefused);
}

TEST_CASE("cohomology pipeline") {
  CHECK(pipeline_cohomology().overall() == CheckStatus::pass);
  CohomologyInputs r4;
  r4.max_r = 4;
  CHECK(pipeline_cohomology(r4).overall() == CheckStatus::pass);
  CohomologyInputs trivial;
  trivial.max_n = 1;
  trivial.max_r = 0;
  CHECK(pipeline_cohomology(trivial).overall() == CheckStatus::pass);
  PipelineConfig tiny;
  tiny.coh_cap = 100;
  Report capped = pipeline_cohomology({}, tiny);
  CHECK(capped.overall() == CheckStatus::inconclusive);
  CHECK(exit_code(capped) == kExitInconclusive);
}

TEST_CASE("surface pipeline refuses bad fields") {
  SurfaceInputs c17;
  c17.c = 17;
  CHECK_THROWS_WITH_AS(pipeline_surface(c17), doctest::Contains("congruent to 1 modulo 8"), PipelineRefused);
  SurfaceInputs same;
  same.d = 10;
  CHECK_THROWS_AS(pipeline_surface(same), PipelineRefused);
  SurfaceInputs square;
  square.c = 4;
  CHECK_THROWS_AS(pipeline_surface(square), PipelineRefused);
}

TEST_CASE("surface pipeline with a 2-torsion curve fails the mod-2 check") {
  SurfaceInputs in;
  in.curve = "[0,0,0,-1,0]";
  in.max_ell = 3;
  PipelineConfig cfg;
  cfg.height_bound = 50;
  cfg.prime_bound = 500;
  Report r = pipeline_surface(in, cfg);
  CHECK(find(r, "mod-2-image").status == CheckStatus::fail);
  CHECK(r.overall() == CheckStatus::fail);
}

TEST_CASE("reports are deterministic and recheck detects tampering") {
  Json a = strip_runtime(pipeline_threefold_padic().to_json());
  Json b = strip_runtime(pipeline_threefold_padic().to_json());
  CHECK(a.dump() == b.dump());

  Json rep = pipeline_threefold_real().to_json();
  for (const auto& row : recheck_report(rep)) CHECK(row.ok);

  Json tampered = rep;
  tampered["checks"][1]["witness"]["square_in_Q2"] = false;
  auto rows = recheck_report(tampered);
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[0].ok);
}

TEST_CASE("recheck runs the certificate verifiers on surface witnesses") {
  PipelineConfig cfg;
  cfg.height_bound = 400;
  Json rep = pipeline_surface({}, cfg).to_json();
  CHECK(rep["overall"] == "pass");
  auto rows = recheck_report(rep);
  std::size_t verified = 0;
  for (const auto& r : rows) {
    CHECK_MESSAGE(r.ok, r.check_id, ": ", r.detail);
    verified += r.method == "verifier";
  }
  CHECK(verified >= 7);

  auto index = [&](const std::string& id) {
    for (std::size_t i = 0; i < rep["checks"].size(); ++i) {
      if (rep["checks"][i]["check_id"] == id) return i;
    }
    throw std::out_of_range(id);
  };
  Json forged = rep;
  auto& counts = forged["checks"][index("torsion-certificates")]["witness"]["twists"][0]["certificate"]["counts"][0];
  counts["order"] = counts["order"].get<long>() + 1;
  counts["a_p"] = counts["a_p"].get<long>() - 1;
  auto bad = recheck_report(forged);
  CHECK_FALSE(bad[index("torsion-certificates")].ok);

  forged = rep;
  forged["checks"][index("nondivisibility")]["witness"]["certificates"][2]["p"] = 43;
  CHECK_FALSE(recheck_report(forged)[index("nondivisibility")].ok);
}
