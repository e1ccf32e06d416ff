// brauerkit: run the verification pipelines and the small ad hoc computations
// behind them.
//
// Exit codes: 0 all pass, 1 a check failed, 2 a required check is
// inconclusive, 64 usage error.

#include "brauerkit/ap_cache.hpp"
#include "brauerkit/pipelines.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace brauerkit;

namespace {

struct Options {
  std::string json_path;
  std::uint64_t prime_bound = 10000;
  long height_bound = 10000;
  std::size_t coh_cap = kDefaultGroupCap;
  bool recheck = false;
  std::string cache_path;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw UsageError("empty coefficient list");
  return out;
}

Place parse_place(const std::string& text) {
  if (text == "inf" || text == "oo" || text == "infinity") return Place::real();
  Integer p = parse_integer(text);
  if (!is_prime(p)) throw UsageError("not a place: " + text);
  return Place::finite(p);
}

void write_json(const Json& j, const std::string& path) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void print_report(const Report& r, bool quiet) {
  if (quiet) return;
  for (const auto& c : r.checks) {
    std::cout << "[" << to_string(c.status) << "] " << c.check_id << " (" << to_string(c.tier) << ", "
              << c.runtime_ms << " ms)\n    " << c.statement << "\n";
    if (c.witness.contains("reason")) std::cout << "    reason: " << c.witness["reason"].get<std::string>() << "\n";
    if (c.witness.contains("error")) std::cout << "    error: " << c.witness["error"].get<std::string>() << "\n";
  }
  std::cout << "overall: " << to_string(r.overall()) << "\n";
}

int print_recheck(const std::vector<RecheckRow>& rows) {
  bool ok = true;
  for (const auto& row : rows) {
    std::cout << (row.ok ? "[ok] " : "[MISMATCH] ") << row.check_id << " (" << row.method << ") " << row.detail
              << "\n";
    ok = ok && row.ok;
  }
  std::cout << "recheck: " << (ok ? "ok" : "mismatch") << "\n";
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"brauerkit: certificates for local-global obstructions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file with default flag values");
  app.set_version_flag("--version", toolkit_version());

  Options opt;
  if (const char* env = std::getenv("BRAUERKIT_CACHE")) opt.cache_path = env;
  app.add_option("--json", opt.json_path, "write the JSON report to PATH (- for stdout)");
  app.add_option("--prime-bound", opt.prime_bound, "bound for prime scans")->capture_default_str();
  app.add_option("--height-bound", opt.height_bound, "naive height bound for point searches")->capture_default_str();
  app.add_option("--coh-cap", opt.coh_cap, "largest group order enumerated")->capture_default_str();
  app.add_flag("--recheck", opt.recheck, "re-verify the report after producing it");
  app.add_option("--cache", opt.cache_path, "a_p cache file (default $BRAUERKIT_CACHE)");

  ThreefoldRealInputs real_in;
  std::string real_form = "1,1,1";
  std::string real_n = "7", real_a = "1";
  auto* real = app.add_subcommand("threefold-real", "quadric bundle obstructed at the real place");
  real->add_option("--form", real_form, "coefficients of the base conic")->capture_default_str();
  real->add_option("--n", real_n, "coefficient n")->capture_default_str();
  real->add_option("--a", real_a, "second degenerate fibre t = a")->capture_default_str();

  ThreefoldPadicInputs padic_in;
  std::string p1 = "5", p2 = "17", D = "-1";
  auto* padic = app.add_subcommand("threefold-padic", "quadric bundle obstructed at two p-adic places");
  padic->add_option("--p1", p1)->capture_default_str();
  padic->add_option("--p2", p2)->capture_default_str();
  padic->add_option("--D", D, "K = Q(sqrt D)")->capture_default_str();

  SurfaceInputs surf_in;
  std::string surf_c = "10", surf_d = "2";
  auto* surface = app.add_subcommand("surface", "conic bundle over an elliptic curve");
  surface->add_option("--curve", surf_in.curve, "[a1,a2,a3,a4,a6]")->capture_default_str();
  surface->add_option("--c", surf_c, "k = Q(sqrt c)")->capture_default_str();
  surface->add_option("--d", surf_d, "K = k(sqrt d)")->capture_default_str();
  surface->add_option("--max-ell", surf_in.max_ell)->capture_default_str();

  CohomologyInputs coh_in;
  auto* coh = app.add_subcommand("cohomology", "H^0 and H^1 of SL_2^+(Z/n) and its overgroups");
  coh->add_option("--max-n", coh_in.max_n)->capture_default_str();
  coh->add_option("--max-r", coh_in.max_r)->capture_default_str();

  auto* report = app.add_subcommand("report", "every pipeline at default inputs");

  std::string recheck_path;
  auto* recheck = app.add_subcommand("recheck", "re-verify a saved JSON report");
  recheck->add_option("path", recheck_path)->required();

  std::string ha, hb;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbols (a, b)_v at the relevant places");
  hilbert->add_option("a", ha)->required();
  hilbert->add_option("b", hb)->required();

  std::string iso_coeffs, iso_place;
  auto* iso = app.add_subcommand("isotropic", "local isotropy of a diagonal form");
  iso->add_option("coefficients", iso_coeffs, "c1,...,cr")->required();
  iso->add_option("--place", iso_place, "a prime or inf");

  std::string h1_group = "sl2plus";
  std::int64_t h1_n = 2;
  auto* h1cmd = app.add_subcommand("h1", "H^1(G, (Z/n)^2)");
  h1cmd->add_option("--group", h1_group)->check(CLI::IsMember({"sl2", "sl2plus", "gl2"}))->capture_default_str();
  h1cmd->add_option("--n", h1_n)->required()->check(CLI::PositiveNumber);

  std::string ec_action, ec_curve = "[0,1,1,-12,-21]", ec_d = "2";
  std::uint64_t ec_p = 5, ec_ell = 3;
  auto* ec = app.add_subcommand("ec", "elliptic curve utilities");
  ec->add_option("action", ec_action)->required()->check(CLI::IsMember({"info", "ap", "torsion", "galois", "twist"}));
  ec->add_option("--curve", ec_curve)->capture_default_str();
  ec->add_option("--p", ec_p)->capture_default_str();
  ec->add_option("--ell", ec_ell)->capture_default_str();
  ec->add_option("--d", ec_d)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    std::unique_ptr<ApCache> cache;
    if (!opt.cache_path.empty()) {
      cache = std::make_unique<ApCache>(opt.cache_path);
      cache->load();
    }
    PipelineConfig config;
    config.prime_bound = opt.prime_bound;
    config.height_bound = opt.height_bound;
    config.coh_cap = opt.coh_cap;
    config.cache = cache.get();

    auto finish = [&](const Report& r) {
      if (cache) cache->flush();
      write_json(r.to_json(), opt.json_path);
      print_report(r, opt.json_path == "-");
      int code = exit_code(r);
      if (opt.recheck) {
        int rc = print_recheck(recheck_report(r.to_json(), cache.get()));
        if (rc != kExitPass) code = kExitFail;
      }
      return code;
    };

    if (*real) {
      real_in.form = parse_list(real_form);
      real_in.n = parse_rational(real_n);
      real_in.a = parse_rational(real_a);
      return finish(pipeline_threefold_real(real_in, config));
    }
    if (*padic) {
      padic_in.p1 = parse_integer(p1);
      padic_in.p2 = parse_integer(p2);
      padic_in.D = parse_integer(D);
      return finish(pipeline_threefold_padic(padic_in, config));
    }
    if (*surface) {
      surf_in.c = parse_integer(surf_c);
      surf_in.d = parse_integer(surf_d);
      return finish(pipeline_surface(surf_in, config));
    }
    if (*coh) return finish(pipeline_cohomology(coh_in, config));
    if (*report) return finish(pipeline_all(config));

    if (*recheck) {
      std::ifstream in(recheck_path);
      if (!in) throw UsageError("cannot read " + recheck_path);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw UsageError(recheck_path + ": " + e.what());
      }
      int rc = print_recheck(recheck_report(j, cache.get()));
      if (cache) cache->flush();
      return rc;
    }

    if (*hilbert) {
      Rational a = parse_rational(ha), b = parse_rational(hb);
      if (a == 0 || b == 0) throw UsageError("Hilbert symbols need nonzero arguments");
      std::vector<Place> places;
      for (const auto& p : support_primes(Rational(2) * a * b)) places.push_back(Place::finite(p));
      places.push_back(Place::real());
      Json j = Json::object();
      for (const auto& v : places) {
        int s = hilbert_symbol(a, b, v);
        j[v.to_string()] = s;
        std::cout << "(" << to_string(a) << ", " << to_string(b) << ")_" << v.to_string() << " = " << (s > 0 ? "+1" : "-1")
                  << "\n";
      }
      write_json(Json{{"a", rational_json(a)}, {"b", rational_json(b)}, {"symbols", j}}, opt.json_path);
      return kExitPass;
    }

    if (*iso) {
      auto coeffs = parse_list(iso_coeffs);
      for (const auto& x : coeffs) {
        if (x == 0) throw UsageError("coefficients must be nonzero");
      }
      DiagonalForm f(coeffs);
      Json j{{"form", f.to_string()}};
      if (!iso_place.empty()) {
        Place v = parse_place(iso_place);
        bool ok = is_isotropic_local(f, v);
        std::cout << f.to_string() << " is " << (ok ? "isotropic" : "anisotropic") << " over Q_" << v.to_string()
                  << "\n";
        j["place"] = v.to_string();
        j["isotropic"] = ok;
      } else {
        auto places = anisotropic_places(f);
        std::cout << f.to_string() << " is anisotropic at {";
        Json pj = Json::array();
        for (std::size_t i = 0; i < places.size(); ++i) {
          std::cout << (i ? ", " : "") << places[i].to_string();
          pj.push_back(places[i].to_string());
        }
        std::cout << "}" << (places.empty() ? " (isotropic over Q)" : "") << "\n";
        j["anisotropic_places"] = pj;
      }
      write_json(j, opt.json_path);
      return kExitPass;
    }

    if (*h1cmd) {
      auto G = h1_group == "sl2" ? sl2(h1_n, opt.coh_cap)
               : h1_group == "gl2" ? gl2(h1_n, opt.coh_cap)
                                   : sl2_plus(h1_n, opt.coh_cap);
      auto H = h1(G);
      std::cout << "|G| = " << G.order() << "\nH^1 = " << H.to_string() << (H.is_trivial() ? " (trivial)" : "")
                << "\n";
      Json f = Json::array();
      for (const auto& x : H.invariant_factors) f.push_back(integer_json(x));
      write_json(Json{{"group", h1_group}, {"n", h1_n}, {"order", G.order()}, {"invariant_factors", f}},
                 opt.json_path);
      return kExitPass;
    }

    if (*ec) {
      WeierstrassCurve E = WeierstrassCurve::parse(ec_curve);
      Json j{{"curve", E.id()}};
      if (ec_action == "info") {
        auto m = short_model(E);
        std::cout << "curve " << E.id() << "\ndiscriminant " << to_string(E.discriminant()) << "\nshort model y^2 = "
                  << m.cubic().to_string() << "\n";
        Json bad = Json::array();
        for (const auto& p : E.bad_primes()) bad.push_back(integer_json(p));
        std::cout << "bad primes " << bad.dump() << "\n";
        j["discriminant"] = rational_json(E.discriminant());
        j["short_model"] = {{"p", rational_json(m.p)}, {"q", rational_json(m.q)}};
        j["bad_primes"] = bad;
      } else if (ec_action == "ap") {
        auto pc = count_points_mod_p(E, ec_p, cache.get());
        std::cout << "#E(F_" << ec_p << ") = " << pc.order << ", a_p = " << pc.a_p << "\n";
        j["p"] = ec_p;
        j["order"] = pc.order;
        j["a_p"] = pc.a_p;
      } else if (ec_action == "torsion") {
        auto cert = torsion_trivial_certificate(E, 200, cache.get());
        std::cout << (cert.certified ? "torsion trivial" : "torsion not certified") << " (bound "
                  << to_string(cert.bound) << " from " << cert.counts.size() << " primes)\n";
        j["certificate"] = to_json(cert);
      } else if (ec_action == "galois") {
        if (ec_ell == 2) {
          auto m2 = mod2_image(E);
          std::cout << "mod 2 image " << (m2.full() ? "GL_2(F_2)" : "not full") << "\n";
          j["mod2_full"] = m2.full();
        } else {
          auto rpt = mod_l_surjectivity_witnesses(E, ec_ell, opt.prime_bound, cache.get());
          std::cout << "ell = " << ec_ell << ": " << (rpt.certified ? "surjective-certified" : "inconclusive")
                    << " after " << rpt.primes_scanned << " primes\n";
          j["report"] = to_json(rpt);
        }
      } else {
        auto Et = quadratic_twist(E, parse_integer(ec_d));
        std::cout << Et.id() << "\n";
        j["twist"] = Et.id();
      }
      if (cache) cache->flush();
      write_json(j, opt.json_path);
      return kExitPass;
    }
  } catch (const PipelineRefused& e) {
    std::cerr << "brauerkit: refused: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "brauerkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "brauerkit: error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
