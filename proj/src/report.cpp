#include "brauerkit/report.hpp"

#include <stdexcept>

#ifndef BRAUERKIT_VERSION
#define BRAUERKIT_VERSION "0.0.0"
#endif

namespace brauerkit {

std::string toolkit_version() { return BRAUERKIT_VERSION; }

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(CheckTier t) { return t == CheckTier::required ? "required" : "bounded"; }

CheckStatus parse_status(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "inconclusive") return CheckStatus::inconclusive;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

CheckTier parse_tier(const std::string& s) {
  if (s == "required") return CheckTier::required;
  if (s == "bounded") return CheckTier::bounded;
  throw std::invalid_argument("unknown check tier '" + s + "'");
}

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("report: missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json CheckResult::to_json() const {
  Json j;
  j["check_id"] = check_id;
  j["statement"] = statement;
  j["paper_ref"] = paper_ref;
  j["tier"] = to_string(tier);
  j["status"] = to_string(status);
  j["witness"] = witness;
  j["parameters"] = parameters;
  j["runtime_ms"] = runtime_ms;
  return j;
}

CheckResult CheckResult::from_json(const Json& j) {
  CheckResult c;
  c.check_id = member(j, "check_id").get<std::string>();
  c.statement = member(j, "statement").get<std::string>();
  c.paper_ref = member(j, "paper_ref").get<std::string>();
  c.tier = parse_tier(member(j, "tier").get<std::string>());
  c.status = parse_status(member(j, "status").get<std::string>());
  c.witness = member(j, "witness");
  c.parameters = member(j, "parameters");
  c.runtime_ms = j.value("runtime_ms", std::int64_t{0});
  return c;
}

CheckStatus Report::overall() const {
  bool required_open = false;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::fail) return CheckStatus::fail;
    if (c.status == CheckStatus::inconclusive && c.tier == CheckTier::required) required_open = true;
  }
  return required_open ? CheckStatus::inconclusive : CheckStatus::pass;
}

Json Report::to_json() const {
  Json j;
  j["schema"] = kReportSchema;
  j["toolkit"] = "brauerkit";
  j["version"] = toolkit_version();
  j["pipeline"] = pipeline;
  j["inputs"] = inputs;
  Json rows = Json::array();
  for (const auto& c : checks) rows.push_back(c.to_json());
  j["checks"] = rows;
  j["overall"] = to_string(overall());
  return j;
}

Report Report::from_json(const Json& j) {
  if (member(j, "schema").get<int>() != kReportSchema) {
    throw std::invalid_argument("report: unsupported schema " + j.at("schema").dump());
  }
  Report r;
  r.pipeline = member(j, "pipeline").get<std::string>();
  r.inputs = member(j, "inputs");
  for (const auto& row : member(j, "checks")) r.checks.push_back(CheckResult::from_json(row));
  return r;
}

int exit_code(const Report& r) {
  switch (r.overall()) {
    case CheckStatus::pass:
      return kExitPass;
    case CheckStatus::fail:
      return kExitFail;
    case CheckStatus::inconclusive:
      return kExitInconclusive;
  }
  return kExitFail;
}

Json strip_runtime(const Json& j) {
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() != "runtime_ms") out[it.key()] = strip_runtime(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& x : j) out.push_back(strip_runtime(x));
    return out;
  }
  return j;
}

// ---------------------------------------------------------------------------

Json rational_json(const Rational& x) { return to_string(x); }
Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  return parse_rational(j.get<std::string>());
}
Json integer_json(const Integer& x) { return x.get_str(); }
Integer integer_from(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  return parse_integer(j.get<std::string>());
}

Json quad_json(const QuadFieldElement& z) {
  return Json{{"a", rational_json(z.a())}, {"b", rational_json(z.b())}, {"c", integer_json(z.c())}};
}

QuadFieldElement quad_from(const Json& j) {
  return QuadFieldElement(rational_from(member(j, "a")), rational_from(member(j, "b")), integer_from(member(j, "c")));
}

namespace {

Json counts_json(const std::vector<PointCount>& counts) {
  Json out = Json::array();
  for (const auto& c : counts) out.push_back(Json{{"p", c.p}, {"order", c.order}, {"a_p", c.a_p}});
  return out;
}

std::vector<PointCount> counts_from(const Json& j) {
  std::vector<PointCount> out;
  for (const auto& x : j) {
    out.push_back({member(x, "p").get<std::uint64_t>(), member(x, "order").get<std::uint64_t>(),
                   member(x, "a_p").get<long>()});
  }
  return out;
}

Json optional_witness(const std::optional<SurjectivityWitness>& w) {
  if (!w) return nullptr;
  return Json{{"p", w->p}, {"a_p", w->a_p}};
}

std::optional<SurjectivityWitness> witness_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return SurjectivityWitness{member(j, "p").get<std::uint64_t>(), member(j, "a_p").get<long>()};
}

}  // namespace

Json to_json(const TorsionCertificate& c) {
  Json j;
  j["curve"] = c.curve_id;
  j["prime_bound"] = c.prime_bound;
  j["no_rational_two_torsion"] = c.no_rational_two_torsion;
  j["counts"] = counts_json(c.counts);
  j["torsion_bound"] = integer_json(c.bound);
  j["certified"] = c.certified;
  return j;
}

TorsionCertificate torsion_certificate_from(const Json& j) {
  TorsionCertificate c;
  c.curve_id = member(j, "curve").get<std::string>();
  c.prime_bound = member(j, "prime_bound").get<std::uint64_t>();
  c.no_rational_two_torsion = member(j, "no_rational_two_torsion").get<bool>();
  c.counts = counts_from(member(j, "counts"));
  c.bound = integer_from(member(j, "torsion_bound"));
  c.certified = member(j, "certified").get<bool>();
  return c;
}

Json to_json(const SurjectivityWitnessReport& r) {
  Json j;
  j["ell"] = r.ell;
  j["prime_bound"] = r.prime_bound;
  j["w1"] = optional_witness(r.w1);
  j["w2"] = optional_witness(r.w2);
  j["w3"] = optional_witness(r.w3);
  j["primes_scanned"] = r.primes_scanned;
  j["verdict"] = r.certified ? "surjective-certified" : "inconclusive";
  return j;
}

SurjectivityWitnessReport surjectivity_report_from(const Json& j) {
  SurjectivityWitnessReport r;
  r.ell = member(j, "ell").get<std::uint64_t>();
  r.prime_bound = member(j, "prime_bound").get<std::uint64_t>();
  r.w1 = witness_from(member(j, "w1"));
  r.w2 = witness_from(member(j, "w2"));
  r.w3 = witness_from(member(j, "w3"));
  r.primes_scanned = member(j, "primes_scanned").get<std::size_t>();
  r.certified = member(j, "verdict").get<std::string>() == "surjective-certified";
  return r;
}

Json to_json(const NondivisibilityCertificate& c) {
  Json j;
  j["ell"] = c.ell;
  j["prime_bound"] = c.prime_bound;
  j["found"] = c.found;
  j["p"] = c.p;
  j["sqrt_d_mod_p"] = c.sqrt_d;
  j["reduced_point"] = Json::array({c.reduced_x, c.reduced_y});
  j["group_order"] = c.group_order;
  j["primes_tried"] = c.primes_tried;
  j["primes_skipped"] = c.primes_skipped;
  return j;
}

NondivisibilityCertificate nondivisibility_certificate_from(const Json& j) {
  NondivisibilityCertificate c;
  c.ell = member(j, "ell").get<std::uint64_t>();
  c.prime_bound = member(j, "prime_bound").get<std::uint64_t>();
  c.found = member(j, "found").get<bool>();
  c.p = member(j, "p").get<std::uint64_t>();
  c.sqrt_d = member(j, "sqrt_d_mod_p").get<std::uint64_t>();
  const Json& pt = member(j, "reduced_point");
  c.reduced_x = pt.at(0).get<std::uint64_t>();
  c.reduced_y = pt.at(1).get<std::uint64_t>();
  c.group_order = member(j, "group_order").get<std::uint64_t>();
  c.primes_tried = member(j, "primes_tried").get<std::size_t>();
  c.primes_skipped = member(j, "primes_skipped").get<std::size_t>();
  return c;
}

Json to_json(const IntegralityCertificate& c) {
  Json j;
  Json q = Json::array();
  for (const auto& a : c.quartic) q.push_back(rational_json(a));
  j["quartic"] = q;
  j["prime_bound"] = c.prime_bound;
  j["found"] = c.found;
  j["p"] = c.p;
  j["sqrt_d_mod_p"] = c.sqrt_d;
  j["y_step"] = c.y_step;
  j["y_coefficients"] = c.y_coefficients;
  j["primes_tried"] = c.primes_tried;
  return j;
}

IntegralityCertificate integrality_certificate_from(const Json& j) {
  IntegralityCertificate c;
  for (const auto& a : member(j, "quartic")) c.quartic.push_back(rational_from(a));
  c.prime_bound = member(j, "prime_bound").get<std::uint64_t>();
  c.found = member(j, "found").get<bool>();
  c.p = member(j, "p").get<std::uint64_t>();
  c.sqrt_d = member(j, "sqrt_d_mod_p").get<std::uint64_t>();
  c.y_step = member(j, "y_step").get<bool>();
  c.y_coefficients = member(j, "y_coefficients").get<std::vector<std::uint64_t>>();
  c.primes_tried = member(j, "primes_tried").get<std::size_t>();
  return c;
}

Json to_json(const LocalCertificate& c) {
  Json j;
  j["completion"] = c.completion;
  j["status"] = c.isotropic() ? "isotropic" : "anisotropic";
  Json coeffs = Json::array();
  for (const auto& z : c.normalized_coefficients) coeffs.push_back(quad_json(z));
  j["normalized_coefficients"] = coeffs;
  if (c.witness) {
    Json v = Json::array();
    for (const auto& [x, y] : c.witness->vector) v.push_back(Json::array({integer_json(x), integer_json(y)}));
    j["witness"] = Json{{"vector", v},
                        {"value_valuation", c.witness->value_valuation},
                        {"gradient_valuation", c.witness->gradient_valuation},
                        {"pivot", c.witness->pivot}};
  } else {
    j["witness"] = nullptr;
  }
  j["precision"] = c.precision;
  j["hensel_threshold"] = c.hensel_threshold;
  j["levels_searched"] = c.levels_searched;
  j["nodes_explored"] = c.nodes_explored;
  return j;
}

LocalCertificate local_certificate_from(const Json& j) {
  LocalCertificate c;
  c.completion = member(j, "completion").get<std::string>();
  c.status = member(j, "status").get<std::string>() == "isotropic" ? LocalCertificate::Status::Isotropic
                                                                   : LocalCertificate::Status::Anisotropic;
  for (const auto& z : member(j, "normalized_coefficients")) c.normalized_coefficients.push_back(quad_from(z));
  const Json& w = member(j, "witness");
  if (!w.is_null()) {
    LocalCertificate::Witness wit;
    for (const auto& pair : member(w, "vector")) wit.vector.emplace_back(integer_from(pair.at(0)), integer_from(pair.at(1)));
    wit.value_valuation = member(w, "value_valuation").get<long>();
    wit.gradient_valuation = member(w, "gradient_valuation").get<long>();
    wit.pivot = member(w, "pivot").get<std::size_t>();
    c.witness = wit;
  }
  c.precision = member(j, "precision").get<int>();
  c.hensel_threshold = member(j, "hensel_threshold").get<int>();
  c.levels_searched = member(j, "levels_searched").get<int>();
  c.nodes_explored = member(j, "nodes_explored").get<std::size_t>();
  return c;
}

}  // namespace brauerkit
