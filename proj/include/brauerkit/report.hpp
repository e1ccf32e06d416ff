#pragma once

// Check results, reports and their JSON form (schema 1), plus the JSON
// encoding of every certificate type so that a report can be re-verified.

#include "brauerkit/curves.hpp"
#include "brauerkit/json.hpp"
#include "brauerkit/quadratic_forms.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace brauerkit {

inline constexpr int kReportSchema = 1;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

std::string toolkit_version();

enum class CheckStatus { pass, fail, inconclusive };
/// Required checks are decided exactly; bounded checks are prime scans or
/// searches whose failure to find a witness is not a disproof.
enum class CheckTier { required, bounded };

std::string to_string(CheckStatus s);
std::string to_string(CheckTier t);
CheckStatus parse_status(const std::string& s);
CheckTier parse_tier(const std::string& s);

struct CheckResult {
  std::string check_id;
  std::string statement;
  std::string paper_ref;  // which construction the check belongs to
  CheckStatus status = CheckStatus::inconclusive;
  CheckTier tier = CheckTier::required;
  Json witness = Json::object();
  Json parameters = Json::object();
  std::int64_t runtime_ms = 0;

  Json to_json() const;
  static CheckResult from_json(const Json& j);
};

struct Report {
  std::string pipeline;
  Json inputs = Json::object();
  std::vector<CheckResult> checks;

  /// pass iff nothing failed and no required check is inconclusive.
  CheckStatus overall() const;
  Json to_json() const;
  /// Throws std::invalid_argument on a missing field or another schema.
  static Report from_json(const Json& j);
};

/// 0 pass, 1 any failure, 2 a required check inconclusive.
int exit_code(const Report& r);

/// Copy with every runtime_ms member removed, at any depth.
Json strip_runtime(const Json& j);

// ---------------------------------------------------------------------------
// Values.

Json rational_json(const Rational& x);
Rational rational_from(const Json& j);
Json integer_json(const Integer& x);
Integer integer_from(const Json& j);
Json quad_json(const QuadFieldElement& z);
QuadFieldElement quad_from(const Json& j);

// ---------------------------------------------------------------------------
// Certificates.

Json to_json(const TorsionCertificate& c);
TorsionCertificate torsion_certificate_from(const Json& j);

Json to_json(const SurjectivityWitnessReport& r);
SurjectivityWitnessReport surjectivity_report_from(const Json& j);

Json to_json(const NondivisibilityCertificate& c);
NondivisibilityCertificate nondivisibility_certificate_from(const Json& j);

Json to_json(const IntegralityCertificate& c);
IntegralityCertificate integrality_certificate_from(const Json& j);

Json to_json(const LocalCertificate& c);
LocalCertificate local_certificate_from(const Json& j);

}  // namespace brauerkit
