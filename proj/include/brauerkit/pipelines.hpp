#pragma once

// The verification pipelines: the two threefold examples (a real place and a
// pair of p-adic places carrying the obstruction), the conic bundle over an
// elliptic curve, and the cohomology of SL_2^+(Z/n).

#include "brauerkit/cohomology.hpp"
#include "brauerkit/report.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauerkit {

class ApCache;

struct PipelineConfig {
  std::uint64_t prime_bound = 10000;
  long height_bound = 10000;
  std::size_t coh_cap = kDefaultGroupCap;
  std::uint64_t torsion_prime_bound = 200;
  ApCache* cache = nullptr;

  Json to_json() const;
  /// Bounds from a report's inputs; the cache pointer is left unset.
  static PipelineConfig from_json(const Json& j);
};

/// Inputs whose preconditions fail (for instance c = 1 mod 8); the CLI maps
/// this to a usage error.
class PipelineRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Q(x0, x1, x2) + n t (t - a) x3^2 = 0 over the t-line.
struct ThreefoldRealInputs {
  std::vector<Rational> form{1, 1, 1};
  Rational n = 7;
  Rational a = 1;
  Json to_json() const;
  static ThreefoldRealInputs from_json(const Json& j);
};

/// r^2 - p1 s^2 - p2 t^2 - u^2 = 0 with K = Q(sqrt D).
struct ThreefoldPadicInputs {
  Integer p1 = 5, p2 = 17, D = -1;
  Json to_json() const;
  static ThreefoldPadicInputs from_json(const Json& j);
};

/// E over k = Q(sqrt c) with K = Q(sqrt c, sqrt d).
struct SurfaceInputs {
  std::string curve = "[0,1,1,-12,-21]";
  Integer c = 10, d = 2;
  std::uint64_t max_ell = 13;
  Json to_json() const;
  static SurfaceInputs from_json(const Json& j);
};

struct CohomologyInputs {
  std::int64_t max_n = 16;
  int max_r = 3;
  Json to_json() const;
  static CohomologyInputs from_json(const Json& j);
};

Report pipeline_threefold_real(const ThreefoldRealInputs& in = {}, const PipelineConfig& config = {});
Report pipeline_threefold_padic(const ThreefoldPadicInputs& in = {}, const PipelineConfig& config = {});
/// Throws PipelineRefused for invalid field data.
Report pipeline_surface(const SurfaceInputs& in = {}, const PipelineConfig& config = {});
Report pipeline_cohomology(const CohomologyInputs& in = {}, const PipelineConfig& config = {});
/// Every pipeline at default inputs, check ids prefixed by the pipeline name.
Report pipeline_all(const PipelineConfig& config = {});

const std::vector<std::string>& pipeline_names();
/// Runs a named pipeline from the inputs recorded in a report.
Report run_pipeline(const std::string& name, const Json& inputs, const PipelineConfig& config);

struct RecheckRow {
  std::string check_id;
  bool ok = false;
  /// "verifier" when the witness went through an independent check,
  /// "recomputed" when the row was only compared with a fresh run.
  std::string method;
  std::string detail;
};

/// Re-runs the pipeline a report came from and compares every row, then
/// feeds each certificate in the witnesses back through its verifier.
std::vector<RecheckRow> recheck_report(const Json& report, ApCache* cache = nullptr);

}  // namespace brauerkit
