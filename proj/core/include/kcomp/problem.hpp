#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcomp/common.hpp"
#include "kcomp/completion.hpp"
#include "kcomp/verify.hpp"

namespace kcomp {

struct SpaceSpec {
  std::string kind;  // "pw" or "hb"
  double type_a = 0.0;
  std::vector<cplx> zeros;
  double phase = 0.0;
};

struct GeneratorSpec {
  std::string id;  // integers | harmonic_imaginary | perturbed_integers
  std::vector<double> exclude;
  double delta = 0.0;  // perturbation half-width (perturbed_integers)
  double radius = 0.0;
};

struct ProblemParams {
  std::pair<double, double> anchor_window{-5.0, 5.0};
  std::optional<std::pair<double, double>> scan_window;
  double step = 0.1;
  double tol = 1e-10;
  double ridge = 1e-12;
  long trunc_n = 0;  // 0 = strategy default (N for pw samples, T for hb quadrature)
  long seed = 1;
};

/// A parsed and validated problem description. config_echo keeps the raw
/// input bytes so results can carry a byte-identical provenance echo.
struct ProblemSpec {
  SpaceSpec space;
  std::optional<std::vector<cplx>> explicit_lambda;
  std::optional<GeneratorSpec> generator;
  ProblemParams params;
  std::string config_echo;

  static ProblemSpec parse_text(const std::string& text);
};

AmbientSpace make_ambient(const ProblemSpec& spec);
NodeSequence make_lambda(const ProblemSpec& spec);
CompletionParams make_completion_params(const ProblemSpec& spec);

struct ResultBundle {
  CompletionResult completion;
  Prop1Report prop1;
  MinimalityReport minimality;
  double parseval = 0.0;  // defect over kappa-section probes at S
  std::optional<RankReport> rank;
  std::vector<int> trend_truncations;
  std::vector<double> completeness_trend;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::string config_echo;
  bool verify_only = false;
};

ResultBundle run_complete(const ProblemSpec& spec);
/// Re-runs verification on a user-supplied S (anchor must be in S).
ResultBundle run_verify(const ProblemSpec& spec, const std::vector<double>& s,
                        double anchor);

/// Deterministic serialization: fixed key order, LF line endings, numbers
/// with 12 significant digits; the "timestamps" object is the only
/// run-dependent field.
std::string bundle_to_json(const ResultBundle& bundle);
std::string bundle_to_csv(const ResultBundle& bundle);

/// Parse any JSON text and re-emit it with this module's writer; emitted
/// documents are a fixed point of this map.
std::string canonical_json(const std::string& text);

/// Extract (s_points, anchor) from a serialized ResultBundle.
std::pair<std::vector<double>, double> parse_result_s(const std::string& text);

/// Temp-file-plus-rename write.
void write_atomic(const std::string& path, const std::string& content);

std::vector<std::string> demo_names();
/// Spec text for a canned demo; unknown names throw ValidationError.
std::string demo_spec_text(const std::string& name);

}  // namespace kcomp
