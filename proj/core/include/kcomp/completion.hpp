#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcomp/common.hpp"
#include "kcomp/restricted.hpp"

namespace kcomp {

struct CompletionParams {
  std::pair<double, double> anchor_window{-5.0, 5.0};
  /// Scan window for the zeros of kappa(., x0); defaults to x0 +/- 25.
  std::optional<std::pair<double, double>> scan_window;
  double anchor_grid_step = 0.25;
  double scan_step = 0.1;
  /// Bisection stops once the bracket is this narrow.
  double zero_tol = 1e-10;
  /// Zeros closer than this are treated as one.
  double zero_merge_tol = 1e-8;
  /// Anchor candidates must keep this distance from Lambda.
  double lambda_exclusion = 1e-2;
  /// Parseval probe defect above which the anchor is retried.
  double parseval_tol = 1e-6;
  std::optional<double> forced_anchor;
  /// Keep doubling the scan window until a finite-dimensional space yields
  /// its full complement of points.
  bool expand_for_finite_dim = true;
};

struct CompletionDiagnostics {
  double anchor_diag = 0.0;      // kappa(x0, x0)
  double parseval_defect = 0.0;  // probe defect of the accepted anchor
  /// max over s != s' of |kappa(s,s')| / sqrt(kappa(s,s) kappa(s',s')).
  double orth_max_residual = 0.0;
  std::vector<double> orth_residual;  // per S point, worst partner
  bool reanchored = false;
  int window_expansions = 0;
  std::pair<double, double> scan_window{0.0, 0.0};
  std::vector<std::string> anomalies;  // near-double zeros, dropped points
  std::vector<std::string> warnings;
};

struct CompletionResult {
  double anchor = 0.0;
  std::vector<double> s_points;    // sorted ascending, anchor included
  std::vector<double> kappa_diag;  // kappa(s, s) per point
  CompletionDiagnostics diagnostics;
};

/// Grid candidates for the anchor, best first: largest kappa diagonal,
/// ties (1e-6 relative) broken toward smallest |x|, then leftmost. Points
/// within lambda_exclusion of a node are skipped.
std::vector<double> ranked_anchor_candidates(const RestrictedSpace& rs,
                                             const CompletionParams& params = {});

double choose_anchor(const RestrictedSpace& rs, const CompletionParams& params = {});

/// Real zeros of x -> kappa(x, anchor) in [lo, hi]: sign-change bracketing
/// on the scan grid plus bisection (bracket width below 1e-10 and |f| below
/// zero_tol). The anchor itself is never reported. Grid points where kappa
/// is tiny without a sign change (near-double zeros) are flagged as
/// anomalies, not returned; the imaginary residue of kappa on the grid is
/// asserted small.
std::vector<double> scan_zeros(const KappaSection& section, double lo, double hi,
                               const CompletionParams& params = {},
                               std::vector<std::string>* anomalies = nullptr);

/// Relative Parseval defect max_w |kappa(w,w) - sum_s |kappa(w,s)|^2 /
/// kappa(s,s)| / kappa(w,w) over a few real probe points near x0. Zero for
/// an exact orthonormal completing set.
double parseval_probe_defect(const RestrictedSpace& rs, const std::vector<double>& s,
                             double x0);

/// The full pipeline: anchor choice, zero scan, finite-dimensional window
/// expansion, orthogonality diagnostics, and the Parseval guard with one
/// re-anchoring retry at anchor + grid_step/2 (both attempts failing hard
/// raises ExceptionalAlphaError).
CompletionResult complete(const RestrictedSpace& rs, const CompletionParams& params = {});

/// Empirical stabilization: complete at each truncation radius and match S
/// points across consecutive radii by nearest neighbor within 1e-3.
struct StabilityReport {
  struct Stage {
    double radius = 0.0;
    std::vector<double> s_points;
  };
  std::vector<Stage> stages;
  int matched = 0;
  int unmatched = 0;
  double max_drift = 0.0;  // over matched pairs
};

StabilityReport stabilize(const std::function<NodeSequence(double)>& seq_generator,
                          const std::vector<double>& radii, const AmbientSpace& ambient,
                          const CompletionParams& params = {});

}  // namespace kcomp
