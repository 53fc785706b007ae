#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kcomp/common.hpp"
#include "kcomp/structure.hpp"

namespace kcomp {

enum class InnerProductStrategy { integer_sample, weighted_quadrature };

struct QuadParams {
  double half_width = 200.0;   // T
  int points_per_panel = 16;
  double panel_width = 1.0;
  double tail_tol = 1e-8;      // low-confidence threshold, relative
};

struct SampleParams {
  long half_range = 500000;  // N
  double tail_tol = 1e-8;
};

/// An H(E) together with the numeric inner-product strategy. Paley-Wiener
/// uses the exact integer-sample series; everything else integrates
/// F conj(G) / |E|^2 with composite Gauss panels plus a tail model.
class AmbientSpace {
 public:
  static AmbientSpace paley_wiener(SampleParams sp = {});
  static AmbientSpace weighted(StructureFunction E, QuadParams qp = {});

  const StructureFunction& structure() const { return E_; }
  InnerProductStrategy strategy() const { return strategy_; }
  const QuadParams& quad_params() const { return quad_; }
  const SampleParams& sample_params() const { return sample_; }

  std::optional<int> finite_dimension() const { return E_.finite_dimension(); }

 private:
  AmbientSpace(StructureFunction E, InnerProductStrategy s, QuadParams qp,
               SampleParams sp);

  StructureFunction E_;
  InnerProductStrategy strategy_;
  QuadParams quad_;
  SampleParams sample_;
};

/// Reproducing kernel value k_w(z) from the A/B split,
///   k_w(z) = (conj(A(w)) B(z) - conj(B(w)) A(z)) / (pi (z - conj w)),
/// with the removable singularity at z = conj(w) resolved by the Wronskian
/// limit (central differences, step 1e-4 (1+|z|)).
cplx kernel_value(const AmbientSpace& space, cplx w, cplx z);

/// One kernel section: anchor, evaluator, and the (real, nonnegative)
/// diagonal value k_w(w).
struct KernelSection {
  cplx anchor;
  double diag = 0.0;
  Evaluator eval;

  cplx operator()(cplx z) const { return eval(z); }
};

KernelSection kernel(const AmbientSpace& space, cplx w);

/// The A and B evaluators for E (E = A - iB).
std::pair<Evaluator, Evaluator> ab_split(const StructureFunction& E);

struct InnerProductResult {
  cplx value{0.0, 0.0};
  double tail_estimate = 0.0;
  bool low_confidence = false;
};

InnerProductResult inner_product(const AmbientSpace& space, const Evaluator& F,
                                 const Evaluator& G);
/// Overrides for the per-call accuracy/cost trade-off.
InnerProductResult inner_product(const AmbientSpace& space, const Evaluator& F,
                                 const Evaluator& G, const SampleParams& sp);
InnerProductResult inner_product(const AmbientSpace& space, const Evaluator& F,
                                 const Evaluator& G, const QuadParams& qp);

/// All real t in [lo, hi] with phi(t) = alpha (mod pi), sorted ascending.
/// These are the de Branges orthogonal-basis points for the angle alpha.
std::vector<double> basis_points(const AmbientSpace& space, double alpha,
                                 double lo, double hi);

enum class MembershipVerdict { plausible, implausible };

/// Sampled stand-in for the H^2 membership conditions: finite weighted norm
/// with a decaying tail on the axis, and bounded growth of |F/E| up the
/// imaginary axis. Heuristic by construction; it can only gather evidence.
struct MembershipReport {
  MembershipVerdict verdict = MembershipVerdict::implausible;
  double margin = 0.0;        // worst of the individual margins; >0 passes
  double growth_slope = 0.0;  // d/dy log |F(iy)/E(iy)|, fitted
  double tail_exponent = 0.0; // fitted decay power of the norm integrand
  bool norm_diverging = false;
};

/// Probe ranges for membership_heuristic. Callers working with truncated
/// products shrink these to the region where the truncation is faithful.
struct MembershipProbeParams {
  double axis_span = 200.0;   // scan |t| <= span on the real axis
  double growth_y_max = 50.0; // probe |F/E| on iy up to this height
};

MembershipReport membership_heuristic(const AmbientSpace& space,
                                      const Evaluator& F,
                                      const MembershipProbeParams& probes = {});

}  // namespace kcomp
