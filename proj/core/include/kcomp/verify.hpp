#pragma once

#include <string>
#include <vector>

#include "kcomp/common.hpp"
#include "kcomp/nodes.hpp"
#include "kcomp/restricted.hpp"
#include "kcomp/structure.hpp"

namespace kcomp {

/// The three conditions of the completeness/minimality criterion for the
/// generating function G of the union node set. Condition 3 is checked by
/// falsification probes only and is always labeled heuristic.
struct Prop1Report {
  bool cond1_converged = false;
  std::vector<cplx> cond1_partials;  // partial products at the test point

  struct Cond2Item {
    cplx mu;
    double margin = 0.0;
    bool pass = false;
  };
  std::vector<Cond2Item> cond2;
  bool cond2_pass = false;

  int cond3_probe_count = 0;
  bool cond3_violation = false;
  std::string cond3_probe_hit;  // description of the violating probe, if any
  std::string cond3_label;      // always contains "heuristic"

  bool windowed = false;  // the union was truncated to a finite window

  bool pass() const { return cond1_converged && cond2_pass && !cond3_violation; }
};

struct Prop1Params {
  /// Windowed radius the union was truncated at; 0 means the union is exact.
  double window_radius = 0.0;
  cplx test_point{0.31, 0.27};
  double symmetric_rel_tol = 1e-3;
};

Prop1Report prop1_check(const AmbientSpace& space, const NodeSequence& union_nodes,
                        const Prop1Params& params = {});

struct MinimalityReport {
  /// Least-squares defect of a unit-norm kappa-span element vanishing on S;
  /// near 1 means S is plausibly a uniqueness set, near 0 is a violation.
  double uniqueness_residual = 0.0;
  /// "pass" (> 0.5), "fail" (< 1e-3), or "inconclusive".
  std::string uniqueness_verdict;

  struct Witness {
    double s0 = 0.0;
    double value_at_s0 = 0.0;   // |witness(s0)| after unit normalization
    double max_off_value = 0.0; // largest |witness| over S \ {s0}
    bool pass = false;
  };
  std::vector<Witness> witnesses;
  bool minimality_pass = false;
};

/// Proposition-2-style check: S must be a minimal uniqueness set for the
/// restricted space. x0 is the completion anchor (an element of S).
MinimalityReport minimal_uniqueness(const RestrictedSpace& rs,
                                    const std::vector<double>& s, double x0);

/// max over probes of |sum_s |T(s)|^2 / kappa(s,s) - ||T||^2| / ||T||^2,
/// with the kernel-algebra norm; 0/0 counts as 0.
double parseval_defect(const RestrictedSpace& rs, const std::vector<double>& s,
                       const std::vector<KappaCombination>& probes);

struct RankReport {
  int dim = 0;
  int full_rank = 0;
  std::vector<int> leave_one_out;  // one entry per point of Lambda ∪ S
  bool complete_and_minimal = false;
};

/// Independent brute-force check for polynomial-type E (dim = number of
/// zeros): monomial basis, quadrature Gram, SVD ranks of the collocation
/// matrix and its leave-one-out submatrices.
RankReport finite_dim_oracle(const StructureFunction& E_poly, const NodeSequence& lambda,
                             const std::vector<double>& s);

/// Squared distance from the kernel section k_mu to the span of the ambient
/// kernels at the first t points of Lambda ∪ S ordered by modulus, one
/// entry per requested truncation t. Nonincreasing in t.
std::vector<double> completeness_residual(const RestrictedSpace& rs,
                                          const std::vector<double>& s, cplx mu,
                                          const std::vector<int>& truncations);

}  // namespace kcomp
