#pragma once

#include <vector>

#include "kcomp/common.hpp"
#include "kcomp/nodes.hpp"

namespace kcomp {

/// Canonical product G(z) = prod (1 - z/lambda) e^{Re(1/lambda) z} over the
/// nodes with |lambda| <= truncation radius. A node at 0 contributes a plain
/// factor z. Construction is refused when the Blaschke sum over the nodes is
/// divergent.
class CanonicalProduct {
 public:
  explicit CanonicalProduct(const NodeSequence& seq);

  cplx operator()(cplx z) const;

  /// Heuristic a-posteriori truncation residual at z:
  /// |last included factor - 1| * included count.
  double truncation_residual(cplx z) const;

  std::size_t factor_count() const { return nodes_.size() + zero_count_; }
  const std::vector<cplx>& nodes() const { return nodes_; }

 private:
  std::vector<cplx> nodes_;   // nonzero nodes within radius, by modulus
  std::size_t zero_count_ = 0;
  double exp_coeff_ = 0.0;    // sum of Re(1/lambda)
};

/// Radius-ordered partial products prod_{|lambda|<R} (1 - z/lambda), the
/// symmetric-limit form. Convergence is judged by comparing the last two
/// partial values.
class SymmetricProduct {
 public:
  SymmetricProduct(const NodeSequence& seq, std::vector<double> radii,
                   double rel_tol = 1e-3);

  struct Result {
    cplx value{1.0, 0.0};
    bool converged = true;
    std::vector<cplx> partials;  // one per radius
  };

  Result evaluate(cplx z) const;
  cplx operator()(cplx z) const { return evaluate(z).value; }

  /// Evaluator for G(z)/(z - mu) with mu one of the nodes: the vanishing
  /// factor is divided out analytically, so the result is total.
  Evaluator divided_by_root(cplx mu) const;

  /// Product over the largest radius with one node excluded, times the given
  /// prefactor (helper for divided_by_root; exposed for tests).
  cplx product_excluding(cplx z, cplx mu) const;

 private:
  std::vector<cplx> nodes_;  // by modulus
  std::vector<double> radii_;
  double rel_tol_;
  bool has_zero_node_ = false;
};

}  // namespace kcomp
