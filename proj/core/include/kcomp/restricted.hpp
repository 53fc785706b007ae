#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcomp/common.hpp"
#include "kcomp/nodes.hpp"
#include "kcomp/products.hpp"
#include "kcomp/space.hpp"

namespace kcomp {

/// A finite linear combination sum_i coeffs[i] * kappa(. , points[i]) of
/// restricted-kernel sections. Carrying the combination symbolically lets
/// norms and Parseval sums use the reproducing-kernel algebra exactly.
struct KappaCombination {
  std::vector<cplx> points;
  std::vector<cplx> coeffs;
};

/// A cached section z -> kappa(z, w): the Gram solve for w is done once.
class KappaSection;

/// The restriction H_{Lambda} of an ambient H(E): functions T entire with
/// G_Lambda T in H(E), realized through the Gram factorization of the
/// kernels at Lambda and the canonical product G_Lambda.
class RestrictedSpace {
 public:
  /// Assembles and factorizes the Gram matrix k_{lambda_j}(lambda_i).
  /// Near-singular Grams get a ridge 1e-12 trace/n and a loud warning; the
  /// build fails only if the factorization still breaks, naming the most
  /// nearly dependent node pair.
  static RestrictedSpace build(AmbientSpace ambient, NodeSequence seq,
                               double cond_threshold = 1e12,
                               double ridge_scale = 1e-12);

  const AmbientSpace& ambient() const { return impl_->ambient; }
  const NodeSequence& nodes() const { return impl_->seq; }
  /// The nodes actually used (within the truncation radius), by modulus.
  const std::vector<cplx>& lambda() const { return impl_->lambda; }
  const Eigen::MatrixXcd& gram() const { return impl_->gram; }
  double condition_number() const { return impl_->condition_number; }
  bool ridge_applied() const { return impl_->ridge_applied; }
  const std::string& warning() const { return impl_->warning; }
  /// Residual ||G - L L*|| / ||G|| of the Cholesky factorization.
  double factorization_residual() const;

  /// G_Lambda evaluated at z.
  cplx g_lambda(cplx z) const;

  /// K_perp(z, w) = K(z, w) - sum_{ij} k_{lambda_j}(z) (G^-1)_{ji}
  /// conj(k_{lambda_i}(w)), via triangular solves.
  cplx complement_kernel(cplx z, cplx w) const;

  /// kappa(z, w) = K_perp(z, w) / (G_Lambda(z) conj(G_Lambda(w))). Arguments
  /// within 1e-6 (1+|lambda|) of a node are evaluated by the circle-mean
  /// rule (radius 1e-3 (1+|lambda|), 16 trapezoid points, convergence
  /// checked by halving the radius once).
  cplx kappa(cplx z, cplx w) const;

  /// kappa(x, x) as a real value (asserts the imaginary residue is small).
  double kappa_diag(double x) const;

  KappaSection kappa_section(cplx w) const;

  /// Evaluator for the ambient image G_Lambda * T of a kappa-combination,
  /// written in the cancelled form sum c_i K_perp(z, w_i)/conj(G(w_i)) that
  /// stays finite where G_Lambda is astronomically large.
  Evaluator ambient_image(const KappaCombination& combo) const;

  /// <T1, T2> in the restricted norm via the kernel algebra (exact up to
  /// the kernel evaluations themselves).
  cplx restricted_inner(const KappaCombination& t1, const KappaCombination& t2) const;

  cplx evaluate(const KappaCombination& combo, cplx z) const;

  /// Norm pair (||F||, ||F (z - conj w0)/(z - w0)||) in the restricted norm
  /// computed by ambient integration of both images. Precondition:
  /// F(w0) ~ 0.
  std::pair<double, double> blaschke_invariance_check(const KappaCombination& F,
                                                      cplx w0) const;
  /// Same for a caller-supplied entire evaluator T; the image G_Lambda * T
  /// is formed directly (suitable for small Lambda).
  std::pair<double, double> blaschke_invariance_check(const Evaluator& T,
                                                      cplx w0) const;

 private:
  /// Cancellation-free complement model for finite-dimensional ambients:
  /// the orthogonal complement of span{k_lambda} is spanned by
  /// psi_t(z) = P(z) z^t with P(z) = prod(z - lambda), t < m, and its Gram
  /// is assembled from exact moment integrals of 1/|E|^2 (residue calculus).
  /// Evaluating the complement kernel through this basis avoids the
  /// catastrophic cancellation of the Schur-complement formula when the
  /// node Gram is ill-conditioned.
  struct FinDimModel {
    int m = 0;                         // complement dimension
    Eigen::MatrixXcd gram;             // M_{st} = <psi_s, psi_t>
    Eigen::LLT<Eigen::MatrixXcd> llt;  // factorization of gram
  };

  struct Impl {
    AmbientSpace ambient;
    NodeSequence seq;
    std::vector<cplx> lambda;  // by modulus
    Eigen::MatrixXcd gram;
    Eigen::LLT<Eigen::MatrixXcd> llt;
    std::unique_ptr<CanonicalProduct> product;  // null for empty Lambda
    std::unique_ptr<FinDimModel> findim;        // null unless dim H(E) finite
    double condition_number = 1.0;
    bool ridge_applied = false;
    std::string warning;

    Impl(AmbientSpace a, NodeSequence s) : ambient(std::move(a)), seq(std::move(s)) {}
    Eigen::VectorXcd kernel_vector(cplx z) const;  // entries k_{lambda_j}(z)
    Eigen::VectorXcd psi_vector(cplx z) const;     // entries psi_t(z)
  };

  explicit RestrictedSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  cplx kappa_direct(cplx z, cplx w) const;
  cplx circle_mean_z(cplx z, cplx w) const;

  std::shared_ptr<const Impl> impl_;

  friend class KappaSection;
};

class KappaSection {
 public:
  cplx operator()(cplx z) const;
  cplx anchor() const { return w_; }
  double diag() const { return diag_; }

  /// Normalized real-axis value kappa(x, w) / sqrt(kappa(x, x) kappa(w, w)),
  /// bounded by 1 and scale-free, so zero scans are immune to exponential
  /// growth or decay of the raw section. Returns NaN where the local scale
  /// underflows (no sign information); throws when the imaginary residue of
  /// the normalized value is non-negligible.
  double correlation(double x) const;

 private:
  friend class RestrictedSpace;
  RestrictedSpace rs_;  // shares the impl; cheap copy
  cplx w_;
  Eigen::VectorXcd solved_;  // G^-1 conj(kernel_vector(w))
  cplx denom_w_;             // conj(G_Lambda(w))
  double diag_ = 0.0;

  KappaSection(RestrictedSpace rs, cplx w);
  cplx direct(cplx z) const;
};

}  // namespace kcomp
