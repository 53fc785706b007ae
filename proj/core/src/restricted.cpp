#include "kcomp/restricted.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace kcomp {

namespace {

constexpr double kNodeGate = 1e-6;    // proximity gate, scaled by 1+|p|
constexpr int kCirclePoints = 16;

bool near_any(const std::vector<cplx>& nodes, cplx p, double* node_abs = nullptr) {
  for (const cplx& q : nodes) {
    if (std::abs(p - q) < kNodeGate * (1.0 + std::abs(q))) {
      if (node_abs) *node_abs = std::abs(q);
      return true;
    }
  }
  return false;
}

// Taylor coefficients of the polynomial `coef` (ascending) about w, via
// repeated synthetic division.
std::vector<cplx> taylor_shift(std::vector<cplx> coef, cplx w) {
  const std::size_t n = coef.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // One synthetic division by (z - w): remainder is the next coefficient.
    cplx rem = coef.back();
    for (std::size_t i = coef.size() - 1; i-- > 0;) {
      const cplx tmp = coef[i];
      coef[i] = rem;
      rem = tmp + rem * w;
    }
    out[k] = rem;
    coef.pop_back();
    if (coef.empty()) {
      for (std::size_t r = k + 1; r < n; ++r) out[r] = cplx(0.0, 0.0);
      break;
    }
  }
  return out;
}

// Moments mu_s = int x^s / |E(x)|^2 dx, s = 0..smax, for a polynomial-type
// structure function, by closing the contour in the upper half-plane: the
// poles are the conjugated zeros of E, with matching multiplicities.
std::vector<double> weight_moments(const std::vector<cplx>& ezeros, int smax) {
  // Q(z) = prod_k (z - z_k)(z - conj z_k), ascending coefficients.
  std::vector<cplx> q{1.0};
  for (const cplx& zk : ezeros) {
    for (const cplx root : {zk, std::conj(zk)}) {
      q.insert(q.begin(), cplx(0.0, 0.0));
      for (std::size_t i = 0; i + 1 < q.size(); ++i) q[i] -= root * q[i + 1];
    }
  }
  // Group equal poles to get multiplicities.
  std::vector<std::pair<cplx, int>> poles;
  for (const cplx& zk : ezeros) {
    const cplx w = std::conj(zk);
    bool found = false;
    for (auto& p : poles) {
      if (p.first == w) {
        ++p.second;
        found = true;
      }
    }
    if (!found) poles.emplace_back(w, 1);
  }
  std::vector<double> mu(static_cast<std::size_t>(smax) + 1, 0.0);
  for (int s = 0; s <= smax; ++s) {
    cplx acc(0.0, 0.0);
    for (const auto& [w, p] : poles) {
      const std::vector<cplx> qt = taylor_shift(q, w);
      // Series of z^s about w, then divide by Q(w+u)/u^p to order p-1; the
      // residue is the coefficient of u^{p-1}.
      std::vector<cplx> num(static_cast<std::size_t>(p), cplx(0.0, 0.0));
      cplx binom(1.0, 0.0);
      cplx wpow = std::pow(w, s);
      for (int r = 0; r < p && r <= s; ++r) {
        num[static_cast<std::size_t>(r)] = binom * wpow;
        binom *= static_cast<double>(s - r) / static_cast<double>(r + 1);
        wpow = (w == cplx(0.0, 0.0)) ? std::pow(w, s - r - 1) : wpow / w;
      }
      std::vector<cplx> d(static_cast<std::size_t>(p));
      for (int r = 0; r < p; ++r) {
        cplx v = num[static_cast<std::size_t>(r)];
        for (int t = 1; t <= r; ++t) {
          v -= qt[static_cast<std::size_t>(p + t)] * d[static_cast<std::size_t>(r - t)];
        }
        d[static_cast<std::size_t>(r)] = v / qt[static_cast<std::size_t>(p)];
      }
      acc += d[static_cast<std::size_t>(p - 1)];
    }
    const cplx val = cplx(0.0, 2.0 * kPi) * acc;
    if (std::abs(val.imag()) > 1e-8 * (1.0 + std::abs(val))) {
      throw NumericalError("RestrictedSpace: weight moment came out non-real");
    }
    mu[static_cast<std::size_t>(s)] = val.real();
  }
  return mu;
}

}  // namespace

Eigen::VectorXcd RestrictedSpace::Impl::kernel_vector(cplx z) const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(lambda.size()));
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    v[j] = kernel_value(ambient, lambda[j], z);
  }
  return v;
}

Eigen::VectorXcd RestrictedSpace::Impl::psi_vector(cplx z) const {
  cplx p(1.0, 0.0);
  for (const cplx& lam : lambda) p *= z - lam;
  Eigen::VectorXcd v(findim->m);
  cplx zp(1.0, 0.0);
  for (int t = 0; t < findim->m; ++t) {
    v[t] = p * zp;
    zp *= z;
  }
  return v;
}

RestrictedSpace RestrictedSpace::build(AmbientSpace ambient, NodeSequence seq,
                                       double cond_threshold, double ridge_scale) {
  seq.validate();
  auto impl = std::make_shared<Impl>(std::move(ambient), std::move(seq));

  const double radius = impl->seq.truncation_radius.value_or(
      std::numeric_limits<double>::infinity());
  for (const cplx& lam : impl->seq.nodes_by_modulus()) {
    if (std::abs(lam) > radius) break;
    impl->lambda.push_back(lam);
  }

  if (const auto dim = impl->ambient.finite_dimension()) {
    if (static_cast<int>(impl->lambda.size()) >= *dim) {
      std::ostringstream os;
      os << "RestrictedSpace: " << impl->lambda.size()
         << " nodes cannot be incomplete in a space of dimension " << *dim;
      throw ValidationError(os.str());
    }
  }

  // Divergent Blaschke sums mean the canonical product does not exist and
  // the whole construction is refused (this also guards the Gram assembly
  // against absurdly long node lists).
  std::vector<cplx> nonzero;
  for (const cplx& lam : impl->lambda) {
    if (lam != cplx(0.0, 0.0)) nonzero.push_back(lam);
  }
  if (!nonzero.empty()) {
    NodeSequence sub;
    sub.nodes = nonzero;
    const BlaschkeReport rep = blaschke_sum(sub, nonzero.size());
    if (rep.verdict == BlaschkeVerdict::divergent) {
      std::ostringstream os;
      os << "RestrictedSpace: Blaschke sum divergent (partial sum "
         << rep.total() << " over " << nonzero.size()
         << " nodes); no canonical product exists";
      throw NumericalError(os.str());
    }
  }
  if (!impl->lambda.empty()) {
    NodeSequence clipped;
    clipped.nodes = impl->lambda;
    impl->product = std::make_unique<CanonicalProduct>(clipped);
  }

  const Eigen::Index n = static_cast<Eigen::Index>(impl->lambda.size());
  impl->gram.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      impl->gram(i, j) = kernel_value(impl->ambient, impl->lambda[j], impl->lambda[i]);
    }
  }

  if (n > 0) {
    const double scale = impl->gram.cwiseAbs().maxCoeff();
    const double herm = (impl->gram - impl->gram.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12 * (scale + 1e-300)) {
      throw NumericalError("RestrictedSpace: Gram matrix is not Hermitian within tolerance");
    }
    impl->gram = 0.5 * (impl->gram + impl->gram.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(impl->gram,
                                                       Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    impl->condition_number =
        lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();

    if (!(impl->condition_number < cond_threshold)) {
      const double ridge = ridge_scale * impl->gram.real().trace() / static_cast<double>(n);
      impl->gram += ridge * Eigen::MatrixXcd::Identity(n, n);
      impl->ridge_applied = true;
      impl->condition_number = (lmax + ridge) / (lmin + ridge);
      std::ostringstream os;
      os << "near-minimality warning: Gram condition number above " << cond_threshold
         << "; ridge " << ridge << " applied, Lambda is numerically close to non-minimal";
      impl->warning = os.str();
    }

    impl->llt.compute(impl->gram);
    if (impl->llt.info() != Eigen::Success) {
      // Name the most nearly dependent pair for the diagnostic.
      Eigen::Index bi = 0, bj = 1;
      double best = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          const double c = std::abs(impl->gram(i, j)) /
                           std::sqrt(std::abs(impl->gram(i, i)) *
                                     std::abs(impl->gram(j, j)));
          if (c > best) {
            best = c;
            bi = i;
            bj = j;
          }
        }
      }
      std::ostringstream os;
      os << "RestrictedSpace: kernels nearly dependent, factorization failed; "
            "worst pair lambda["
         << bi << "] = (" << impl->lambda[bi].real() << ", " << impl->lambda[bi].imag()
         << ") and lambda[" << bj << "] = (" << impl->lambda[bj].real() << ", "
         << impl->lambda[bj].imag() << ") with coherence " << best;
      throw NumericalError(os.str());
    }
  }

  if (const auto dim = impl->ambient.finite_dimension(); dim && n > 0) {
    auto fd = std::make_unique<FinDimModel>();
    fd->m = *dim - static_cast<int>(n);
    const int nn = *dim;
    const auto mu = weight_moments(impl->ambient.structure().zeros(), 2 * nn - 2);
    Eigen::MatrixXd mom(nn, nn);
    for (int a = 0; a < nn; ++a) {
      for (int b = 0; b < nn; ++b) mom(a, b) = mu[static_cast<std::size_t>(a + b)];
    }
    // Rows of C are the coefficients of psi_t = P z^t, P = prod(z - lambda).
    std::vector<cplx> pc{1.0};
    for (const cplx& lam : impl->lambda) {
      pc.insert(pc.begin(), cplx(0.0, 0.0));
      for (std::size_t i = 0; i + 1 < pc.size(); ++i) pc[i] -= lam * pc[i + 1];
    }
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(fd->m, nn);
    for (int t = 0; t < fd->m; ++t) {
      for (std::size_t a = 0; a < pc.size(); ++a) {
        c(t, static_cast<int>(a) + t) = pc[a];
      }
    }
    fd->gram = c * mom * c.adjoint();
    fd->gram = (0.5 * (fd->gram + fd->gram.adjoint())).eval();
    fd->llt.compute(fd->gram);
    if (fd->llt.info() != Eigen::Success) {
      throw NumericalError(
          "RestrictedSpace: complement Gram of the finite-dimensional model "
          "is not positive definite");
    }
    impl->findim = std::move(fd);
  }

  return RestrictedSpace(std::move(impl));
}

double RestrictedSpace::factorization_residual() const {
  const Eigen::Index n = impl_->gram.rows();
  if (n == 0) return 0.0;
  const Eigen::MatrixXcd l = impl_->llt.matrixL();
  const double num = (impl_->gram - l * l.adjoint()).norm();
  return num / (impl_->gram.norm() + 1e-300);
}

cplx RestrictedSpace::g_lambda(cplx z) const {
  if (!impl_->product) return cplx(1.0, 0.0);
  return (*impl_->product)(z);
}

cplx RestrictedSpace::complement_kernel(cplx z, cplx w) const {
  if (impl_->findim) {
    const Eigen::VectorXcd pz = impl_->psi_vector(z);
    const Eigen::VectorXcd y = impl_->findim->llt.solve(impl_->psi_vector(w));
    return (pz.transpose() * y.conjugate())(0, 0);
  }
  const cplx k = kernel_value(impl_->ambient, w, z);
  if (impl_->lambda.empty()) return k;
  const Eigen::VectorXcd a = impl_->kernel_vector(z);
  const Eigen::VectorXcd b = impl_->kernel_vector(w).conjugate();
  const Eigen::VectorXcd y = impl_->llt.solve(b);
  return k - (a.transpose() * y)(0, 0);
}

cplx RestrictedSpace::kappa_direct(cplx z, cplx w) const {
  return complement_kernel(z, w) / (g_lambda(z) * std::conj(g_lambda(w)));
}

namespace {

// Circle mean with one radius-halving convergence check; f must be analytic
// (or anti-analytic) near the center.
cplx circle_mean(const std::function<cplx(cplx)>& f, cplx center, double eps) {
  auto mean_at = [&](double r) {
    cplx acc(0.0, 0.0);
    for (int k = 0; k < kCirclePoints; ++k) {
      const double th = 2.0 * kPi * k / kCirclePoints;
      acc += f(center + r * cplx(std::cos(th), std::sin(th)));
    }
    return acc / static_cast<double>(kCirclePoints);
  };
  const cplx m1 = mean_at(eps);
  const cplx m2 = mean_at(eps / 2.0);
  if (std::abs(m1 - m2) > 1e-4 * (std::abs(m2) + 1e-12)) {
    throw NumericalError("kappa: circle-mean evaluation did not converge across two radii");
  }
  return m2;
}

}  // namespace

cplx RestrictedSpace::circle_mean_z(cplx z, cplx w) const {
  const double eps = 1e-3 * (1.0 + std::abs(z));
  return circle_mean([&](cplx zz) {
    if (near_any(impl_->lambda, w)) {
      const double ew = 1e-3 * (1.0 + std::abs(w));
      return circle_mean([&](cplx ww) { return kappa_direct(zz, ww); }, w, ew);
    }
    return kappa_direct(zz, w);
  }, z, eps);
}

cplx RestrictedSpace::kappa(cplx z, cplx w) const {
  if (near_any(impl_->lambda, z)) return circle_mean_z(z, w);
  if (near_any(impl_->lambda, w)) {
    const double ew = 1e-3 * (1.0 + std::abs(w));
    return circle_mean([&](cplx ww) { return kappa_direct(z, ww); }, w, ew);
  }
  return kappa_direct(z, w);
}

double RestrictedSpace::kappa_diag(double x) const {
  const cplx v = kappa(cplx(x, 0.0), cplx(x, 0.0));
  if (std::abs(v.imag()) > 1e-8 * (std::abs(v) + 1.0)) {
    throw NumericalError("kappa_diag: diagonal value has a non-negligible imaginary part");
  }
  return v.real();
}

KappaSection RestrictedSpace::kappa_section(cplx w) const {
  return KappaSection(*this, w);
}

KappaSection::KappaSection(RestrictedSpace rs, cplx w) : rs_(std::move(rs)), w_(w) {
  const auto& impl = *rs_.impl_;
  if (!impl.lambda.empty()) {
    const Eigen::VectorXcd b = impl.kernel_vector(w).conjugate();
    solved_ = impl.llt.solve(b);
  }
  denom_w_ = std::conj(rs_.g_lambda(w));
  const cplx d = rs_.kappa(w, w);
  diag_ = d.real();
}

cplx KappaSection::direct(cplx z) const {
  const auto& impl = *rs_.impl_;
  cplx kp;
  if (impl.findim) {
    kp = rs_.complement_kernel(z, w_);
  } else {
    kp = kernel_value(impl.ambient, w_, z);
    if (!impl.lambda.empty()) {
      const Eigen::VectorXcd a = impl.kernel_vector(z);
      kp -= (a.transpose() * solved_)(0, 0);
    }
  }
  return kp / (rs_.g_lambda(z) * denom_w_);
}

cplx KappaSection::operator()(cplx z) const {
  const auto& impl = *rs_.impl_;
  if (near_any(impl.lambda, w_)) return rs_.kappa(z, w_);
  if (near_any(impl.lambda, z)) {
    const double eps = 1e-3 * (1.0 + std::abs(z));
    return circle_mean([&](cplx zz) { return direct(zz); }, z, eps);
  }
  return direct(z);
}

double KappaSection::correlation(double x) const {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  if (!(diag_ > 0.0) || !std::isfinite(diag_)) return kNan;
  // At the removed nodes both kappa(x, w) and kappa(x, x) vanish, so the
  // correlation carries no sign information there.
  if (near_any(rs_.impl_->lambda, cplx(x, 0.0))) return kNan;
  const double dx = rs_.kappa(cplx(x, 0.0), cplx(x, 0.0)).real();
  if (!(dx > 0.0) || !std::isfinite(dx)) return kNan;
  const double denom = std::sqrt(dx) * std::sqrt(diag_);
  if (!(denom > 1e-280) || !std::isfinite(denom)) return kNan;
  const cplx v = (*this)(cplx(x, 0.0));
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return kNan;
  const double re = v.real() / denom;
  const double im = v.imag() / denom;
  if (std::abs(im) > 1e-6 * (1.0 + std::abs(re))) {
    throw NumericalError(
        "kappa section: non-negligible imaginary residue on the real axis");
  }
  return re;
}

Evaluator RestrictedSpace::ambient_image(const KappaCombination& combo) const {
  if (combo.points.size() != combo.coeffs.size()) {
    throw ValidationError("ambient_image: points/coeffs size mismatch");
  }
  struct Term {
    cplx w;
    cplx scale;               // c_i / conj(G(w_i))
    Eigen::VectorXcd solved;  // G^-1 conj(kernel_vector(w_i))
  };
  auto terms = std::make_shared<std::vector<Term>>();
  for (std::size_t i = 0; i < combo.points.size(); ++i) {
    Term t;
    t.w = combo.points[i];
    t.scale = combo.coeffs[i] / std::conj(g_lambda(combo.points[i]));
    if (!impl_->lambda.empty()) {
      t.solved = impl_->llt.solve(impl_->kernel_vector(t.w).conjugate());
    }
    terms->push_back(std::move(t));
  }
  auto impl = impl_;
  return [impl, terms](cplx z) {
    Eigen::VectorXcd a;
    if (!impl->lambda.empty()) a = impl->kernel_vector(z);
    cplx acc(0.0, 0.0);
    for (const auto& t : *terms) {
      cplx kp = kernel_value(impl->ambient, t.w, z);
      if (a.size() > 0) kp -= (a.transpose() * t.solved)(0, 0);
      acc += t.scale * kp;
    }
    return acc;
  };
}

cplx RestrictedSpace::restricted_inner(const KappaCombination& t1,
                                       const KappaCombination& t2) const {
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < t1.points.size(); ++i) {
    for (std::size_t j = 0; j < t2.points.size(); ++j) {
      acc += t1.coeffs[i] * std::conj(t2.coeffs[j]) * kappa(t2.points[j], t1.points[i]);
    }
  }
  return acc;
}

cplx RestrictedSpace::evaluate(const KappaCombination& combo, cplx z) const {
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < combo.points.size(); ++i) {
    acc += combo.coeffs[i] * kappa(z, combo.points[i]);
  }
  return acc;
}

std::pair<double, double> RestrictedSpace::blaschke_invariance_check(
    const KappaCombination& F, cplx w0) const {
  if (w0.imag() == 0.0) {
    throw ValidationError("blaschke_invariance_check: w0 must be nonreal");
  }
  const cplx at_w0 = evaluate(F, w0);
  const double norm2 = restricted_inner(F, F).real();
  const double scale = std::sqrt(std::max(norm2, 0.0) * std::max(kappa(w0, w0).real(), 0.0));
  if (std::abs(at_w0) > 1e-6 * (scale + 1e-12)) {
    throw ValidationError("blaschke_invariance_check: F(w0) is not approximately zero");
  }
  const Evaluator img = ambient_image(F);
  const cplx cw0 = std::conj(w0);
  Evaluator shifted = [img, w0, cw0](cplx z) { return img(z) * (z - cw0) / (z - w0); };
  const double n1 = std::sqrt(std::max(inner_product(impl_->ambient, img, img).value.real(), 0.0));
  const double n2 = std::sqrt(std::max(inner_product(impl_->ambient, shifted, shifted).value.real(), 0.0));
  return {n1, n2};
}

std::pair<double, double> RestrictedSpace::blaschke_invariance_check(
    const Evaluator& T, cplx w0) const {
  if (w0.imag() == 0.0) {
    throw ValidationError("blaschke_invariance_check: w0 must be nonreal");
  }
  const cplx at_w0 = T(w0);
  auto impl = impl_;
  RestrictedSpace self = *this;
  Evaluator img = [self, T](cplx z) { return self.g_lambda(z) * T(z); };
  const double n1sq = inner_product(impl->ambient, img, img).value.real();
  const double scale = std::sqrt(std::max(n1sq, 0.0) *
                                 std::max(kappa(w0, w0).real(), 0.0));
  if (std::abs(at_w0) > 1e-6 * (scale + 1e-12)) {
    throw ValidationError("blaschke_invariance_check: F(w0) is not approximately zero");
  }
  const cplx cw0 = std::conj(w0);
  Evaluator shifted = [img, w0, cw0](cplx z) { return img(z) * (z - cw0) / (z - w0); };
  const double n2 = std::sqrt(std::max(inner_product(impl->ambient, shifted, shifted).value.real(), 0.0));
  return {std::sqrt(std::max(n1sq, 0.0)), n2};
}

}  // namespace kcomp
