#include "kcomp/products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kcomp {

namespace {

// Complex product accumulator with a separate decimal exponent so that long
// partial products cannot overflow before later factors shrink them back.
struct ScaledProduct {
  cplx mantissa{1.0, 0.0};
  double exp10 = 0.0;

  void mul(cplx f) {
    mantissa *= f;
    const double m = std::abs(mantissa);
    if (m > 1e100 || (m > 0.0 && m < 1e-100)) {
      const double shift = std::floor(std::log10(m));
      mantissa *= std::pow(10.0, -shift);
      exp10 += shift;
    }
  }

  void mul_exp(cplx w) {  // multiply by e^w
    exp10 += w.real() / std::log(10.0);
    mantissa *= cplx(std::cos(w.imag()), std::sin(w.imag()));
  }

  cplx value() const { return mantissa * std::pow(10.0, exp10); }
};

}  // namespace

CanonicalProduct::CanonicalProduct(const NodeSequence& seq) {
  seq.validate();
  const double radius = seq.truncation_radius.value_or(
      std::numeric_limits<double>::infinity());
  std::vector<cplx> nonzero;
  for (const cplx& lam : seq.nodes_by_modulus()) {
    if (std::abs(lam) > radius) break;
    if (lam == cplx(0.0, 0.0)) {
      ++zero_count_;
    } else {
      nonzero.push_back(lam);
    }
  }
  if (!nonzero.empty()) {
    NodeSequence sub;
    sub.nodes = nonzero;
    const BlaschkeReport rep = blaschke_sum(sub, nonzero.size());
    if (rep.verdict == BlaschkeVerdict::divergent) {
      throw NumericalError(
          "canonical_product: Blaschke sum divergent over the node sequence; "
          "construction refused");
    }
  }
  nodes_ = std::move(nonzero);
  // Mixed-genus convention: only the tail factors (|lambda| >= 1) carry the
  // convergence exponent e^{z Re(1/lambda)}. The finitely many small nodes
  // use plain factors, which avoids a huge spurious exponential tilt
  // e^{Re(1/lambda) z} from nodes close to the origin without changing the
  // convergence behaviour of the product.
  for (const cplx& lam : nodes_) {
    if (std::abs(lam) >= 1.0) exp_coeff_ += (1.0 / lam).real();
  }
}

cplx CanonicalProduct::operator()(cplx z) const {
  ScaledProduct p;
  for (std::size_t i = 0; i < zero_count_; ++i) p.mul(z);
  for (const cplx& lam : nodes_) p.mul(1.0 - z / lam);
  p.mul_exp(exp_coeff_ * z);
  return p.value();
}

double CanonicalProduct::truncation_residual(cplx z) const {
  if (nodes_.empty()) return 0.0;
  const cplx lam = nodes_.back();
  cplx last = 1.0 - z / lam;
  if (std::abs(lam) >= 1.0) last *= std::exp((1.0 / lam).real() * z);
  return std::abs(last - 1.0) * static_cast<double>(factor_count());
}

SymmetricProduct::SymmetricProduct(const NodeSequence& seq,
                                   std::vector<double> radii, double rel_tol)
    : radii_(std::move(radii)), rel_tol_(rel_tol) {
  seq.validate();
  if (!std::is_sorted(radii_.begin(), radii_.end())) {
    throw ValidationError("symmetric_product: radii must be increasing");
  }
  for (const cplx& lam : seq.nodes_by_modulus()) {
    if (lam == cplx(0.0, 0.0)) {
      has_zero_node_ = true;
    } else {
      nodes_.push_back(lam);
    }
  }
}

SymmetricProduct::Result SymmetricProduct::evaluate(cplx z) const {
  Result res;
  if (radii_.empty()) return res;  // empty product, trivially converged

  ScaledProduct p;
  if (has_zero_node_) p.mul(z);
  std::size_t i = 0;
  for (double r : radii_) {
    while (i < nodes_.size() && std::abs(nodes_[i]) < r) {
      p.mul(1.0 - z / nodes_[i]);
      ++i;
    }
    res.partials.push_back(p.value());
  }
  res.value = res.partials.back();
  if (res.partials.size() >= 2) {
    const cplx a = res.partials[res.partials.size() - 2];
    const cplx b = res.partials.back();
    res.converged = std::abs(b - a) <= rel_tol_ * (std::abs(b) + 1e-300) &&
                    std::isfinite(std::abs(b));
  }
  return res;
}

cplx SymmetricProduct::product_excluding(cplx z, cplx mu) const {
  const double radius = radii_.empty() ? std::numeric_limits<double>::infinity()
                                       : radii_.back();
  ScaledProduct p;
  bool skipped = false;
  if (has_zero_node_) {
    if (mu == cplx(0.0, 0.0)) {
      skipped = true;
    } else {
      p.mul(z);
    }
  }
  for (const cplx& lam : nodes_) {
    if (std::abs(lam) >= radius) break;
    if (!skipped && lam == mu) {
      skipped = true;
      continue;
    }
    p.mul(1.0 - z / lam);
  }
  if (!skipped) {
    throw ValidationError("symmetric_product: mu is not a node inside the largest radius");
  }
  return p.value();
}

Evaluator SymmetricProduct::divided_by_root(cplx mu) const {
  // (1 - z/mu)/(z - mu) = -1/mu; a zero node contributes the plain factor z,
  // so dividing it out just removes the factor.
  const cplx scale = (mu == cplx(0.0, 0.0)) ? cplx(1.0, 0.0) : -1.0 / mu;
  return [this, mu, scale](cplx z) { return scale * product_excluding(z, mu); };
}

}  // namespace kcomp
