#include "kcomp/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kcomp {

NodeSequence NodeSequence::exact(std::vector<cplx> pts) {
  NodeSequence s;
  s.nodes = std::move(pts);
  s.validate();
  return s;
}

NodeSequence NodeSequence::truncated(std::vector<cplx> pts, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("NodeSequence: truncation radius must be positive and finite");
  }
  NodeSequence s;
  s.nodes = std::move(pts);
  s.truncation_radius = radius;
  s.validate();
  return s;
}

void NodeSequence::validate() const {
  for (const cplx& p : nodes) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
      throw ValidationError("NodeSequence: every node must be finite");
    }
  }
  std::vector<cplx> sorted = nodes;
  std::sort(sorted.begin(), sorted.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw ValidationError("NodeSequence: nodes must be pairwise distinct");
    }
  }
}

std::vector<cplx> NodeSequence::nodes_by_modulus() const {
  std::vector<cplx> sorted = nodes;
  std::sort(sorted.begin(), sorted.end(), [](const cplx& a, const cplx& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return sorted;
}

bool NodeSequence::contains(cplx p, double tol) const {
  for (const cplx& q : nodes) {
    if (std::abs(q - p) <= tol) return true;
  }
  return false;
}

double NodeSequence::distance_to(cplx p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx& q : nodes) best = std::min(best, std::abs(q - p));
  return best;
}

BlaschkeReport blaschke_sum(const NodeSequence& seq, std::size_t n_terms) {
  if (n_terms < 1) throw ValidationError("blaschke_sum: n_terms must be >= 1");
  const std::vector<cplx> ordered = seq.nodes_by_modulus();
  const std::size_t n = std::min(n_terms, ordered.size());

  BlaschkeReport rep;
  rep.partial_sums.reserve(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx& lam = ordered[i];
    const double m2 = std::norm(lam);
    if (m2 == 0.0) throw ValidationError("blaschke_sum: zero node rejected");
    acc += std::abs(lam.imag()) / m2;
    rep.partial_sums.push_back(acc);
  }
  if (rep.partial_sums.empty()) {
    rep.verdict = BlaschkeVerdict::convergent;
    return rep;
  }

  const double total = rep.partial_sums.back();
  const std::size_t n10 = n / 10;
  const std::size_t n100 = n / 100;
  const double at10 = n10 >= 1 ? rep.partial_sums[n10 - 1] : 0.0;
  const double at100 = n100 >= 1 ? rep.partial_sums[n100 - 1] : 0.0;
  const double d1 = total - at10;
  const double d2 = at10 - at100;
  rep.last_decade_increment = d1;
  rep.decay_exponent = std::numeric_limits<double>::quiet_NaN();

  // Convergent when the last decade contributed essentially nothing, or when
  // the decade-over-decade ratio shows the terms decaying faster than 1/n.
  // A ratio near 1 is the harmonic signature and is flagged divergent; the
  // grey zone between stays undetermined.
  if (d1 < 1e-8) {
    rep.verdict = BlaschkeVerdict::convergent;
    return rep;
  }
  if (n10 >= 1 && total > 10.0 * at10 && at10 > 0.0) {
    rep.verdict = BlaschkeVerdict::divergent;
    return rep;
  }
  if (n >= 100 && d2 > 0.0) {
    const double p = 1.0 - std::log10(d1 / d2);
    rep.decay_exponent = p;
    if (p >= 1.2) {
      rep.verdict = BlaschkeVerdict::convergent;
    } else if (p <= 1.05) {
      rep.verdict = BlaschkeVerdict::divergent;
    } else {
      rep.verdict = BlaschkeVerdict::undetermined;
    }
    return rep;
  }
  rep.verdict = BlaschkeVerdict::undetermined;
  return rep;
}

}  // namespace kcomp
