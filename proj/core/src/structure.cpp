#include "kcomp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kcomp {

StructureFunction::StructureFunction(double type_a, std::vector<cplx> zeros,
                                     double phase)
    : type_a_(type_a), zeros_(std::move(zeros)), phase_(phase) {
  if (!(type_a_ >= 0.0) || !std::isfinite(type_a_)) {
    throw ValidationError("StructureFunction: type_a must be a nonnegative real");
  }
  if (!std::isfinite(phase_)) {
    throw ValidationError("StructureFunction: phase must be finite");
  }
  phase_ = std::fmod(phase_, 2.0 * kPi);
  if (phase_ < 0.0) phase_ += 2.0 * kPi;
  for (const cplx& z : zeros_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("StructureFunction: zeros must be finite");
    }
    if (!(z.imag() < 0.0)) {
      std::ostringstream os;
      os << "StructureFunction: zero (" << z.real() << ", " << z.imag()
         << ") is not in the open lower half-plane";
      throw ValidationError(os.str());
    }
  }
  if (type_a_ == 0.0 && zeros_.empty()) {
    throw ValidationError("StructureFunction: constant E is degenerate (H(E) would be trivial)");
  }
  check_hermite_biehler();
}

cplx StructureFunction::E(cplx z) const {
  cplx p = std::exp(cplx(0.0, phase_)) * std::exp(cplx(0.0, -type_a_) * z);
  for (const cplx& root : zeros_) p *= (z - root);
  return p;
}

cplx StructureFunction::Estar(cplx z) const { return std::conj(E(std::conj(z))); }

cplx StructureFunction::A(cplx z) const { return 0.5 * (E(z) + Estar(z)); }

cplx StructureFunction::B(cplx z) const {
  return (Estar(z) - E(z)) / cplx(0.0, 2.0);
}

bool StructureFunction::is_paley_wiener() const {
  return zeros_.empty() && phase_ == 0.0 && type_a_ == kPi;
}

std::optional<int> StructureFunction::finite_dimension() const {
  if (type_a_ == 0.0) return static_cast<int>(zeros_.size());
  return std::nullopt;
}

void StructureFunction::check_hermite_biehler() const {
  // Sampled guard, not a proof: zeros confined to the lower half-plane
  // already force |E| > |E*| above the axis for this representation. 200
  // probes on two horizontal lines catch input bugs.
  double span = 5.0;
  for (const cplx& z : zeros_) span = std::max(span, std::abs(z.real()) + 5.0);
  const int kProbes = 100;
  for (double im : {0.1, 1.0}) {
    for (int i = 0; i < kProbes; ++i) {
      const double re = -span + 2.0 * span * (i + 0.5) / kProbes;
      const cplx z(re, im);
      if (!(std::abs(E(z)) > std::abs(Estar(z)))) {
        std::ostringstream os;
        os << "StructureFunction: sampled Hermite-Biehler check failed at ("
           << re << ", " << im << ")";
        throw ValidationError(os.str());
      }
    }
  }
}

std::vector<double> phase_at(const StructureFunction& E,
                             const std::vector<double>& grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError("phase_at: grid must be strictly increasing");
    }
  }
  std::vector<double> phi;
  phi.reserve(grid.size());
  for (double t : grid) {
    const cplx e = E.E(cplx(t, 0.0));
    if (std::abs(e) == 0.0) {
      throw NumericalError("phase_at: E vanishes on the real axis");
    }
    const double principal = -std::arg(e);
    if (phi.empty()) {
      phi.push_back(principal);
      continue;
    }
    // Nearest-branch continuation; no multi-pi guessing.
    double delta = std::remainder(principal - phi.back(), 2.0 * kPi);
    if (std::abs(delta) >= kPi - 1e-12) {
      throw RefinementNeededError(
          "phase_at: neighbor jump >= pi; refine the grid");
    }
    phi.push_back(phi.back() + delta);
  }
  for (std::size_t i = 1; i < phi.size(); ++i) {
    if (!(phi[i] > phi[i - 1])) {
      throw NumericalError("phase_at: unwrapped phase is not strictly increasing");
    }
  }
  return phi;
}

}  // namespace kcomp
