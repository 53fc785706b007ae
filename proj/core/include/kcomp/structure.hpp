#pragma once

#include <optional>
#include <vector>

#include "kcomp/common.hpp"

namespace kcomp {

/// A Hermite-Biehler structure function presented as
///   E(z) = e^{i phase} e^{-i a z} prod_j (z - z_j),   Im z_j < 0,
/// with the derived views A = (E+E*)/2, B = (E*-E)/(2i), so E = A - iB and
/// A, B are real on the real axis.
///
/// Repeated zeros are allowed (e.g. E = (z+i)^2); front ends that require
/// distinct zeros enforce that at the input boundary.
class StructureFunction {
 public:
  StructureFunction(double type_a, std::vector<cplx> zeros, double phase);

  cplx E(cplx z) const;
  cplx Estar(cplx z) const;  // conj(E(conj z))
  cplx A(cplx z) const;
  cplx B(cplx z) const;

  double type_a() const { return type_a_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  double phase() const { return phase_; }

  /// True when E is exactly e^{-i pi z}, the Paley-Wiener structure function.
  bool is_paley_wiener() const;

  /// Dimension of H(E) when E is polynomial-type (type_a == 0); empty for
  /// infinite-dimensional spaces.
  std::optional<int> finite_dimension() const;

 private:
  void check_hermite_biehler() const;

  double type_a_;
  std::vector<cplx> zeros_;
  double phase_;
};

/// make_structure_function: validated construction (alias of the ctor).
inline StructureFunction make_structure_function(double type_a,
                                                 std::vector<cplx> zeros,
                                                 double phase) {
  return StructureFunction(type_a, std::move(zeros), phase);
}

/// Continuous phase samples phi(t) = -arg E(t) along a strictly increasing
/// grid, unwrapped by nearest-branch continuation. Throws
/// RefinementNeededError when a neighbor jump reaches pi.
std::vector<double> phase_at(const StructureFunction& E,
                             const std::vector<double>& grid);

}  // namespace kcomp
