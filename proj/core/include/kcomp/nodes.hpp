#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kcomp/common.hpp"

namespace kcomp {

/// A finite (or truncated) list of distinct complex frequency nodes.
struct NodeSequence {
  std::vector<cplx> nodes;
  /// Radius at which an infinite sequence was cut off; empty for exact
  /// finite input.
  std::optional<double> truncation_radius;

  static NodeSequence exact(std::vector<cplx> pts);
  static NodeSequence truncated(std::vector<cplx> pts, double radius);

  /// Throws ValidationError unless all nodes are finite and pairwise
  /// distinct.
  void validate() const;

  /// Nodes sorted by increasing modulus (ties by real, then imaginary
  /// part, so the order is deterministic).
  std::vector<cplx> nodes_by_modulus() const;

  bool contains(cplx p, double tol = 0.0) const;
  /// Distance from p to the nearest node (infinity when empty).
  double distance_to(cplx p) const;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
};

enum class BlaschkeVerdict { convergent, divergent, undetermined };

/// Partial sums of sum |Im(lambda)| / |lambda|^2 over nodes ordered by
/// modulus, with a Cauchy-style verdict.
struct BlaschkeReport {
  std::vector<double> partial_sums;  // nondecreasing
  BlaschkeVerdict verdict = BlaschkeVerdict::undetermined;
  /// Increment accumulated over the last decade of terms.
  double last_decade_increment = 0.0;
  /// Estimated decay exponent p of the terms (~n^-p); NaN when there were
  /// too few terms to estimate it.
  double decay_exponent = 0.0;

  double total() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

/// Partial Blaschke sums over the first n_terms nodes (by modulus).
/// Zero nodes are rejected.
BlaschkeReport blaschke_sum(const NodeSequence& seq, std::size_t n_terms);

}  // namespace kcomp
