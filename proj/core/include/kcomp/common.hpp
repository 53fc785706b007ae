#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace kcomp {

using cplx = std::complex<double>;

/// A pointwise evaluator for an entire function.
using Evaluator = std::function<cplx(cplx)>;

inline constexpr double kPi = 3.14159265358979323846;

/// Input rejected before any numerics ran (bad nodes, bad parameters).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerics broke down: divergence, singular factorization, unresolved
/// removable singularity, overflow in a place that matters.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sampling grid was too coarse to continue a phase branch; the caller
/// should refine and retry.
class RefinementNeededError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Both anchor attempts of a completion produced a large Parseval defect,
/// which is the signature of the one exceptional basis angle.
class ExceptionalAlphaError : public NumericalError {
 public:
  ExceptionalAlphaError(const std::string& msg, double first, double retry)
      : NumericalError(msg), first_defect(first), retry_defect(retry) {}
  double first_defect;
  double retry_defect;
};

}  // namespace kcomp
