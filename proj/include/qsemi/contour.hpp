#pragma once

// Contour-integral representation of the semigroup,
//
//   e^{sA} = (1 / 2 i pi) int_gamma e^{sz} (z - A)^{-1} dz,
//
// on a curve gamma running upward with the spectrum on its left:
//   gamma(t) = -c1 |t| + i t^m       for |t| >= t0,  m = 4n - 1,
// closed in the middle by the polyline
//   gamma(-t0) -> -b - i t0^m -> -b + i t0^m -> gamma(t0),
// so that Re gamma <= -b everywhere.

#include <array>
#include <functional>

#include "qsemi/quadratic_form.hpp"
#include "qsemi/semigroup.hpp"
#include "qsemi/tolerances.hpp"

namespace qsemi {

struct ContourSpec {
  double c1 = 1.0;
  double t0 = 0.0;
  double b = 0.0;
  int m = 3;
  double a0 = 0.0;
  /// Smallest constant with ||(z - A)^{-1}|| <= c2 (1 + |z|)^{-1/m} on the
  /// sampled curve points.
  double c2 = 0.0;
  /// Largest real part of sigma(A) minus the curve's real part at the same
  /// height (negative: spectrum strictly left of gamma).
  double separation = 0.0;

  /// gamma on an arm, |t| >= t0.
  cplx arm(double t) const;
  /// The three middle vertices gamma(-t0), -b - i t0^m, -b + i t0^m, gamma(t0).
  std::array<cplx, 4> middle() const;
};

/// Chooses b = a0/2, c1 = 1, m = 4n - 1 and searches t0 >= b/c1 so that every
/// eigenvalue of A lies left of gamma with margin >= a0/4. Requires an
/// elliptic form, Re q <= 0, Re q not identically zero, no real Hamilton
/// eigenvalues, and a truncation with negative spectral abscissa.
ContourSpec build_contour(const ComplexQuadraticForm& form, const TruncatedOperator& op);

struct ContourIntegral {
  CMat value;
  int panels = 0;
  int nodes = 0;
  double tail_parameter = 0.0;  ///< arm parameter where the tail was cut
  double tail_bound = 0.0;      ///< bound on the discarded tail
};

/// (1 / 2 i pi) int_gamma phi(z) (z - A)^{-1} dz. weight_bound(z) must bound
/// |phi(z)| on the arms; it drives tail truncation.
ContourIntegral contour_integral(const TruncatedOperator& op, const ContourSpec& contour,
                                 const std::function<cplx(cplx)>& phi,
                                 const std::function<double(cplx)>& weight_bound);

struct ContourCheck {
  CMat value;
  CMat reference;
  double relative_error = 0.0;
  ContourIntegral details;
};

/// The contour formula at time s > 0, compared with the dense exponential.
ContourCheck contour_semigroup(const TruncatedOperator& op, const ContourSpec& contour, double s);

/// (1 / 2 i pi) int_gamma (z - A)^{-1} dz / (z - 1) compared with -(I - A)^{-1}.
ContourCheck contour_lemma_check(const TruncatedOperator& op, const ContourSpec& contour);

}  // namespace qsemi
