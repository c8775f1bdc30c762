#pragma once

// The auxiliary form r(X) = -sum_{j=0}^{2n-1} Re q((Im F)^j X), and the order
// of the symbol along the distinguished bracket chain H_{Im q}^{2j} Re q.
//
// At a point X0 the chain order is k = 2 j0 with j0 the least index such that
// Re q((Im F)^{j0} X0) < 0. The iterated bracket there evaluates exactly to
//
//   H_{Im q}^{2 j0} Re q (X0) = 4^{j0} binom(2 j0, j0) Re q((Im F)^{j0} X0),
//
// so it is nonzero and carries the sign of Re q, i.e. it is negative.

#include <optional>

#include "qsemi/quadratic_form.hpp"
#include "qsemi/tolerances.hpp"

namespace qsemi {

struct RForm {
  RMat r;                     ///< coefficient matrix, r(X) = X^T R X
  double min_eigenvalue = 0;  ///< smallest eigenvalue of R
  bool positive_definite = false;
};

/// Requires Re Q <= 0.
RForm r_form(const ComplexQuadraticForm& form, const Tolerances& tol = {});

struct OrderResult {
  int j0 = 0;
  int k = 0;  ///< chain order 2 j0
  bool finite = false;
  cplx bracket_value{0.0, 0.0};  ///< H_{Im q}^{2 j0} Re q (X0)
  RVec point;                    ///< the point at which the order was evaluated
};

/// Iterated bracket H_{Im q}^{m} Re q as a quadratic form.
ComplexQuadraticForm iterated_bracket(const ComplexQuadraticForm& form, int m);

/// 4^j binom(2j, j): the constant relating the bracket chain to Re q((Im F)^j X).
double chain_constant(int j);

/// Requires X0 != 0 and Re Q <= 0. Throws HypothesisError if no j0 <= 2n-1 exists.
OrderResult order_at_point(const ComplexQuadraticForm& form, const RVec& x0,
                           const Tolerances& tol = {});

/// Order on the ray e^{i theta} R_+: finds a unit preimage X0 with
/// arg q(X0) = theta and evaluates order_at_point there. Requires an elliptic
/// form whose numerical range contains the ray.
OrderResult order_on_ray(const ComplexQuadraticForm& form, double theta,
                         const Tolerances& tol = {});

/// A unit vector X with arg q(X) = theta to within the sector tolerance.
RVec ray_preimage(const ComplexQuadraticForm& form, double theta, const Tolerances& tol = {});

}  // namespace qsemi
