#pragma once

// Complex quadratic forms on phase space R^n_x x R^n_xi and their Hamilton
// maps. Coordinates are ordered (x_1..x_n, xi_1..xi_n) and the coefficient
// convention is q(X) = X^T Q X, so the polar form is q(X;Y) = X^T Q Y and the
// Hamilton map is exactly F = J Q.

#include "qsemi/linalg.hpp"

namespace qsemi {

/// A point of phase space R^{2n}.
class PhasePoint {
 public:
  explicit PhasePoint(RVec coords);
  PhasePoint(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  const RVec& coords() const { return coords_; }

 private:
  RVec coords_;
};

class ComplexQuadraticForm {
 public:
  /// Validates that Q is 2n x 2n and symmetric to 1e-12 (1 + ||Q||), then
  /// stores the exactly symmetrized matrix. Throws std::invalid_argument.
  ComplexQuadraticForm(int n, CMat q);

  /// Builds from real and imaginary coefficient matrices.
  static ComplexQuadraticForm from_parts(const RMat& re, const RMat& im);
  static ComplexQuadraticForm zero(int n);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const CMat& matrix() const { return q_; }
  RMat re() const { return q_.real(); }
  RMat im() const { return q_.imag(); }

  /// Re q and Im q as forms in their own right.
  ComplexQuadraticForm real_part() const;
  ComplexQuadraticForm imag_part() const;

  /// The form X -> q(M X) for a real 2n x 2n change of coordinates M.
  ComplexQuadraticForm pullback(const RMat& m) const;

  ComplexQuadraticForm operator*(cplx s) const;
  ComplexQuadraticForm operator+(const ComplexQuadraticForm& other) const;

  double norm() const;

 private:
  int n_;
  CMat q_;
};

/// F with sigma(X, F Y) = q(X;Y); skew-symmetric with respect to sigma.
class HamiltonMap {
 public:
  explicit HamiltonMap(CMat f) : f_(std::move(f)) {}

  const CMat& matrix() const { return f_; }
  RMat re() const { return f_.real(); }
  RMat im() const { return f_.imag(); }
  int dim() const { return static_cast<int>(f_.rows()); }

  /// The quadratic form whose Hamilton map this is: Q = -J F, symmetrized.
  ComplexQuadraticForm form() const;

 private:
  CMat f_;
};

/// q(X) = X^T Q X. Throws std::invalid_argument on dimension mismatch.
cplx evaluate(const ComplexQuadraticForm& form, const PhasePoint& x);
cplx evaluate(const ComplexQuadraticForm& form, const RVec& x);

/// Polar form q(X;Y) = X^T Q Y.
cplx polar(const ComplexQuadraticForm& form, const RVec& x, const RVec& y);

HamiltonMap hamilton_map(const ComplexQuadraticForm& form);

/// {f1, f2} = df1/dxi . df2/dx - df1/dx . df2/dxi, a quadratic form whose
/// Hamilton map is -2 [F1, F2].
ComplexQuadraticForm poisson_bracket(const ComplexQuadraticForm& f1,
                                     const ComplexQuadraticForm& f2);

}  // namespace qsemi
