#pragma once

// Ellipticity certification and the numerical range Sigma(q) = q(R^{2n}).
//
// For an elliptic form with Sigma(q) != C there is an angle theta such that
// Re(e^{i theta} q) is positive definite; Sigma(q) is then a closed sector
// with apex 0, opening < pi, contained in the half plane
// {arg z in (-theta - pi/2, -theta + pi/2)}. The only other possibility is
// Sigma(q) = C, which can happen for n = 1 only.

#include <optional>
#include <vector>

#include "qsemi/quadratic_form.hpp"
#include "qsemi/tolerances.hpp"

namespace qsemi {

class Sector {
 public:
  enum class Kind { full_plane, sector };

  static Sector full_plane();
  /// Closed sector {r e^{i t} : r >= 0, t in [theta_min, theta_max]}.
  /// theta_min == theta_max (a ray) is legal; the opening must be < pi.
  static Sector from_angles(double theta_min, double theta_max);

  Kind kind() const { return kind_; }
  bool is_full_plane() const { return kind_ == Kind::full_plane; }

  /// Boundary angles. The pair is normalized so that the bisector lies in
  /// (-pi, pi]; an endpoint may therefore exceed pi by less than pi/2.
  double theta_min() const { return theta_min_; }
  double theta_max() const { return theta_max_; }
  double opening() const { return theta_max_ - theta_min_; }
  double bisector() const { return 0.5 * (theta_min_ + theta_max_); }

  /// Signed angle of z measured from the bisector, in (-pi, pi].
  double angle_from_bisector(cplx z) const;

  /// Membership with an angular slack (radians); 0 is always a member.
  bool contains(cplx z, double angle_tol = 0.0) const;

  /// Euclidean distance from z to the sector.
  double distance(cplx z) const;

  /// True if arg z is within angle_tol of one of the boundary rays.
  bool on_boundary(cplx z, double angle_tol) const;

 private:
  Sector(Kind kind, double lo, double hi) : kind_(kind), theta_min_(lo), theta_max_(hi) {}
  Kind kind_;
  double theta_min_;
  double theta_max_;
};

struct EllipticityCertificate {
  enum class Verdict { elliptic, not_elliptic, indeterminate };

  Verdict verdict = Verdict::indeterminate;
  /// theta with Re(e^{i theta} Q) positive definite, in (-pi, pi]. Present
  /// iff elliptic and Sigma(q) != C.
  std::optional<double> witness_angle;
  /// max over theta of the smallest eigenvalue of Re(e^{i theta} Q).
  double witness_margin = 0.0;
  /// min |q(X)| over the sampled (and locally refined) unit sphere.
  double min_modulus = 0.0;

  bool elliptic() const { return verdict == Verdict::elliptic; }
};

EllipticityCertificate check_elliptic(const ComplexQuadraticForm& form,
                                      const Tolerances& tol = {});

/// Sigma(q) for an elliptic form. Throws HypothesisError for non-elliptic
/// input and NumericalError for an indeterminate verdict.
Sector numerical_range(const ComplexQuadraticForm& form, const Tolerances& tol = {});

/// Same, reusing an existing certificate.
Sector numerical_range(const ComplexQuadraticForm& form, const EllipticityCertificate& cert);

/// Deterministic quasi-random points on the unit sphere of R^dim (Halton
/// sequence pushed through Box-Muller), augmented with the coordinate axes,
/// the diagonals (e_i +- e_j)/sqrt 2 and, for dim = 2, a uniform circle grid.
std::vector<RVec> sphere_samples(int dim, std::size_t count);

/// Default sample count: at least 10^4 per phase-space dimension.
std::size_t default_sample_count(int dim);

/// Local projected-gradient ascent of a smooth function on the unit sphere.
/// Returns the improved point; never returns a point with a lower value.
RVec sphere_ascent(const std::function<double(const RVec&)>& f,
                   const std::function<RVec(const RVec&)>& grad, RVec x0, int max_iter = 400);

}  // namespace qsemi
