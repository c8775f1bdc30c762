#pragma once

// Norms of e^{tA} and of the resolvent (A - z)^{-1} for a truncated operator A.

#include <vector>

#include "qsemi/weyl.hpp"

namespace qsemi {

/// Largest real part of the eigenvalues of A.
double spectral_abscissa(const CMat& a);

/// e^{tA} (Pade scaling and squaring).
CMat matrix_exponential(const CMat& a, double t);

struct NormProfile {
  std::vector<double> times;
  std::vector<double> norms;
  /// Least-squares slope of log ||e^{tA}|| over the second half of the window.
  double fitted_slope = 0.0;
  /// max over consecutive samples of ||E(t+d) - E(t)E(d)|| / (||E(t)|| ||E(d)||).
  double semigroup_residual = 0.0;
};

/// Samples t_i = i t_max / steps, i = 0..steps. Throws NumericalError if the
/// semigroup residual exceeds 1e-8.
NormProfile semigroup_profile(const TruncatedOperator& op, double t_max, int steps);

/// Least-squares slope of log(norm) against t for t in [t_from, t_to].
double fit_log_slope(const std::vector<double>& times, const std::vector<double>& norms,
                     double t_from, double t_to);

/// 1 / sigma_min(A - z), +infinity when A - z is singular.
double resolvent_norm(const TruncatedOperator& op, cplx z);

/// Repeated resolvent evaluation. Small matrices use a dense SVD per point;
/// larger ones reuse a complex Schur form A = U T U^* and work with the
/// triangular T - z (exact shortcut when T is diagonal, i.e. A is normal).
class ResolventEvaluator {
 public:
  explicit ResolventEvaluator(const CMat& a);

  double norm(cplx z) const;

  /// (z - A)^{-1} in the Schur basis, i.e. (z - T)^{-1}.
  CMat schur_resolvent(cplx z) const;
  const CMat& schur_vectors() const { return u_; }
  const CMat& schur_form() const { return t_; }
  bool normal() const { return diagonal_; }

 private:
  CMat a_;
  CMat u_, t_;
  bool diagonal_ = false;
  bool dense_ = true;
};

struct Window {
  double re_min, re_max, im_min, im_max;
};

struct ResolventGrid {
  int nx = 0, ny = 0;
  std::vector<cplx> z;         ///< row-major: im index outer, re index inner
  std::vector<double> values;  ///< resolvent norms
};

/// Grid points are evaluated independently (in parallel) and stored by index.
/// A 1 x 1 grid is the point (re_min, im_min). Throws std::invalid_argument for
/// an empty or oversized (> 10^6 points) grid.
ResolventGrid pseudospectrum_grid(const TruncatedOperator& op, const Window& window, int nx,
                                  int ny);

}  // namespace qsemi
