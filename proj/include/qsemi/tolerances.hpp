#pragma once

namespace qsemi {

/// Documented numerical thresholds. Every decision that compares a floating
/// point quantity against zero goes through one of these.
struct Tolerances {
  /// Relative threshold for positive/negative definiteness decisions
  /// (ellipticity witness, Re Q <= 0, r-form verdict, strict negativity in
  /// the order search). Scaled by the norm of the matrix involved.
  double definiteness = 1e-9;
  /// Relative eigenvalue clustering radius for Hamilton-map spectra.
  double cluster = 1e-7;
  /// Angular tolerance (radians) for sector membership tests.
  double sector_angle = 1e-8;
  /// Relative threshold below which an eigenvalue of F counts as real.
  double real_eigenvalue = 1e-8;
};

}  // namespace qsemi
