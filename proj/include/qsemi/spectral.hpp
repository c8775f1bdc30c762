#pragma once

// Eigenstructure of the Hamilton map F = J Q, the symplectic normal form of
// -Re q, splitting off the real-eigenvalue part of F, and the exact spectrum
//
//   sigma(q^w) = { sum over admissible lambda of (r_lambda + 2 k_lambda)(-i lambda) },
//
// where lambda ranges over eigenvalues of F with -i lambda in Sigma(q) \ {0}.

#include <optional>
#include <vector>

#include "qsemi/numerical_range.hpp"
#include "qsemi/quadratic_form.hpp"
#include "qsemi/tolerances.hpp"

namespace qsemi {

struct HamiltonEig {
  cplx lambda;
  int multiplicity = 0;  ///< dimension of the generalized eigenspace
};

/// Eigenvalues of F clustered into distinct values with summed algebraic
/// multiplicities, paired as {lambda, -lambda}. Throws NumericalError when
/// two clusters are closer than ten clustering radii or a partner is missing.
std::vector<HamiltonEig> hamilton_spectrum(const HamiltonMap& f, const Tolerances& tol = {});

struct RealPartClass {
  enum class Kind { non_nilpotent, nilpotent, zero };
  Kind kind = Kind::zero;
  int k = 0;                    ///< oscillator blocks
  int l = 0;                    ///< rank-one blocks
  std::vector<double> lambdas;  ///< k positive values, descending
};

const char* to_string(RealPartClass::Kind kind);

/// Throws HypothesisError unless Re Q is negative semidefinite.
void require_nonpositive_real_part(const ComplexQuadraticForm& form, const Tolerances& tol = {});

/// True if Re Q vanishes at the definiteness tolerance.
bool real_part_vanishes(const ComplexQuadraticForm& form, const Tolerances& tol = {});

RealPartClass classify_real_part(const ComplexQuadraticForm& form, const Tolerances& tol = {});

/// A real symplectic chi (chi^T J chi = J) with
///   chi^T A chi = diag form  sum_{j<=k} lambda_j (x_j^2 + xi_j^2) + sum_{k<j<=k+l} x_j^2.
struct NormalForm {
  RMat chi;
  int k = 0;
  int l = 0;
  std::vector<double> lambdas;

  /// The coefficient matrix of the normal form in (x, xi) ordering.
  RMat coefficients() const;
};

/// Normal form of a positive semidefinite real form A (2n x 2n).
/// zero_tol is the absolute threshold below which eigenvalues of A are zero.
NormalForm psd_normal_form(const RMat& a, double zero_tol);

/// Normal form of -Re q. Requires Re Q negative semidefinite.
NormalForm symplectic_normal_form(const ComplexQuadraticForm& form, const Tolerances& tol = {});

/// Symplectic basis of the subspace spanned by the columns of `span`
/// (which must be a symplectic subspace). Returns a 2n x 2p matrix E with
/// columns (e_1..e_p, f_1..f_p) and E^T J E = J_p.
RMat symplectic_basis(const RMat& span);

/// Basis of the symplectic orthogonal of the subspace whose symplectic basis
/// is `basis` (columns (e_1..e_p, f_1..f_p)), itself returned as a symplectic
/// basis.
RMat symplectic_complement(const RMat& basis);

struct Tensorization {
  /// Symplectic basis of S (span of real and imaginary parts of the
  /// eigenvectors of F for real eigenvalues), columns (x''_1.., xi''_1..).
  RMat s_basis;
  /// Symplectic basis of the symplectic orthogonal of S, columns (x'.., xi'..),
  /// chosen so that -Re q_tilde is in normal form.
  RMat sperp_basis;
  /// q restricted to S^{sigma perp}; empty when S is the whole space.
  std::optional<ComplexQuadraticForm> q_tilde;
  /// q restricted to S is i epsilon sum mu_j (x_j^2 + xi_j^2).
  std::vector<double> mu;
  int epsilon = 0;  ///< +-1, or 0 when S = {0}

  int n_s() const { return static_cast<int>(s_basis.cols() / 2); }
  int n_perp() const { return static_cast<int>(sperp_basis.cols() / 2); }

  /// Full symplectic basis in (x', x'', xi', xi'') ordering.
  RMat combined_basis() const;
};

/// Requires an elliptic form with Re Q <= 0. Throws HypothesisError if F has
/// a zero eigenvalue.
Tensorization split_real_eigenspaces(const ComplexQuadraticForm& form, const Tolerances& tol = {});

struct SpectrumGenerator {
  cplx lambda;
  int multiplicity = 0;
  int k = 0;
};

struct SpectrumPoint {
  cplx z;
  std::vector<SpectrumGenerator> gens;
};

struct SpectrumReport {
  std::vector<SpectrumPoint> points;  ///< sorted by modulus, then argument
  std::vector<HamiltonEig> admissible;
  std::vector<cplx> boundary_lambdas;  ///< admissible lambda with -i lambda on a boundary ray
  double a0 = 0.0;
  double radius = 0.0;
  Sector sector = Sector::full_plane();
};

/// All points of sigma(q^w) with |z| <= radius. Requires an elliptic form
/// with Sigma(q) != C.
SpectrumReport operator_spectrum(const ComplexQuadraticForm& form, double radius,
                                 const Tolerances& tol = {});

struct DecayRate {
  double a0 = 0.0;
  /// lambda_1 of the normal form, available in the non-nilpotent case where
  /// ||e^{t q^w}|| <= e^{-lambda_1 t} holds without a constant.
  std::optional<double> constant_free_rate;
};

/// Requires ellipticity, Re q <= 0 and Re q not identically zero.
DecayRate decay_rate(const ComplexQuadraticForm& form, const Tolerances& tol = {});

}  // namespace qsemi
