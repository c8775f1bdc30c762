#pragma once

// Weyl quantization of quadratic symbols on tensor Hermite functions.
//
// With a_j = (x_j + d/dx_j)/sqrt 2 acting on h_alpha,
//   x_j = (a_j + a_j^*)/sqrt 2,   D_j = -i d/dx_j = -i (a_j - a_j^*)/sqrt 2,
// and the Weyl symbol sum Q_uv X_u X_v quantizes to sum Q_uv w_u w_v with w
// the generators (x_1..x_n, D_1..D_n) (Q symmetric, so this is the
// symmetrized product). The truncated operator is the compression of that
// exact product to span{h_alpha : |alpha| <= N}; no quadrature is involved.

#include <cstdint>
#include <vector>

#include "qsemi/quadratic_form.hpp"

namespace qsemi {

/// Basis functions of total degree <= N in graded order: all multi-indices
/// of degree 0, then degree 1, ..., each degree in lexicographically
/// decreasing order of (alpha_1, ..., alpha_n).
std::vector<std::vector<int>> hermite_basis(int n, int degree);

/// binom(N + n, n).
std::size_t hermite_dimension(int n, int degree);

/// Dimension cap for truncations: QSEMI_MAX_DIM if set and valid, else 20000.
std::size_t default_max_dim();

struct TruncatedOperator {
  int n = 0;
  int degree = 0;  ///< N
  std::vector<std::vector<int>> basis;
  CMat a;

  std::size_t dim() const { return static_cast<std::size_t>(a.rows()); }
};

/// Matrix of q^w on Hermite functions of degree <= N. Requires N >= 2.
/// Throws std::invalid_argument if the dimension exceeds max_dim.
TruncatedOperator weyl_matrix(const ComplexQuadraticForm& form, int degree,
                              std::size_t max_dim = default_max_dim());

/// Symbol-level check of q^w - z/h = (1/h)(q(y, h eta)^w - z): the
/// coefficient matrix of (1/h) q(y, h eta) after y = h^{1/2} x, eta =
/// h^{-1/2} xi, minus Q. Returns the largest absolute entry of the residual.
double scaling_identity_check(const ComplexQuadraticForm& form, double h);

}  // namespace qsemi
