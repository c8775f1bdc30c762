#pragma once

// Shared linear-algebra vocabulary: Eigen aliases, the symplectic matrix J,
// and a few small dense helpers used across modules.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <functional>

namespace qsemi {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// J = [[0, I_n], [-I_n, 0]] so that sigma(U, V) = <J U, V>.
RMat symplectic_j(int n);

/// sigma((x, xi), (y, eta)) = xi.y - x.eta, bilinear (no conjugation).
cplx sigma(const CVec& u, const CVec& v);
double sigma(const RVec& u, const RVec& v);

/// Largest singular value.
double spectral_norm(const CMat& a);
double spectral_norm(const RMat& a);

/// Smallest singular value.
double min_singular_value(const CMat& a);

/// Eigenvalues of a real symmetric matrix in ascending order.
RVec symmetric_eigenvalues(const RMat& a);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

/// Runs body(i) for i in [0, count) on a pool of worker threads. Each index
/// is processed exactly once; callers write results into per-index slots and
/// assemble them afterwards in index order, which keeps reductions
/// deterministic regardless of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace qsemi
