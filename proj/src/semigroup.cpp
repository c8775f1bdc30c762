#include "qsemi/semigroup.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "qsemi/errors.hpp"

namespace qsemi {

double spectral_abscissa(const CMat& a) {
  const CVec ev = Eigen::ComplexEigenSolver<CMat>(a, false).eigenvalues();
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) best = std::max(best, ev(i).real());
  return best;
}

CMat matrix_exponential(const CMat& a, double t) { return CMat(t * a).exp(); }

double fit_log_slope(const std::vector<double>& times, const std::vector<double>& norms,
                     double t_from, double t_to) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  int count = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_from - 1e-12 || times[i] > t_to + 1e-12 || !(norms[i] > 0.0)) continue;
    const double y = std::log(norms[i]);
    st += times[i];
    sy += y;
    stt += times[i] * times[i];
    sty += times[i] * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double denom = count * stt - st * st;
  return denom == 0.0 ? 0.0 : (count * sty - st * sy) / denom;
}

NormProfile semigroup_profile(const TruncatedOperator& op, double t_max, int steps) {
  if (!(t_max > 0.0) || steps < 1) throw std::invalid_argument("semigroup: need t_max > 0, steps >= 1");
  const std::size_t count = static_cast<std::size_t>(steps) + 1;
  const double dt = t_max / steps;
  NormProfile prof;
  prof.times.resize(count);
  prof.norms.resize(count);
  std::vector<CMat> e(count);
  parallel_for(count, [&](std::size_t i) {
    const double t = i * dt;
    prof.times[i] = t;
    e[i] = matrix_exponential(op.a, t);
    prof.norms[i] = spectral_norm(e[i]);
  });
  const double nd = std::max(spectral_norm(e[1]), std::numeric_limits<double>::min());
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const double r = spectral_norm(CMat(e[i + 1] - e[i] * e[1])) /
                     (std::max(prof.norms[i], std::numeric_limits<double>::min()) * nd);
    prof.semigroup_residual = std::max(prof.semigroup_residual, r);
  }
  if (prof.semigroup_residual > 1e-8) {
    throw NumericalError("matrix exponential failed the semigroup residual check (" +
                         std::to_string(prof.semigroup_residual) + ")");
  }
  prof.fitted_slope = fit_log_slope(prof.times, prof.norms, 0.5 * t_max, t_max);
  return prof;
}

// ------------------------------------------------------------ resolvent

namespace {
constexpr Eigen::Index kDenseLimit = 400;
}

ResolventEvaluator::ResolventEvaluator(const CMat& a) : a_(a) {
  dense_ = a.rows() <= kDenseLimit;
  Eigen::ComplexSchur<CMat> schur(a);
  u_ = schur.matrixU();
  t_ = schur.matrixT();
  const double off = CMat(t_.triangularView<Eigen::StrictlyUpper>()).norm();
  diagonal_ = off <= 1e-13 * std::max(t_.norm(), std::numeric_limits<double>::min());
}

CMat ResolventEvaluator::schur_resolvent(cplx z) const {
  const Eigen::Index d = t_.rows();
  CMat m = -t_;
  m.diagonal().array() += z;
  CMat inv = CMat::Identity(d, d);
  m.triangularView<Eigen::Upper>().solveInPlace(inv);
  return inv;
}

double ResolventEvaluator::norm(cplx z) const {
  const Eigen::Index d = t_.rows();
  if (diagonal_) {
    double m = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d; ++i) m = std::min(m, std::abs(t_(i, i) - z));
    return m == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / m;
  }
  if (dense_) {
    CMat m = a_;
    m.diagonal().array() -= z;
    const double s = min_singular_value(m);
    return s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
  }
  // Power iteration on (T - z)^{-*} (T - z)^{-1} with triangular solves.
  CMat m = t_;
  m.diagonal().array() -= z;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (m(i, i) == cplx(0.0, 0.0)) return std::numeric_limits<double>::infinity();
  }
  const auto tri = m.triangularView<Eigen::Upper>();
  CVec x = CVec::Ones(d) / std::sqrt(static_cast<double>(d));
  double est = 0.0;
  for (int it = 0; it < 2000; ++it) {
    CVec y = tri.solve(x);
    CVec w = tri.adjoint().solve(y);
    const double nw = w.norm();
    if (!(nw > 0.0) || !std::isfinite(nw)) return std::numeric_limits<double>::infinity();
    const double next = std::sqrt(nw);
    x = w / nw;
    if (it > 5 && std::abs(next - est) <= 1e-13 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

double resolvent_norm(const TruncatedOperator& op, cplx z) {
  CMat m = op.a;
  m.diagonal().array() -= z;
  const double s = min_singular_value(m);
  return s == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / s;
}

ResolventGrid pseudospectrum_grid(const TruncatedOperator& op, const Window& w, int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (static_cast<long long>(nx) * ny > 1'000'000) {
    throw std::invalid_argument("grid exceeds 10^6 points");
  }
  if (!(w.re_max >= w.re_min) || !(w.im_max >= w.im_min)) {
    throw std::invalid_argument("invalid window");
  }
  ResolventGrid g;
  g.nx = nx;
  g.ny = ny;
  const std::size_t count = static_cast<std::size_t>(nx) * ny;
  g.z.resize(count);
  g.values.resize(count);
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double re = nx == 1 ? w.re_min : w.re_min + (w.re_max - w.re_min) * ix / (nx - 1);
      const double im = ny == 1 ? w.im_min : w.im_min + (w.im_max - w.im_min) * iy / (ny - 1);
      g.z[static_cast<std::size_t>(iy) * nx + ix] = cplx(re, im);
    }
  }
  const ResolventEvaluator eval(op.a);
  parallel_for(count, [&](std::size_t i) { g.values[i] = eval.norm(g.z[i]); });
  return g;
}

}  // namespace qsemi
