#include "qsemi/subellipticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qsemi/errors.hpp"
#include "qsemi/numerical_range.hpp"
#include "qsemi/spectral.hpp"

namespace qsemi {

RForm r_form(const ComplexQuadraticForm& form, const Tolerances& tol) {
  require_nonpositive_real_part(form, tol);
  const int dim = form.dim();
  const RMat re = form.re();
  const RMat imf = hamilton_map(form).im();
  RMat r = RMat::Zero(dim, dim);
  RMat power = RMat::Identity(dim, dim);
  for (int j = 0; j < dim; ++j) {
    r -= power.transpose() * re * power;
    power = imf * power;
  }
  RForm out;
  out.r = 0.5 * (r + r.transpose());
  out.min_eigenvalue = symmetric_eigenvalues(out.r)(0);
  const double scale = spectral_norm(out.r);
  out.positive_definite = scale > 0.0 && out.min_eigenvalue > tol.definiteness * scale;
  return out;
}

ComplexQuadraticForm iterated_bracket(const ComplexQuadraticForm& form, int m) {
  const ComplexQuadraticForm im = form.imag_part();
  ComplexQuadraticForm g = form.real_part();
  for (int i = 0; i < m; ++i) g = poisson_bracket(im, g);
  return g;
}

double chain_constant(int j) {
  double c = 1.0;
  for (int i = 1; i <= j; ++i) c *= 4.0 * (j + i) / i;  // 4^j (2j)! / (j!)^2
  return c;
}

OrderResult order_at_point(const ComplexQuadraticForm& form, const RVec& x0,
                           const Tolerances& tol) {
  if (x0.size() != form.dim()) throw std::invalid_argument("order: point has wrong dimension");
  if (x0.norm() == 0.0) throw std::invalid_argument("order: X0 must be nonzero");
  require_nonpositive_real_part(form, tol);
  const RMat re = form.re();
  const double re_norm = spectral_norm(re);
  const RMat imf = hamilton_map(form).im();

  OrderResult out;
  out.point = x0;
  RVec y = x0;
  const int max_j = form.dim() - 1;
  for (int j = 0; j <= max_j; ++j) {
    const double value = y.dot(re * y);
    const double band = tol.definiteness * re_norm * std::max(x0.squaredNorm(), y.squaredNorm());
    if (value < -band) {
      out.j0 = j;
      out.k = 2 * j;
      out.finite = true;
      out.bracket_value = evaluate(iterated_bracket(form, 2 * j), x0);
      const double expected = chain_constant(j) * value;
      const double err = std::abs(out.bracket_value - cplx(expected, 0.0));
      // The expansion H^{2j} Re q(X0) = 4^j sum_a binom(2j, a) (+-) Re q(Y_a; Y_{2j-a}),
      // Y_a = (Im F)^a X0, reduces to the a = j term only when the lower values
      // vanish exactly; inside the tolerance band they need not, and by
      // Cauchy-Schwarz (Re Q <= 0) each cross term is at most
      // sqrt(|Re q(Y_a)| |Re q(Y_{2j-a})|). Rounding in the nested commutators
      // scales with the largest value the chain can take at this |X0|.
      std::vector<double> r(2 * j + 1);
      RVec ya = x0;
      for (int a = 0; a <= 2 * j; ++a) {
        r[a] = std::abs(ya.dot(re * ya));
        ya = imf * ya;
      }
      double cross = 0.0, binom = 1.0;
      for (int a = 0; a <= 2 * j; ++a) {
        if (a != j) cross += binom * std::sqrt(r[a] * r[2 * j - a]);
        binom = binom * (2 * j - a) / (a + 1);
      }
      cross *= std::pow(4.0, j);
      const double reach = chain_constant(j) * re_norm *
                           std::pow(spectral_norm(imf), 2 * j) * x0.squaredNorm();
      const double allowed = 1.01 * cross + 1e-10 * reach;
      if (!(out.bracket_value.real() < 0.0) || err > allowed) {
        throw NumericalError("bracket chain value " + std::to_string(out.bracket_value.real()) +
                             " disagrees with 4^j binom(2j,j) Re q((Im F)^j X0) = " +
                             std::to_string(expected));
      }
      return out;
    }
    y = imf * y;
  }
  throw HypothesisError("no j <= 2n-1 with Re q((Im F)^j X0) < 0: the order is not finite here");
}

RVec ray_preimage(const ComplexQuadraticForm& form, double theta, const Tolerances& tol) {
  const Sector sector = numerical_range(form, tol);
  const cplx dir = std::polar(1.0, theta);
  if (!sector.contains(dir, tol.sector_angle)) {
    throw HypothesisError("ray at angle " + std::to_string(theta) +
                          " is not contained in the numerical range");
  }
  const cplx rotate = std::conj(dir);
  auto g = [&](const RVec& x) { return std::arg(evaluate(form, x) * rotate); };
  const CMat& q = form.matrix();
  auto grad_g = [&](const RVec& x) -> RVec {
    const CVec xc = x.cast<cplx>();
    const cplx qx = xc.transpose() * q * xc;
    return (2.0 * (q * xc) / qx).imag();
  };

  const auto samples = sphere_samples(form.dim(), default_sample_count(form.dim()));
  std::vector<double> vals(samples.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    vals[i] = g(samples[i]);
    if (std::abs(vals[i]) < std::abs(vals[best])) best = i;
  }
  if (std::abs(vals[best]) <= 1e-13) return samples[best];

  // Bisection along a great-circle path to the nearest sample of opposite sign.
  const RVec& a = samples[best];
  std::size_t partner = samples.size();
  double partner_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (vals[i] * vals[best] >= 0.0) continue;
    const double d = (samples[i] - a).norm();
    if (d < partner_dist && a.dot(samples[i]) > -0.9) partner_dist = d, partner = i;
  }
  if (partner < samples.size()) {
    const RVec& b = samples[partner];
    double lo = 0.0, hi = 1.0;
    const double glo = vals[best];
    RVec x = a;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      x = ((1.0 - mid) * a + mid * b).normalized();
      const double gm = g(x);
      if (gm == 0.0) break;
      if ((gm < 0.0) == (glo < 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo < 1e-16) break;
    }
    if (std::abs(g(x)) <= tol.sector_angle) return x;
  }

  // Boundary rays: no sign change, minimize g^2 locally instead.
  auto f = [&](const RVec& x) { return -g(x) * g(x); };
  auto grad_f = [&](const RVec& x) -> RVec { return -2.0 * g(x) * grad_g(x); };
  const RVec x = sphere_ascent(f, grad_f, a, 2000);
  if (std::abs(g(x)) <= tol.sector_angle) return x;
  throw NumericalError("no preimage of the ray found within the sampling resolution");
}

OrderResult order_on_ray(const ComplexQuadraticForm& form, double theta, const Tolerances& tol) {
  return order_at_point(form, ray_preimage(form, theta, tol), tol);
}

}  // namespace qsemi
