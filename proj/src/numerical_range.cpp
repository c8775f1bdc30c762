#include "qsemi/numerical_range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsemi/errors.hpp"

namespace qsemi {

// ---------------------------------------------------------------- Sector

Sector Sector::full_plane() { return Sector(Kind::full_plane, -kPi, kPi); }

Sector Sector::from_angles(double theta_min, double theta_max) {
  if (!(theta_max >= theta_min)) throw std::invalid_argument("sector: theta_max < theta_min");
  const double opening = theta_max - theta_min;
  if (!(opening < kPi)) throw std::invalid_argument("sector opening must be < pi");
  const double mid = 0.5 * (theta_min + theta_max);
  const double shift = wrap_angle(mid) - mid;
  return Sector(Kind::sector, theta_min + shift, theta_max + shift);
}

double Sector::angle_from_bisector(cplx z) const {
  return wrap_angle(std::arg(z) - bisector());
}

bool Sector::contains(cplx z, double angle_tol) const {
  if (is_full_plane() || z == cplx(0.0, 0.0)) return true;
  return std::abs(angle_from_bisector(z)) <= 0.5 * opening() + angle_tol;
}

double Sector::distance(cplx z) const {
  if (contains(z)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double t : {theta_min_, theta_max_}) {
    const cplx u = std::polar(1.0, t);
    const double along = std::max(0.0, (z * std::conj(u)).real());
    best = std::min(best, std::abs(z - along * u));
  }
  return best;
}

bool Sector::on_boundary(cplx z, double angle_tol) const {
  if (is_full_plane()) return false;
  return std::abs(std::abs(angle_from_bisector(z)) - 0.5 * opening()) <= angle_tol;
}

// ------------------------------------------------------- sphere sampling

namespace {

double radical_inverse(std::size_t i, int base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

}  // namespace

std::size_t default_sample_count(int dim) { return 10000u * static_cast<std::size_t>(dim); }

std::vector<RVec> sphere_samples(int dim, std::size_t count) {
  std::vector<RVec> out;
  out.reserve(count + 2 * dim * dim + 4096);
  for (int i = 0; i < dim; ++i) {
    out.push_back(RVec::Unit(dim, i));
    for (int j = i + 1; j < dim; ++j) {
      RVec v = RVec::Zero(dim);
      v(i) = v(j) = std::sqrt(0.5);
      out.push_back(v);
      v(j) = -v(j);
      out.push_back(v);
    }
  }
  if (dim == 2) {
    constexpr int kGrid = 4096;
    for (int k = 0; k < kGrid; ++k) {
      const double t = kPi * k / kGrid;
      out.push_back((RVec(2) << std::cos(t), std::sin(t)).finished());
    }
  }
  const int pairs = (dim + 1) / 2;
  const auto primes = first_primes(2 * pairs);
  for (std::size_t s = 1; s <= count; ++s) {
    RVec v(2 * pairs);
    for (int p = 0; p < pairs; ++p) {
      const double u1 = std::max(radical_inverse(s, primes[2 * p]), 1e-300);
      const double u2 = radical_inverse(s, primes[2 * p + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      v(2 * p) = r * std::cos(2.0 * kPi * u2);
      v(2 * p + 1) = r * std::sin(2.0 * kPi * u2);
    }
    RVec x = v.head(dim);
    const double nx = x.norm();
    if (nx > 1e-12) out.push_back(x / nx);
  }
  return out;
}

RVec sphere_ascent(const std::function<double(const RVec&)>& f,
                   const std::function<RVec(const RVec&)>& grad, RVec x, int max_iter) {
  x.normalize();
  double fx = f(x);
  double step = 0.1;
  for (int it = 0; it < max_iter; ++it) {
    RVec g = grad(x);
    g -= x.dot(g) * x;
    const double gn = g.norm();
    if (gn < 1e-15) break;
    bool improved = false;
    for (int k = 0; k < 60; ++k) {
      RVec y = (x + (step / gn) * g).normalized();
      const double fy = f(y);
      if (fy > fx) {
        x = std::move(y);
        fx = fy;
        step = std::min(2.0 * step, 0.5);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved || step < 1e-15) break;
  }
  return x;
}

// ----------------------------------------------------------- ellipticity

namespace {

double min_eig_rotated(const RMat& re, const RMat& im, double theta) {
  const RMat m = std::cos(theta) * re - std::sin(theta) * im;
  return symmetric_eigenvalues(m)(0);
}

double min_modulus_on_sphere(const ComplexQuadraticForm& form) {
  const auto samples = sphere_samples(form.dim(), default_sample_count(form.dim()));
  const CMat& q = form.matrix();
  std::vector<std::pair<double, std::size_t>> values;
  values.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    values.emplace_back(std::abs(evaluate(form, samples[i])), i);
  }
  const std::size_t keep = std::min<std::size_t>(8, values.size());
  std::partial_sort(values.begin(), values.begin() + keep, values.end());
  double best = values.front().first;
  // Maximize -|q|^2 starting from the best samples.
  auto f = [&](const RVec& x) { return -std::norm(evaluate(form, x)); };
  auto g = [&](const RVec& x) -> RVec {
    const CVec xc = x.cast<cplx>();
    const cplx qx = xc.transpose() * q * xc;
    const CVec grad_q = 2.0 * (q * xc);
    return -2.0 * (std::conj(qx) * grad_q).real();
  };
  for (std::size_t k = 0; k < keep; ++k) {
    const RVec x = sphere_ascent(f, g, samples[values[k].second]);
    best = std::min(best, std::abs(evaluate(form, x)));
  }
  return best;
}

}  // namespace

EllipticityCertificate check_elliptic(const ComplexQuadraticForm& form, const Tolerances& tol) {
  const RMat re = form.re();
  const RMat im = form.im();
  const double threshold = tol.definiteness * std::max(form.norm(), 1e-300);

  constexpr int kSweep = 720;
  double best_theta = -kPi;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSweep; ++k) {
    const double theta = -kPi + 2.0 * kPi * k / kSweep;
    const double v = min_eig_rotated(re, im, theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  // Golden-section refinement on the bracketing interval.
  const double h = 2.0 * kPi / kSweep;
  double a = best_theta - h, b = best_theta + h;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = min_eig_rotated(re, im, c), fd = min_eig_rotated(re, im, d);
  for (int it = 0; it < 80; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = min_eig_rotated(re, im, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = min_eig_rotated(re, im, d);
    }
  }
  const double refined_theta = 0.5 * (a + b);
  const double refined = min_eig_rotated(re, im, refined_theta);
  if (refined > best) {
    best = refined;
    best_theta = refined_theta;
  }

  EllipticityCertificate cert;
  cert.witness_margin = best;
  cert.min_modulus = min_modulus_on_sphere(form);
  if (best > threshold) {
    cert.verdict = EllipticityCertificate::Verdict::elliptic;
    cert.witness_angle = wrap_angle(best_theta);
    return cert;
  }
  if (cert.min_modulus > threshold) {
    // Without a witness only n = 1 with Sigma(q) = C is consistent.
    cert.verdict = form.n() == 1 ? EllipticityCertificate::Verdict::elliptic
                                 : EllipticityCertificate::Verdict::indeterminate;
  } else if (cert.min_modulus < 0.1 * threshold) {
    cert.verdict = EllipticityCertificate::Verdict::not_elliptic;
  } else {
    cert.verdict = EllipticityCertificate::Verdict::indeterminate;
  }
  return cert;
}

// ------------------------------------------------------- numerical range

Sector numerical_range(const ComplexQuadraticForm& form, const Tolerances& tol) {
  return numerical_range(form, check_elliptic(form, tol));
}

Sector numerical_range(const ComplexQuadraticForm& form, const EllipticityCertificate& cert) {
  using V = EllipticityCertificate::Verdict;
  if (cert.verdict == V::not_elliptic) {
    throw HypothesisError("numerical range requested for a non-elliptic form");
  }
  if (cert.verdict == V::indeterminate) {
    throw NumericalError("ellipticity of the form is indeterminate at the current tolerance");
  }
  if (!cert.witness_angle) return Sector::full_plane();

  // arg q(X) - reference lies in (-pi/2, pi/2) on the whole sphere.
  const double reference = -*cert.witness_angle;
  const cplx rotate = std::polar(1.0, -reference);
  const CMat& q = form.matrix();
  auto rel_arg = [&](const RVec& x) { return std::arg(evaluate(form, x) * rotate); };
  auto rel_arg_grad = [&](const RVec& x) -> RVec {
    const CVec xc = x.cast<cplx>();
    const cplx qx = xc.transpose() * q * xc;
    return (2.0 * (q * xc) / qx).imag();
  };

  const auto samples = sphere_samples(form.dim(), default_sample_count(form.dim()));
  std::size_t imin = 0, imax = 0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double a = rel_arg(samples[i]);
    if (a < lo) lo = a, imin = i;
    if (a > hi) hi = a, imax = i;
  }
  {
    const RVec x = sphere_ascent(rel_arg, rel_arg_grad, samples[imax]);
    hi = std::max(hi, rel_arg(x));
  }
  {
    auto neg = [&](const RVec& x) { return -rel_arg(x); };
    auto neg_grad = [&](const RVec& x) -> RVec { return -rel_arg_grad(x); };
    const RVec x = sphere_ascent(neg, neg_grad, samples[imin]);
    lo = std::min(lo, rel_arg(x));
  }
  return Sector::from_angles(reference + lo, reference + hi);
}

}  // namespace qsemi
