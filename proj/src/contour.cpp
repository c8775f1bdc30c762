#include "qsemi/contour.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>

#include "qsemi/errors.hpp"
#include "qsemi/spectral.hpp"

namespace qsemi {

cplx ContourSpec::arm(double t) const {
  const double a = std::abs(t);
  return {-c1 * a, std::copysign(std::pow(a, m), t)};
}

std::array<cplx, 4> ContourSpec::middle() const {
  const double h = std::pow(t0, m);
  return {arm(-t0), cplx(-b, -h), cplx(-b, h), arm(t0)};
}

namespace {

/// Real part of gamma at height y (the curve is a graph over the imaginary axis).
double curve_re_at(const ContourSpec& c, double y) {
  const double h = std::pow(c.t0, c.m);
  if (std::abs(y) <= h) return -c.b;
  return -c.c1 * std::pow(std::abs(y), 1.0 / c.m);
}

struct GaussLegendre {
  RVec nodes, weights;  // on [-1, 1]
  explicit GaussLegendre(int n) {
    // Golub-Welsch: eigen-decomposition of the Jacobi matrix.
    RMat jac = RMat::Zero(n, n);
    for (int k = 1; k < n; ++k) {
      const double beta = k / std::sqrt(4.0 * k * k - 1.0);
      jac(k, k - 1) = jac(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<RMat> es(jac);
    nodes = es.eigenvalues();
    weights = 2.0 * es.eigenvectors().row(0).transpose().cwiseAbs2();
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre gl(16);
  return gl;
}

/// A parametrized piece of the contour: z(p), z'(p).
struct Piece {
  std::function<cplx(double)> z;
  std::function<cplx(double)> dz;
};

class Integrator {
 public:
  Integrator(const ResolventEvaluator& ev, const std::function<cplx(cplx)>& phi)
      : ev_(ev), phi_(phi) {}

  CMat panel(const Piece& piece, double a, double b, int& nodes) const {
    const auto& gl = rule();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    const Eigen::Index d = ev_.schur_form().rows();
    CMat sum = CMat::Zero(d, d);
    for (Eigen::Index i = 0; i < gl.nodes.size(); ++i) {
      const double p = mid + half * gl.nodes(i);
      const cplx z = piece.z(p);
      sum += (gl.weights(i) * half) * (phi_(z) * piece.dz(p)) * ev_.schur_resolvent(z);
    }
    nodes += static_cast<int>(gl.nodes.size());
    return sum;
  }

  /// Adaptive bisection until two-level estimates agree to abs_tol.
  CMat adaptive(const Piece& piece, double a, double b, double abs_tol, double rel_tol,
                int& panels, int& nodes) const {
    return recurse(piece, a, b, panel(piece, a, b, nodes), abs_tol, rel_tol, 0, panels, nodes);
  }

 private:
  CMat recurse(const Piece& piece, double a, double b, const CMat& whole, double abs_tol,
               double rel_tol, int depth, int& panels, int& nodes) const {
    const double m = 0.5 * (a + b);
    const CMat left = panel(piece, a, m, nodes);
    const CMat right = panel(piece, m, b, nodes);
    CMat both = left + right;
    const double diff = (both - whole).norm();
    if (diff <= std::max(abs_tol, rel_tol * both.norm())) {
      ++panels;
      return both;
    }
    if (depth >= 40) {
      throw NumericalError("contour quadrature did not converge on a panel");
    }
    return recurse(piece, a, m, left, 0.5 * abs_tol, rel_tol, depth + 1, panels, nodes) +
           recurse(piece, m, b, right, 0.5 * abs_tol, rel_tol, depth + 1, panels, nodes);
  }

  const ResolventEvaluator& ev_;
  const std::function<cplx(cplx)>& phi_;
};

}  // namespace

ContourSpec build_contour(const ComplexQuadraticForm& form, const TruncatedOperator& op) {
  const DecayRate rate = decay_rate(form);
  const HamiltonMap f = hamilton_map(form);
  const double fnorm = f.matrix().norm();
  for (const auto& h : hamilton_spectrum(f)) {
    if (std::abs(h.lambda.imag()) <= Tolerances{}.real_eigenvalue * fnorm) {
      throw HypothesisError("Hamilton map has real eigenvalues; the contour bound does not apply");
    }
  }
  const CVec ev = Eigen::ComplexEigenSolver<CMat>(op.a, false).eigenvalues();
  double abscissa = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) abscissa = std::max(abscissa, ev(i).real());
  if (!(abscissa < 0.0)) {
    throw HypothesisError("truncated operator has nonnegative spectral abscissa");
  }

  ContourSpec c;
  c.a0 = rate.a0;
  c.b = 0.5 * rate.a0;
  c.c1 = 1.0;
  c.m = 4 * form.n() - 1;
  const double margin = 0.25 * rate.a0;
  c.t0 = c.b / c.c1;
  bool ok = false;
  for (int it = 0; it < 400 && !ok; ++it) {
    ok = true;
    for (Eigen::Index i = 0; i < ev.size() && ok; ++i) {
      if (ev(i).real() > curve_re_at(c, ev(i).imag()) - margin) ok = false;
    }
    if (!ok) {
      // Points near the middle cannot be fixed by moving t0.
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev(i).imag()) <= std::pow(c.t0, c.m) && ev(i).real() > -c.b - margin) {
          throw NumericalError("eigenvalue of the truncation at Re z = " +
                               std::to_string(ev(i).real()) + " lies right of Re z = -b - a0/4");
        }
      }
      c.t0 *= 1.25;
    }
  }
  if (!ok) throw NumericalError("no t0 separates the truncated spectrum from the contour");
  c.separation = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    c.separation = std::max(c.separation, ev(i).real() - curve_re_at(c, ev(i).imag()));
  }

  // c2 from sampled curve points.
  const ResolventEvaluator eval(op.a);
  std::vector<cplx> samples;
  const auto mid = c.middle();
  for (int s = 0; s < 3; ++s) {
    for (int k = 0; k <= 64; ++k) samples.push_back(mid[s] + (mid[s + 1] - mid[s]) * (k / 64.0));
  }
  for (int k = 0; k <= 96; ++k) {
    const double u = c.t0 * std::pow(2.0, 12.0 * k / 96.0);
    samples.push_back(c.arm(u));
    samples.push_back(c.arm(-u));
  }
  std::vector<double> vals(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    vals[i] = eval.norm(samples[i]) * std::pow(1.0 + std::abs(samples[i]), 1.0 / c.m);
  });
  for (double v : vals) c.c2 = std::max(c.c2, v);
  return c;
}

ContourIntegral contour_integral(const TruncatedOperator& op, const ContourSpec& c,
                                 const std::function<cplx(cplx)>& phi,
                                 const std::function<double(cplx)>& weight_bound) {
  const ResolventEvaluator ev(op.a);
  const Integrator integ(ev, phi);
  const Eigen::Index d = op.a.rows();
  const double anorm = spectral_norm(op.a);
  ContourIntegral out;

  // Middle polyline, three segments in parallel, summed in order.
  const auto mid = c.middle();
  std::array<CMat, 3> seg;
  std::array<int, 3> seg_panels{}, seg_nodes{};
  parallel_for(3, [&](std::size_t s) {
    const cplx p0 = mid[s], p1 = mid[s + 1];
    const Piece piece{[p0, p1](double t) { return p0 + (p1 - p0) * t; },
                      [p0, p1](double) { return p1 - p0; }};
    seg[s] = integ.adaptive(piece, 0.0, 1.0, 0.0, 1e-13, seg_panels[s], seg_nodes[s]);
  });
  CMat total = seg[0] + seg[1] + seg[2];
  for (int s = 0; s < 3; ++s) out.panels += seg_panels[s], out.nodes += seg_nodes[s];
  const double ref = std::max(total.norm(), std::numeric_limits<double>::min());

  // Arms on dyadic panels [t0 2^j, t0 2^{j+1}]; the lower arm runs toward the
  // middle, hence its minus sign.
  const double c1 = c.c1;
  const int m = c.m;
  const Piece upper{[c1, m](double u) { return cplx(-c1 * u, std::pow(u, m)); },
                    [c1, m](double u) { return cplx(-c1, m * std::pow(u, m - 1)); }};
  const Piece lower{[c1, m](double u) { return cplx(-c1 * u, -std::pow(u, m)); },
                    [c1, m](double u) { return cplx(-c1, -m * std::pow(u, m - 1)); }};
  auto bound = [&](double u) {
    double worst = 0.0;
    for (const Piece* p : {&upper, &lower}) {
      const cplx z = p->z(u);
      double res = c.c2 * std::pow(1.0 + std::abs(z), -1.0 / m);
      if (std::abs(z) > anorm) res = std::min(res, 1.0 / (std::abs(z) - anorm));
      worst = std::max(worst, res * weight_bound(z) * std::abs(p->dz(u)));
    }
    return worst;
  };

  constexpr int kBatch = 4;
  constexpr int kMaxPanels = 400;
  const double abs_tol = 1e-14 * ref;
  for (int j0 = 0;; j0 += kBatch) {
    if (j0 >= kMaxPanels) {
      throw NumericalError("contour tail did not fall below the truncation threshold");
    }
    std::array<CMat, kBatch> parts;
    std::array<int, kBatch> pp{}, nn{};
    parallel_for(kBatch, [&](std::size_t k) {
      const double a = c.t0 * std::ldexp(1.0, j0 + static_cast<int>(k));
      const double b = 2.0 * a;
      int p1 = 0, n1 = 0, p2 = 0, n2 = 0;
      parts[k] = integ.adaptive(upper, a, b, abs_tol, 1e-13, p1, n1) -
                 integ.adaptive(lower, a, b, abs_tol, 1e-13, p2, n2);
      pp[k] = p1 + p2;
      nn[k] = n1 + n2;
    });
    bool done = false;
    for (int k = 0; k < kBatch && !done; ++k) {
      total += parts[k];
      out.panels += pp[k];
      out.nodes += nn[k];
      const double u = c.t0 * std::ldexp(1.0, j0 + k + 1);
      const double tail = 2.0 * u * bound(u);
      const double scale = total.norm() / std::sqrt(static_cast<double>(d));
      if (tail <= 1e-12 * scale) {
        out.tail_parameter = u;
        out.tail_bound = tail / (2.0 * kPi);
        done = true;
      }
    }
    if (done) break;
  }
  const CMat& u = ev.schur_vectors();
  out.value = u * (total / cplx(0.0, 2.0 * kPi)) * u.adjoint();
  return out;
}

ContourCheck contour_semigroup(const TruncatedOperator& op, const ContourSpec& contour, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("contour formula requires s > 0");
  ContourCheck out;
  out.details = contour_integral(
      op, contour, [s](cplx z) { return std::exp(s * z); },
      [s](cplx z) { return std::exp(s * z.real()); });
  out.value = out.details.value;
  out.reference = matrix_exponential(op.a, s);
  out.relative_error = spectral_norm(CMat(out.value - out.reference)) /
                       std::max(spectral_norm(out.reference), std::numeric_limits<double>::min());
  return out;
}

ContourCheck contour_lemma_check(const TruncatedOperator& op, const ContourSpec& contour) {
  ContourCheck out;
  out.details = contour_integral(
      op, contour, [](cplx z) { return 1.0 / (z - 1.0); },
      [](cplx z) { return 1.0 / std::abs(z - 1.0); });
  out.value = out.details.value;
  const Eigen::Index d = op.a.rows();
  const CMat i_minus_a = CMat::Identity(d, d) - op.a;
  out.reference = -i_minus_a.partialPivLu().inverse();
  out.relative_error = spectral_norm(CMat(out.value - out.reference)) /
                       std::max(spectral_norm(out.reference), std::numeric_limits<double>::min());
  return out;
}

}  // namespace qsemi
