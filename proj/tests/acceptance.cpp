// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qsemi/catalog.hpp"
#include "qsemi/contour.hpp"
#include "qsemi/errors.hpp"
#include "qsemi/numerical_range.hpp"
#include "qsemi/semigroup.hpp"
#include "qsemi/spectral.hpp"
#include "qsemi/subellipticity.hpp"
#include "qsemi/weyl.hpp"

using namespace qsemi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && secs > time_limit) {
    o.pass = false;
    o.detail += " [over time limit " + std::to_string(time_limit) + " s]";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s  (%.2f s)  %s\n", id, o.pass ? "PASS" : "FAIL", secs,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double opnorm(const CMat& m) { return Eigen::JacobiSVD<CMat>(m).singularValues()(0); }

}  // namespace

int main() {
  // 1. Harmonic-oscillator anchor.
  criterion(1, 1.0, [] {
    const auto spec = operator_spectrum(ho1d(), 10.0);
    bool ok = spec.points.size() == 5;
    double err = 0.0;
    for (std::size_t k = 0; ok && k < 5; ++k) {
      err = std::max(err, std::abs(spec.points[k].z - cplx(-(2.0 * k + 1.0), 0.0)));
    }
    const auto profile = semigroup_profile(weyl_matrix(ho1d(), 20), 5.0, 50);
    double perr = 0.0;
    for (std::size_t i = 0; i < profile.times.size(); ++i) {
      perr = std::max(perr, std::abs(profile.norms[i] - std::exp(-profile.times[i])));
    }
    ok = ok && err <= 1e-10 && perr <= 1e-10;
    return Outcome{ok, std::to_string(spec.points.size()) + " points, spectrum err " +
                           fmt("%.2e", err) + ", |norm - e^-t| max " + fmt("%.2e", perr)};
  });

  // 2. Hamilton map of the Poisson bracket.
  criterion(2, 0, [] {
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 1 + trial % 3;
      const auto f1 = oracle::random_form(rng, n), f2 = oracle::random_form(rng, n);
      const CMat a = hamilton_map(f1).matrix(), b = hamilton_map(f2).matrix();
      const CMat want = -2.0 * (a * b - b * a);
      const CMat got = hamilton_map(poisson_bracket(f1, f2)).matrix();
      worst = std::max(worst, (got - want).norm() / std::max(want.norm(), 1e-300));
    }
    return Outcome{worst <= 1e-10, "100 pairs, max relative error " + fmt("%.2e", worst)};
  });

  const auto suite = oracle::lemma_suite(3, 50);

  // 3. The auxiliary form r is positive definite.
  criterion(3, 0, [&] {
    int pd = 0;
    double min_ratio = 1e300;
    for (const auto& q : suite) {
      const RForm r = r_form(q);
      pd += r.positive_definite ? 1 : 0;
      min_ratio = std::min(min_ratio, r.min_eigenvalue / q.norm());
    }
    return Outcome{suite.size() == 50 && pd == 50,
                   std::to_string(pd) + "/" + std::to_string(suite.size()) +
                       " positive definite, min lambda_min(R)/|Q| " + fmt("%.3e", min_ratio)};
  });

  // 4. Order bound on boundary rays.
  criterion(4, 0, [&] {
    const auto nil = order_on_ray(nil1d(), kPi / 2);
    bool ok = nil.k == 2;
    int rays = 0, max_k = 0;
    for (const auto& q : suite) {
      const Sector s = numerical_range(q);
      for (double theta : {s.theta_min(), s.theta_max()}) {
        const auto o = order_on_ray(q, theta);
        ok = ok && o.finite && o.k % 2 == 0 && o.k <= 4 * q.n() - 2;
        max_k = std::max(max_k, o.k);
        ++rays;
      }
    }
    return Outcome{ok, "nil1d order on pi/2 = " + std::to_string(nil.k) + "; " +
                           std::to_string(rays) + " boundary rays, max order " +
                           std::to_string(max_k)};
  });

  // 5. Resolvent bounded by the inverse distance to the numerical range.
  criterion(5, 30.0, [] {
    bool ok = true;
    double worst = 0.0;
    int points = 0;
    for (const auto& q : {ho1d(), nil1d(), mix2d()}) {
      const auto op = weyl_matrix(q, 40);
      const Sector s = numerical_range(q);
      const auto grid = pseudospectrum_grid(op, {-15.0, 15.0, -15.0, 15.0}, 20, 20);
      for (std::size_t i = 0; i < grid.z.size(); ++i) {
        const double d = s.distance(grid.z[i]);
        if (d <= 0.0) continue;
        ++points;
        const double v = grid.values[i] * d;
        worst = std::max(worst, v);
        ok = ok && v <= 1.0 + 1e-9;
      }
    }
    return Outcome{ok, std::to_string(points) + " grid points outside the sector, max ||R(z)|| d " +
                           fmt("%.12f", worst)};
  });

  // 6. Pseudospectral growth along the boundary ray i R_+.
  criterion(6, 60.0, [] {
    const auto op = weyl_matrix(nil1d(), 200);
    const ResolventEvaluator ev(op.a);
    std::vector<double> lx, ly;
    std::ostringstream norms;
    for (double eta : {10.0, 20.0, 40.0}) {
      const double v = ev.norm(cplx(0.0, eta));
      lx.push_back(std::log(eta));
      ly.push_back(std::log(v));
      norms << " " << eta << ":" << v;
    }
    const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
    double sxy = 0, sxx = 0;
    for (int i = 0; i < 3; ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    return Outcome{std::abs(slope + 1.0 / 3.0) <= 0.15,
                   "N = 200, slope " + fmt("%.4f", slope) + " (target -1/3), norms" + norms.str()};
  });

  // 7. Exponential decay of the truncated semigroup.
  criterion(7, 0, [] {
    const auto op = weyl_matrix(nil1d(), 60);
    const double a0 = decay_rate(nil1d()).a0;
    const double abscissa = spectral_abscissa(op.a);
    const auto p = semigroup_profile(op, 20.0, 200);
    const double slope = fit_log_slope(p.times, p.norms, 10.0, 20.0);
    double top = 0.0;
    for (double v : p.norms) top = std::max(top, v);
    const double e1 = std::abs(abscissa + a0) / a0;
    const double e2 = std::abs(slope - abscissa) / std::abs(abscissa);
    const bool ok = e1 <= 0.02 && e2 <= 0.01 && top <= 1.0 + 1e-12;
    return Outcome{ok, "abscissa " + fmt("%.6f", abscissa) + " vs -a0 " + fmt("%.6f", -a0) +
                           " (" + fmt("%.3f%%", 100 * e1) + "), tail slope " +
                           fmt("%.6f", slope) + " (" + fmt("%.3f%%", 100 * e2) +
                           "), max norm " + fmt("%.15f", top)};
  });

  // 8. Contour representation of the semigroup.
  criterion(8, 0, [] {
    const auto ho = weyl_matrix(ho1d(), 10);
    const auto cho = build_contour(ho1d(), ho);
    const double e_ho = contour_semigroup(ho, cho, 1.0).relative_error;
    const double l_ho = contour_lemma_check(ho, cho).relative_error;
    const auto nil = weyl_matrix(nil1d(), 40);
    const auto cnil = build_contour(nil1d(), nil);
    const double e_nil = contour_semigroup(nil, cnil, 2.0).relative_error;
    const double l_nil = contour_lemma_check(nil, cnil).relative_error;
    const bool ok = e_ho <= 1e-5 && e_nil <= 1e-5 && l_ho <= 1e-6 && l_nil <= 1e-6;
    return Outcome{ok, "ho1d " + fmt("%.2e", e_ho) + " / lemma " + fmt("%.2e", l_ho) +
                           "; nil1d " + fmt("%.2e", e_nil) + " / lemma " + fmt("%.2e", l_nil)};
  });

  // 9. Tensorization of mix2d.
  criterion(9, 0, [] {
    const auto t = split_real_eigenspaces(mix2d());
    const RMat j1 = symplectic_j(1), jn = symplectic_j(2);
    bool ok = t.n_s() == 1 && t.q_tilde.has_value() && t.mu.size() == 1;
    if (!ok) return Outcome{false, "unexpected tensorization shape"};
    const double sympl = (t.s_basis.transpose() * jn * t.s_basis - j1).cwiseAbs().maxCoeff();
    const double kern = (hamilton_map(mix2d()).re() * t.s_basis).cwiseAbs().maxCoeff();
    const double coef = (t.q_tilde->matrix() + CMat::Identity(2, 2)).cwiseAbs().maxCoeff();
    ok = sympl <= 1e-9 && kern <= 1e-9 && std::abs(t.mu[0] - 1.0) <= 1e-9 && coef <= 1e-8;
    return Outcome{ok, "dim S = 2, symplectic err " + fmt("%.1e", sympl) + ", |Re F S| " +
                           fmt("%.1e", kern) + ", mu1 " + fmt("%.12f", t.mu[0]) +
                           ", q_tilde + x^2 + xi^2 coefficient err " + fmt("%.1e", coef)};
  });

  // 10. Hypothesis failures.
  criterion(10, 0, [] {
    const bool neg_rejected =
        check_elliptic(neg1d()).verdict == EllipticityCertificate::Verdict::not_elliptic;
    bool neg_throws = false;
    try {
      numerical_range(neg1d());
    } catch (const HypothesisError&) {
      neg_throws = true;
    }
    const bool zero = classify_real_part(iho1d()).kind == RealPartClass::Kind::zero;
    int code = 0;
    try {
      decay_rate(iho1d());
    } catch (const Error& e) {
      code = e.exit_code();
    }
    const auto op = weyl_matrix(iho1d(), 20);
    const double isometry = std::abs(opnorm(matrix_exponential(op.a, 3.0)) - 1.0);
    const bool ok = neg_rejected && neg_throws && zero && code == 3 && isometry <= 1e-10;
    return Outcome{ok, std::string("neg1d ") + (neg_rejected ? "not elliptic" : "ACCEPTED") +
                           "; iho1d class " + (zero ? "zero" : "?") + ", decay_rate exit code " +
                           std::to_string(code) + ", | ||e^{3A}|| - 1 | " + fmt("%.1e", isometry)};
  });

  return failures == 0 ? 0 : 1;
}
