#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qsemi/catalog.hpp"
#include "qsemi/errors.hpp"
#include "qsemi/semigroup.hpp"
#include "qsemi/spectral.hpp"

using namespace qsemi;

namespace {

bool has_eig(const std::vector<HamiltonEig>& s, cplx lambda, int r, double tol = 1e-10) {
  for (const auto& h : s) {
    if (std::abs(h.lambda - lambda) <= tol && h.multiplicity == r) return true;
  }
  return false;
}

void check_normal_form(const RMat& a, const NormalForm& nf) {
  const int n = static_cast<int>(a.rows() / 2);
  const RMat j = symplectic_j(n);
  CHECK((nf.chi.transpose() * j * nf.chi - j).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((nf.chi.transpose() * a * nf.chi - nf.coefficients()).cwiseAbs().maxCoeff() <= 1e-8);
}

}  // namespace

TEST_SUITE("spectral-analysis") {
  TEST_CASE("hamilton_spectrum examples") {
    const auto ho = hamilton_spectrum(hamilton_map(ho1d()));
    CHECK(ho.size() == 2);
    CHECK(has_eig(ho, cplx(0, 1), 1));
    CHECK(has_eig(ho, cplx(0, -1), 1));

    const auto nil = hamilton_spectrum(hamilton_map(nil1d()));
    const cplx l = std::pow(2.0, 0.25) * std::polar(1.0, kPi / 8);
    CHECK(has_eig(nil, l, 1));
    CHECK(has_eig(nil, -l, 1));

    const auto iho = hamilton_spectrum(hamilton_map(iho1d()));
    CHECK(has_eig(iho, cplx(1, 0), 1));
    CHECK(has_eig(iho, cplx(-1, 0), 1));

    // Multiplicity from a repeated eigenvalue.
    const auto ho2 = hamilton_spectrum(
        hamilton_map(ComplexQuadraticForm(2, -CMat::Identity(4, 4))));
    CHECK(has_eig(ho2, cplx(0, 1), 2));
  }

  TEST_CASE("+- pairing and total multiplicity on random elliptic forms") {
    std::mt19937_64 rng(21);
    int tested = 0;
    while (tested < 50) {
      const int n = 1 + tested % 3;
      const auto q = oracle::random_elliptic(rng, n);
      if (!check_elliptic(q).elliptic()) continue;
      ++tested;
      const auto s = hamilton_spectrum(hamilton_map(q));
      int total = 0;
      const double scale = hamilton_map(q).matrix().norm();
      for (const auto& h : s) {
        total += h.multiplicity;
        CHECK(has_eig(s, -h.lambda, h.multiplicity, 1e-8 * scale));
      }
      CHECK(total == 2 * n);
    }
  }

  TEST_CASE("classify_real_part examples") {
    const auto ho = classify_real_part(ho1d());
    CHECK(ho.kind == RealPartClass::Kind::non_nilpotent);
    CHECK(ho.k == 1);
    CHECK(ho.l == 0);
    CHECK(ho.lambdas.at(0) == doctest::Approx(1.0).epsilon(1e-12));
    const auto nil = classify_real_part(nil1d());
    CHECK(nil.kind == RealPartClass::Kind::nilpotent);
    CHECK(nil.k == 0);
    CHECK(nil.l == 1);
    const auto iho = classify_real_part(iho1d());
    CHECK(iho.kind == RealPartClass::Kind::zero);
    CHECK(iho.k + iho.l == 0);
    CHECK_THROWS_AS(classify_real_part(ho1d() * cplx(-1.0, 0.0)), HypothesisError);
  }

  TEST_CASE("symplectic_normal_form examples") {
    const auto ho = symplectic_normal_form(ho1d());
    CHECK((ho.chi - RMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ho.k == 1);
    const auto x2 = ComplexQuadraticForm::from_parts((RMat(2, 2) << -1, 0, 0, 0).finished(),
                                                     RMat::Zero(2, 2));
    const auto nx = symplectic_normal_form(x2);
    CHECK((nx.chi - RMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(nx.k == 0);
    CHECK(nx.l == 1);
    // -Re q = (x + xi)^2.
    const RMat a = (RMat(2, 2) << 1, 1, 1, 1).finished();
    const auto nxx = symplectic_normal_form(ComplexQuadraticForm::from_parts(-a, RMat::Zero(2, 2)));
    CHECK(nxx.k == 0);
    CHECK(nxx.l == 1);
    check_normal_form(a, nxx);
  }

  TEST_CASE("normal form invariants on random semidefinite forms of mixed rank") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 3;
      const int rank = 1 + static_cast<int>(rng() % (2 * n));
      const RMat a = -oracle::random_nsd(rng, 2 * n, rank);
      const auto q = ComplexQuadraticForm::from_parts(-a, RMat::Zero(2 * n, 2 * n));
      const NormalForm nf = symplectic_normal_form(q);
      CHECK(2 * nf.k + nf.l == rank);
      check_normal_form(a, nf);
      for (std::size_t i = 1; i < nf.lambdas.size(); ++i) CHECK(nf.lambdas[i - 1] >= nf.lambdas[i]);
    }
    // Oscillator plus rank-one plus kernel in one form: x1^2 + xi1^2 + x2^2 (n = 3).
    RMat a = RMat::Zero(6, 6);
    a(0, 0) = a(3, 3) = 2.0;
    a(1, 1) = 1.0;
    const auto nf = symplectic_normal_form(ComplexQuadraticForm::from_parts(-a, RMat::Zero(6, 6)));
    CHECK(nf.k == 1);
    CHECK(nf.l == 1);
    CHECK(nf.lambdas.at(0) == doctest::Approx(2.0));
    check_normal_form(a, nf);
  }

  TEST_CASE("nilpotency cross-check agrees with (Re F)^2 = 0") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 1 + trial % 3;
      const auto q = ComplexQuadraticForm::from_parts(oracle::random_nsd(rng, 2 * n, 1),
                                                      oracle::random_symmetric(rng, 2 * n));
      const auto c = classify_real_part(q);
      const RMat ref = hamilton_map(q).re();
      CHECK(c.kind == RealPartClass::Kind::nilpotent);
      CHECK((ref * ref).norm() <= 1e-9 * ref.squaredNorm());
    }
  }

  TEST_CASE("split_real_eigenspaces examples") {
    const auto ho = split_real_eigenspaces(ho1d());
    CHECK(ho.n_s() == 0);
    REQUIRE(ho.q_tilde);
    CHECK((ho.q_tilde->matrix() - ho1d().matrix()).norm() < 1e-12);

    const auto mix = split_real_eigenspaces(mix2d());
    CHECK(mix.n_s() == 1);
    CHECK(mix.epsilon == 1);
    CHECK(mix.mu.at(0) == doctest::Approx(1.0).epsilon(1e-12));
    // S is the coordinate plane (x2, xi2).
    CHECK(std::abs(mix.s_basis(0, 0)) + std::abs(mix.s_basis(2, 0)) < 1e-12);
    CHECK(std::abs(mix.s_basis(0, 1)) + std::abs(mix.s_basis(2, 1)) < 1e-12);
    REQUIRE(mix.q_tilde);
    CHECK((mix.q_tilde->matrix() + CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);

    const auto iho = split_real_eigenspaces(iho1d());
    CHECK(iho.n_s() == 1);
    CHECK(iho.n_perp() == 0);
    CHECK_FALSE(iho.q_tilde.has_value());

    CHECK_THROWS_AS(split_real_eigenspaces(neg1d()), HypothesisError);
  }

  TEST_CASE("tensorization reconstructs q in the combined basis") {
    // Random symplectic change of coordinates applied to mix2d.
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 10; ++trial) {
      const RMat h = oracle::random_symmetric(rng, 4) * 0.3;
      const RMat j = symplectic_j(2);
      const RMat m = matrix_exponential(CMat(j * h), 1.0).real();  // e^{JH} is symplectic
      const auto q = mix2d().pullback(m);
      const Tensorization t = split_real_eigenspaces(q);
      REQUIRE(t.n_s() == 1);
      const RMat b = t.combined_basis();
      CHECK((b.transpose() * j * b - j).cwiseAbs().maxCoeff() < 1e-9);
      const RMat ref = hamilton_map(q).re();
      for (Eigen::Index c = 0; c < t.s_basis.cols(); ++c) {
        CHECK((ref * t.s_basis.col(c)).norm() <= 1e-9 * std::max(1.0, t.s_basis.col(c).norm()) *
                                                      std::max(1.0, ref.norm()));
      }
      // q o B = q_tilde(x', xi') + i eps mu (x''^2 + xi''^2).
      CMat expected = CMat::Zero(4, 4);
      expected(0, 0) = t.q_tilde->matrix()(0, 0);
      expected(0, 2) = t.q_tilde->matrix()(0, 1);
      expected(2, 0) = t.q_tilde->matrix()(1, 0);
      expected(2, 2) = t.q_tilde->matrix()(1, 1);
      expected(1, 1) = expected(3, 3) = cplx(0.0, t.epsilon * t.mu[0]);
      const CMat bc = b.cast<cplx>();
      CHECK((bc.transpose() * q.matrix() * bc - expected).cwiseAbs().maxCoeff() < 1e-8);
    }
  }

  TEST_CASE("operator_spectrum examples") {
    const auto ho = operator_spectrum(ho1d(), 10.0);
    REQUIRE(ho.points.size() == 5);
    for (int k = 0; k < 5; ++k) {
      CHECK(std::abs(ho.points[k].z - cplx(-(2.0 * k + 1), 0.0)) < 1e-10);
    }
    CHECK(ho.a0 == doctest::Approx(1.0).epsilon(1e-12));

    const auto mix = operator_spectrum(mix2d(), 4.0);
    std::vector<cplx> want;
    for (int k1 = 0; k1 < 3; ++k1)
      for (int k2 = 0; k2 < 3; ++k2) {
        const cplx z(-(2.0 * k1 + 1), 2.0 * k2 + 1);
        if (std::abs(z) <= 4.0) want.push_back(z);
      }
    CHECK(mix.points.size() == want.size());
    for (cplx z : want) {
      bool found = false;
      for (const auto& p : mix.points) found = found || std::abs(p.z - z) < 1e-10;
      CHECK(found);
    }
    CHECK(mix.a0 == doctest::Approx(1.0).epsilon(1e-12));

    const auto nil = operator_spectrum(nil1d(), 5.0);
    const cplx w = std::pow(2.0, 0.25) * std::polar(1.0, 5 * kPi / 8);
    REQUIRE(nil.points.size() == 2);  // |3 w| = 3.57, |5 w| = 5.95
    CHECK(std::abs(nil.points[0].z - w) < 1e-10);
    CHECK(std::abs(nil.points[1].z - 3.0 * w) < 1e-10);
    CHECK(nil.a0 == doctest::Approx(0.455090).epsilon(1e-6));
    CHECK(operator_spectrum(nil1d(), 6.0).points.size() == 3);

    CHECK_THROWS_AS(operator_spectrum(neg1d(), 5.0), HypothesisError);
  }

  TEST_CASE("spectrum invariants on random elliptic forms with Re q <= 0") {
    const auto suite = oracle::lemma_suite(25, 20);
    for (const auto& q : suite) {
      const auto rep = operator_spectrum(q, 12.0);
      double best = 1e300;
      for (const auto& p : rep.points) {
        CHECK(p.z.real() <= -rep.a0 + 1e-10);
        CHECK(rep.sector.contains(p.z, 1e-8));
        best = std::min(best, -p.z.real());
      }
      if (!rep.points.empty()) CHECK(best == doctest::Approx(rep.a0).epsilon(1e-10));
    }
  }

  TEST_CASE("decay_rate examples") {
    const auto ho = decay_rate(ho1d());
    CHECK(ho.a0 == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(ho.constant_free_rate);
    CHECK(*ho.constant_free_rate == doctest::Approx(1.0).epsilon(1e-12));
    const auto nil = decay_rate(nil1d());
    CHECK(nil.a0 == doctest::Approx(std::pow(2.0, 0.25) * std::cos(3 * kPi / 8)).epsilon(1e-12));
    CHECK_FALSE(nil.constant_free_rate.has_value());
    CHECK(decay_rate(rot1d(kPi / 4)).a0 == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-12));
    CHECK_THROWS_AS(decay_rate(iho1d()), HypothesisError);
    CHECK_THROWS_AS(decay_rate(neg1d()), HypothesisError);
  }
}
