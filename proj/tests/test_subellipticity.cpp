#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qsemi/catalog.hpp"
#include "qsemi/errors.hpp"
#include "qsemi/subellipticity.hpp"

using namespace qsemi;

TEST_SUITE("subellipticity") {
  TEST_CASE("r_form examples") {
    // nil1d: Re Q = -e1 e1^T, Im F maps xi to x, so r = x^2 + xi^2.
    const RForm r = r_form(nil1d());
    CHECK(r.positive_definite);
    CHECK((r.r - RMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(r.min_eigenvalue == doctest::Approx(1.0));

    // ho1d: Im F = 0, so only the j = 0 term survives.
    CHECK(r_form(ho1d()).min_eigenvalue == doctest::Approx(1.0));

    // -x^2 alone: r = x^2 is degenerate.
    const auto x2 = ComplexQuadraticForm::from_parts((RMat(2, 2) << -1, 0, 0, 0).finished(),
                                                     RMat::Zero(2, 2));
    CHECK_FALSE(r_form(x2).positive_definite);
    CHECK_THROWS_AS(r_form(x2 * cplx(-1.0, 0.0)), HypothesisError);  // Re Q not <= 0
  }

  TEST_CASE("r_form is positive definite on the random elliptic suite") {
    const auto suite = oracle::lemma_suite(31, 50);
    REQUIRE(suite.size() == 50);
    for (const auto& q : suite) {
      const RForm r = r_form(q);
      CHECK(r.positive_definite);
      // Independent evaluation at random points.
      std::mt19937_64 rng(32);
      const RMat imf = hamilton_map(q).im();
      for (int p = 0; p < 5; ++p) {
        RVec y = oracle::random_point(rng, q.dim());
        const RVec x = y;
        double want = 0.0;
        for (int j = 0; j < q.dim(); ++j) {
          want -= evaluate(q, y).real();
          y = imf * y;
        }
        CHECK(x.dot(r.r * x) == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("iterated bracket matches repeated finite-difference brackets") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 1 + trial % 2;
      const auto q = ComplexQuadraticForm::from_parts(oracle::random_nsd(rng, 2 * n, 1),
                                                      oracle::random_symmetric(rng, 2 * n));
      for (int m = 0; m < 3; ++m) {
        const auto prev = iterated_bracket(q, m);
        const auto next = iterated_bracket(q, m + 1);
        const RVec x = oracle::random_point(rng, 2 * n);
        const cplx want = oracle::fd_bracket(q.imag_part(), prev, x);
        CHECK(std::abs(evaluate(next, x) - want) <= 1e-6 * (1.0 + std::abs(want)));
      }
    }
  }

  TEST_CASE("chain constant") {
    CHECK(chain_constant(0) == 1.0);
    CHECK(chain_constant(1) == 8.0);
    CHECK(chain_constant(2) == 96.0);
  }

  TEST_CASE("order examples") {
    const auto o = order_at_point(nil1d(), (RVec(2) << 0.0, 1.0).finished());
    CHECK(o.finite);
    CHECK(o.j0 == 1);
    CHECK(o.k == 2);
    CHECK(std::abs(o.bracket_value - cplx(-8.0, 0.0)) < 1e-12);

    const auto z = order_at_point(nil1d(), (RVec(2) << 1.0, 0.0).finished());
    CHECK(z.k == 0);
    CHECK(z.bracket_value.real() == doctest::Approx(-1.0));

    const auto ray = order_on_ray(nil1d(), kPi / 2);
    CHECK(ray.k == 2);
    CHECK(ray.k == 4 * nil1d().n() - 2);

    CHECK_THROWS_AS(order_at_point(nil1d(), RVec::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(order_on_ray(nil1d(), 0.0), HypothesisError);
    // i(x^2 + xi^2): Re q vanishes, no finite order anywhere.
    CHECK_THROWS_AS(order_at_point(iho1d(), (RVec(2) << 1.0, 0.0).finished()), HypothesisError);
  }

  TEST_CASE("order is homogeneous along rays of phase space") {
    std::mt19937_64 rng(34);
    for (const auto& q : oracle::lemma_suite(35, 10)) {
      const RVec x = oracle::random_point(rng, q.dim());
      const auto a = order_at_point(q, x);
      const auto b = order_at_point(q, RVec(3.0 * x));
      CHECK(a.k == b.k);
      CHECK(std::abs(b.bracket_value - 9.0 * a.bracket_value) <=
            1e-9 * std::abs(b.bracket_value));
    }
  }

  TEST_CASE("order at random points is finite and at most 4n - 2") {
    std::mt19937_64 rng(36);
    for (const auto& q : oracle::lemma_suite(31, 50)) {
      for (int p = 0; p < 20; ++p) {
        const auto o = order_at_point(q, oracle::random_point(rng, q.dim()));
        CHECK(o.finite);
        CHECK(o.k >= 0);
        CHECK(o.k <= 4 * q.n() - 2);
      }
    }
  }

  TEST_CASE("boundary-ray orders are even and at most 4n - 2") {
    for (const auto& q : oracle::lemma_suite(31, 50)) {
      const Sector s = numerical_range(q);
      for (double theta : {s.theta_min(), s.theta_max()}) {
        const auto o = order_on_ray(q, theta);
        CHECK(o.finite);
        CHECK(o.k % 2 == 0);
        CHECK(o.k <= 4 * q.n() - 2);
        CHECK(o.bracket_value.real() < 0.0);
        CHECK(std::abs(std::arg(evaluate(q, o.point) * std::polar(1.0, -theta))) < 1e-6);
      }
    }
  }
}
