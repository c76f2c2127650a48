#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "sei/oracle.hpp"
#include "sei/so3kernels.hpp"
#include "test_support.hpp"

using namespace sei;
using sei::testing::max_abs_diff;

TEST_CASE("hat builds the skew generator") {
  CHECK(hat({0, 0, 0}) == Mat3::zero());

  const Vec3 r = hat({0, 0, 1}) * Vec3{1, 0, 0};
  CHECK(r == Vec3{0, -1, 0});

  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vec3 b = sei::testing::random_vec(rng, 5.0);
    const Mat3 s = hat(b);
    CHECK(s.transposed() + s == Mat3::zero());
    const Vec3 v = sei::testing::random_vec(rng, 1.0);
    const Vec3 sv = s * v;
    const Vec3 c = cross(v, b);
    for (std::size_t k = 0; k < 3; ++k) CHECK(sv[k] == doctest::Approx(c[k]).epsilon(1e-15));
  }
}

TEST_CASE("LinearPart invariants") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const LinearPart lp(sei::testing::random_vec(rng, 10.0));
    CHECK(lp.s().transposed() + lp.s() == Mat3::zero());
    const double bb = dot(lp.b0(), lp.b0());
    CHECK(std::abs(lp.theta() * lp.theta() - bb) <= 4 * std::numeric_limits<double>::epsilon() * bb);
    CHECK(lp.s2() == lp.s() * lp.s());
  }
}

TEST_CASE("exp_so3 closed-form values") {
  SUBCASE("zero field gives identity for any t") {
    const LinearPart lp;
    for (double t : {-3.0, 0.0, 1e-9, 0.5, 7.0}) CHECK(exp_so3(t, lp) == Mat3::identity());
  }
  SUBCASE("quarter turn about z") {
    const LinearPart lp({0, 0, 1});
    const Mat3 r = exp_so3(std::numbers::pi / 2, lp);
    const Mat3 expected{{0, 1, 0, -1, 0, 0, 0, 0, 1}};
    CHECK(max_abs_diff(r, expected) <= 1e-15);
    const Vec3 v = r * Vec3{1, 0, 0};
    CHECK(std::abs(v.x) <= 1e-15);
    CHECK(v.y == doctest::Approx(-1.0).epsilon(1e-15));
  }
}

TEST_CASE("exp_so3 matches the truncated-series oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t_dist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const LinearPart lp(sei::testing::random_in_ball(rng, 2.0));
    const double t = t_dist(rng);
    worst = std::max(worst, max_abs_diff(exp_so3(t, lp), oracle::exp_series(t, lp.s())));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("phi1_so3 values and quadrature oracle") {
  SUBCASE("zero field is exactly identity") {
    const LinearPart lp;
    for (double t : {-2.0, 1e-7, 0.3, 5.0}) CHECK(phi1_so3(t, lp) == Mat3::identity());
  }
  SUBCASE("t below threshold is close to identity") {
    const LinearPart lp({1, 1, 1});
    CHECK(max_abs_diff(phi1_so3(1e-13, lp), Mat3::identity()) <= 1e-12);
  }
  SUBCASE("random samples agree with 64-node Gauss quadrature") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> t_dist(1e-3, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const LinearPart lp(sei::testing::random_in_ball(rng, 2.0));
      const double t = t_dist(rng);
      worst = std::max(worst, max_abs_diff(phi1_so3(t, lp), sei::testing::phi1_quadrature(t, lp.s())));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("Rodrigues invariants") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t_dist(-10.0, 10.0);
  std::uniform_real_distribution<double> h_dist(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const LinearPart lp(sei::testing::random_in_ball(rng, 10.0));
    const double t = t_dist(rng);

    const Mat3 r = exp_so3(t, lp);
    CHECK(frobenius_norm(r.transposed() * r - Mat3::identity()) <= 1e-12);

    // Group property at moderate angles.
    const LinearPart small(sei::testing::random_in_ball(rng, 2.0));
    const double a = 0.5 * h_dist(rng);
    const double b = 0.5 * h_dist(rng);
    CHECK(max_abs_diff(exp_so3(a + b, small), exp_so3(a, small) * exp_so3(b, small)) <= 1e-12);

    const double h = h_dist(rng);
    const auto phi = sei::testing::dense(phi1_so3(h, lp));
    CHECK(sei::testing::spectral_norm(phi) <= 1.0 + 1e-12);
  }
}

TEST_CASE("small-angle branch continuity") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const Vec3 dir = sei::testing::random_in_ball(rng, 1.0);
    const double theta = 0.1 + 9.9 * std::abs(dir.x);
    const LinearPart lp((theta / norm(dir)) * dir);
    const double t_star = kSmallAngle / lp.theta();
    const double below = std::nextafter(t_star, 0.0);
    const double above = std::nextafter(t_star, 1.0);
    CHECK(max_abs_diff(exp_so3(below, lp), exp_so3(above, lp)) <= 1e-13);
    CHECK(max_abs_diff(phi1_so3(below, lp), phi1_so3(above, lp)) <= 1e-13);
  }
}

TEST_CASE("exp_hL_apply") {
  std::mt19937_64 rng(7);
  SUBCASE("zero velocity block is a fixed point") {
    const LinearPart lp({0.3, -1.2, 2.0});
    const State8 u{{1, 2, 3}, 4, {}, 0.0};
    CHECK(exp_hL_apply(0.7, lp, u) == u);
  }
  SUBCASE("zero field reduces to drift") {
    const LinearPart lp;
    const State8 u{{1, 2, 3}, 0.5, {0.1, -0.2, 0.3}, 1.1};
    const double h = 0.25;
    const State8 r = exp_hL_apply(h, lp, u);
    CHECK(r.x == u.x + h * u.v);
    CHECK(r.tbar == u.tbar + h * u.gamma);
    CHECK(r.v == u.v);
    CHECK(r.gamma == u.gamma);
  }
  SUBCASE("norm bound on unit states") {
    std::uniform_real_distribution<double> h_dist(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
      const LinearPart lp(sei::testing::random_in_ball(rng, 5.0));
      const State8 u = sei::testing::random_raw_state(rng, 1.0);
      const State8 unit = (1.0 / norm(u)) * u;
      const double h = h_dist(rng);
      CHECK(norm(exp_hL_apply(h, lp, unit)) <= 1.0 + h + 1e-12);
    }
  }
  SUBCASE("h then -h is the identity") {
    std::uniform_real_distribution<double> h_dist(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const LinearPart lp(sei::testing::random_in_ball(rng, 5.0));
      const State8 u = sei::testing::random_raw_state(rng, 3.0);
      const double h = h_dist(rng);
      const State8 back = exp_hL_apply(-h, lp, exp_hL_apply(h, lp, u));
      CHECK(norm(back - u) <= 1e-13 * std::max(1.0, norm(u)));
    }
  }
  SUBCASE("2h application equals two h applications") {
    for (int i = 0; i < 200; ++i) {
      const LinearPart lp(sei::testing::random_in_ball(rng, 3.0));
      const State8 u = sei::testing::random_raw_state(rng, 2.0);
      const State8 once = exp_hL_apply(0.2, lp, u);
      const State8 twice = exp_hL_apply(0.1, lp, exp_hL_apply(0.1, lp, u));
      CHECK(sei::testing::max_abs_diff(once, twice) <= 1e-14);
    }
  }
}
