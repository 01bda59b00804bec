#include <doctest.h>

#include <cmath>
#include <random>

#include "pinchlab/spaceform.hpp"

using namespace pinchlab;

TEST_SUITE_BEGIN("spaceform");

TEST_CASE("delta-trig reproduces elementary functions") {
  // hand-checked reference values
  CHECK(s_delta(0.0, 1.7) == 1.7);
  CHECK(s_delta(1.0, 1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
  CHECK(s_delta(-1.0, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  CHECK(c_delta(-1.0, 2.0) == doctest::Approx(3.7621956910836314).epsilon(1e-15));
  CHECK(c_delta(1.0, 0.5) == doctest::Approx(std::cos(0.5)).epsilon(1e-15));
  CHECK(phi_delta(0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi_delta(-1.0, 1.0) == doctest::Approx(0.5430806348152437).epsilon(1e-14));
  CHECK(cot_delta(-1.0, 0.7) == doctest::Approx(1.6546216358026299).epsilon(1e-14));
  // curvature scaling: s_delta(4, r) = sin(2r)/2
  CHECK(s_delta(4.0, 0.3) == doctest::Approx(0.5 * std::sin(0.6)).epsilon(1e-15));
}

TEST_CASE("pythagorean identity over a (delta, r) grid") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dd(-2.0, 2.0), dr(1e-6, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double delta = dd(rng);
    double r = dr(rng);
    if (delta > 0.0) r = std::min(r, 0.99 * M_PI / std::sqrt(delta));
    const double c = c_delta(delta, r), s = s_delta(delta, r);
    CHECK(std::abs(c * c + delta * s * s - 1.0) < 1e-12);
  }
}

TEST_CASE("s_delta_inverse round trip") {
  for (double delta : {-1.5, -1.0, 0.0, 1.0, 2.5})
    for (double r : {1e-5, 0.1, 0.7, 1.3}) {
      if (delta > 0.0 && r >= 0.99 * M_PI / std::sqrt(delta)) continue;
      const double back = s_delta_inverse(delta, s_delta(delta, r));
      // the sphere branch folds at the equator
      if (delta > 0.0 && r > 0.5 * M_PI / std::sqrt(delta)) continue;
      CHECK(back == doctest::Approx(r).epsilon(1e-10));
    }
}

TEST_CASE("cot_delta series branch matches the ratio") {
  for (double delta : {-1.0, 0.0, 1.0}) {
    const double r = 5e-5;  // inside the series window
    const double series = cot_delta(delta, r);
    const double ratio = c_delta(delta, r) / s_delta(delta, r);
    CHECK(series == doctest::Approx(ratio).epsilon(1e-12));
  }
}

TEST_CASE("radial domain errors") {
  CHECK_THROWS_AS(s_delta(1.0, M_PI + 0.1), std::domain_error);
  CHECK_THROWS_AS(s_delta(0.0, -0.1), std::domain_error);
  CHECK_THROWS_AS(cot_delta(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(s_delta_inverse(1.0, 1.5), std::domain_error);
}

TEST_CASE("exp/log/distance consistency on curved charts") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (double delta : {1.0, -1.0, 0.5, -2.0}) {
    const auto model = AmbientModel::make(delta);
    for (int i = 0; i < 50; ++i) {
      Vec p = model.base_point();
      Vec v(g(rng), g(rng), g(rng), 0.0);
      v = model.project_tangent(p, v);
      v *= 0.5 / std::max(1.0, model.norm(v));
      const Vec q = model.exp(p, v);
      CHECK(model.constraint_violation(q) < 1e-12);
      CHECK(model.distance(p, q) == doctest::Approx(model.norm(v)).epsilon(1e-10));
      const Vec w = model.log(p, q);
      CHECK(model.norm(w - v) < 1e-10);
      const Vec back = model.exp(p, w);
      CHECK((back - q).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("tangent basis is orthonormal and oriented") {
  for (double delta : {0.0, 1.0, -1.0}) {
    const auto model = AmbientModel::make(delta);
    Vec p = model.project(model.base_point() + Vec(0.1, -0.2, 0.3, 0.0));
    if (delta == 0.0) p = Vec(0.1, -0.2, 0.3, 0.0);
    const auto b = model.tangent_basis(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(model.dot(b[i], b[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    if (delta != 0.0)
      for (int i = 0; i < 3; ++i) CHECK(std::abs(model.dot(b[i], p)) < 1e-10);
  }
}

TEST_CASE("radial_data gradient and hessian coefficient") {
  const auto model = AmbientModel::make(-1.0);
  const Vec c = model.base_point();
  Vec v = model.project_tangent(c, Vec(0.3, 0.1, -0.2, 0.0));
  const Vec x = model.exp(c, v);
  const auto rd = radial_data(model, c, x);
  CHECK(rd.r == doctest::Approx(model.norm(v)).epsilon(1e-12));
  CHECK(model.norm(rd.grad_r) == doctest::Approx(1.0).epsilon(1e-10));
  // grad r points away from the center
  CHECK(model.dot(rd.grad_r, model.log(x, c)) < 0.0);
  CHECK(rd.hess_coeff == doctest::Approx(cot_delta(-1.0, rd.r)).epsilon(1e-12));
}

TEST_CASE("geodesic sphere reference values") {
  // euclidean unit sphere: H = 1, lambda1 = n = 2
  auto ref = geodesic_sphere_reference(0.0, 2, 1.0);
  CHECK(ref.H == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ref.lambda1 == doctest::Approx(2.0).epsilon(1e-15));
  // hyperbolic R = 1: H = coth(1), lambda1 = 2/sinh(1)^2
  ref = geodesic_sphere_reference(-1.0, 2, 1.0);
  CHECK(ref.H == doctest::Approx(1.0 / std::tanh(1.0)).epsilon(1e-14));
  CHECK(ref.lambda1 == doctest::Approx(2.0 / std::pow(std::sinh(1.0), 2)).epsilon(1e-14));
}

TEST_SUITE_END();
