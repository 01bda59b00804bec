#include <doctest.h>

#include <cmath>

#include "pinchlab/curvature.hpp"
#include "pinchlab/gluedspheres.hpp"
#include "pinchlab/mesh.hpp"
#include "pinchlab/spectral.hpp"

using namespace pinchlab;

TEST_SUITE_BEGIN("gluedspheres");

TEST_CASE("profile coefficients satisfy their defining identities") {
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto c = coefficients(eps);
    // the quadratic fixing r0 and the asymptotic r0 = 1 -+ eps^2 log eps + O(eps^2)
    for (int sheet : {1, -1}) {
      const double r0 = sheet > 0 ? c.r0_plus : c.r0_minus;
      CHECK(std::abs(r0 * r0 - (1.0 + sheet * c.a0) * r0 - eps * eps / 12.0) < 1e-12);
      CHECK(std::abs(r0 - (1.0 - sheet * eps * eps * std::log(eps))) < 3.0 * eps * eps);
    }
    CHECK(c.r0_plus > 1.0);
    CHECK(c.r0_minus < 1.0);
    CHECK(c.b1_plus == doctest::Approx(1.0 / (3.0 * eps * c.r0_plus)).epsilon(1e-14));
  }
  CHECK_THROWS(coefficients(0.0));
  CHECK_THROWS(coefficients(0.3));
}

TEST_CASE("profile is C1 across the region joints") {
  const auto c = coefficients(0.1);
  const double fd_h = 1e-7;
  for (int sheet : {1, -1}) {
    CHECK(profile(c, sheet, 0.01) == doctest::Approx(1.0).epsilon(1e-14));  // throat
    for (double r : {0.1, 0.2, 0.3}) {
      const double left = (profile(c, sheet, r) - profile(c, sheet, r - fd_h)) / fd_h;
      const double right = (profile(c, sheet, r + fd_h) - profile(c, sheet, r)) / fd_h;
      CHECK(left == doctest::Approx(right).epsilon(1e-5));
    }
    // sphere region value
    const double r0 = sheet > 0 ? c.r0_plus : c.r0_minus;
    CHECK(profile(c, sheet, 0.3 + r0) == doctest::Approx(0.0).epsilon(1e-7));
  }
  CHECK_THROWS(profile(c, 1, 0.001));
  CHECK_THROWS(profile(c, 1, 2.0));
  CHECK_THROWS(profile(c, 2, 0.1));
}

TEST_CASE("glued mesh is a closed genus-0 surface") {
  FamilyParams params;
  params.eps = 0.1;
  params.n_r = 64;
  params.n_theta = 32;
  const auto glued = build_glued_mesh(params);
  validate(glued.mesh);
  CHECK(euler_characteristic(glued.mesh) == 2);
  CHECK(glued.min_quality > 0.05);
  CHECK(glued.sheet_label.size() == glued.mesh.vertices.size());
  CHECK(static_cast<int>(glued.throat_ring.size()) == params.n_theta);
  for (int v : glued.throat_ring) {
    CHECK(glued.mesh.vertices[v].head<2>().norm() == doctest::Approx(0.01).epsilon(1e-10));
    CHECK(glued.mesh.vertices[v][2] == doctest::Approx(1.0).epsilon(1e-12));
  }
  int outer = 0;
  for (int l : glued.sheet_label) outer += (l == 0);
  CHECK(outer > 0);
  CHECK(outer < static_cast<int>(glued.sheet_label.size()));
}

TEST_CASE("parameter validation and extension points") {
  FamilyParams params;
  params.eps = 0.1;
  CHECK_THROWS_WITH_AS(static_cast<void>(build_glued_mesh([&] {
                         auto p = params;
                         p.l = 2;
                         return p;
                       }())),
                       "build_glued_mesh: multi-neck junctions (l > 1) not implemented",
                       std::runtime_error);
  CHECK_THROWS(static_cast<void>(build_glued_mesh([&] {
    auto p = params;
    p.l = 0;
    return p;
  }())));
  CHECK_THROWS(static_cast<void>(build_glued_mesh([&] {
    auto p = params;
    p.n_r = 32;
    return p;
  }())));
  auto chained = params;
  chained.p = 3;
  chained.n_r = 64;
  chained.n_theta = 32;
  const auto three = build_glued_mesh(chained);
  validate(three.mesh);
  CHECK(euler_characteristic(three.mesh) == 2);
}

TEST_CASE("regional analytic curvatures") {
  const auto c = coefficients(0.1);
  // catenoid: +-eps^2/r^2
  auto k = analytic_regional_curvatures(c, 1, 0.02);
  CHECK(k[0] == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(k[1] == doctest::Approx(-25.0).epsilon(1e-12));
  // first glue joint continues the catenoid values at tau = 0
  k = analytic_regional_curvatures(c, 1, 0.1);
  CHECK(k[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k[1] == doctest::Approx(-1.0).epsilon(1e-12));
  // plane at tau = 1 (r = 2 eps): both vanish
  k = analytic_regional_curvatures(c, -1, 0.2);
  CHECK(std::abs(k[0]) < 1e-12);
  CHECK(std::abs(k[1]) < 1e-12);
  // sphere region
  k = analytic_regional_curvatures(c, 1, 1.0);
  CHECK(k[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(k[1] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_THROWS(analytic_regional_curvatures(c, 1, 2.0));
}

TEST_CASE("discrete shape operator tracks the analytic neck curvatures") {
  FamilyParams params;
  params.eps = 0.1;
  params.n_r = 96;
  params.n_theta = 96;
  const auto glued = build_glued_mesh(params);
  const auto field = shape_operator(glued.mesh);
  const double eps = params.eps;
  int checked = 0;
  for (std::size_t v = 0; v < glued.mesh.vertices.size(); ++v) {
    const double rho = glued.mesh.vertices[v].head<2>().norm();
    if (rho < 2.5 * eps * eps || rho > 0.8 * eps) continue;
    if (std::abs(glued.mesh.vertices[v][2] - 1.0) > 2.0 * eps * eps * std::acosh(1.0 / eps))
      continue;
    const auto ana = analytic_regional_curvatures(glued.coeffs, 1, rho);
    // the mesh orientation may flip the sign pair per sheet
    const double k1 = field.principal[v][0], k2 = field.principal[v][1];
    CHECK(k1 == doctest::Approx(ana[0]).epsilon(0.05));
    CHECK(k2 == doctest::Approx(ana[1]).epsilon(0.05));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("neck curvature integral quadrature matches the closed form") {
  for (double eps : {0.2, 0.1, 0.05, 0.02}) {
    const double closed = 8.0 * M_PI * std::sqrt(1.0 - eps * eps);
    CHECK(neck_B2_quadrature(eps) == doctest::Approx(closed).epsilon(1e-10));
    CHECK(neck_B2_integral(eps) == doctest::Approx(closed).epsilon(1e-14));
  }
}

TEST_CASE("courtois cutoff ramp") {
  const double eps = 0.01;
  CHECK(courtois_cutoff(eps, 0.005) == 0.0);
  CHECK(courtois_cutoff(eps, eps) == 0.0);
  CHECK(courtois_cutoff(eps, std::sqrt(eps)) == 1.0);
  CHECK(courtois_cutoff(eps, 0.5) == 1.0);
  // midpoint of the log ramp: s = eps^(3/4) gives 1/2
  CHECK(courtois_cutoff(eps, std::pow(eps, 0.75)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS(courtois_cutoff(1.5, 0.5));
}

TEST_CASE("test-function quotient bounds lambda1") {
  FamilyParams params;
  params.eps = 0.1;
  params.n_r = 64;
  params.n_theta = 48;
  const auto glued = build_glued_mesh(params);
  const double upper = lambda1_upper_bound_via_test_function(glued, params.eps);
  const auto eig = lambda1(assemble(glued.mesh), 1e-10);
  CHECK(upper >= eig.lambda1 - 1e-9);
  CHECK(upper < 1.0);  // far below the sphere band: the neck mode is captured
}

TEST_SUITE_END();
