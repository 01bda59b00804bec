#include <doctest.h>

#include <cmath>

#include "pinchlab/curvature.hpp"
#include "pinchlab/mesh.hpp"

using namespace pinchlab;

TEST_SUITE_BEGIN("curvature");

TEST_CASE("mean curvature of round spheres") {
  const auto model = AmbientModel::make(0.0);
  for (double radius : {1.0, 2.0}) {
    const auto mesh = generate_icosphere(model, model.base_point(), radius, 4);
    const auto H = mean_curvature(mesh);
    for (double h : H) CHECK(h == doctest::Approx(1.0 / radius).epsilon(1e-3));
    CHECK(h_infty(H) == doctest::Approx(1.0 / radius).epsilon(1e-3));
  }
}

TEST_CASE("mean curvature of geodesic spheres on curved charts") {
  // analytic H = c_delta(R0)/s_delta(R0)
  {
    const auto model = AmbientModel::make(-1.0);
    const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 4);
    const auto H = mean_curvature(mesh);
    const double ref = 1.0 / std::tanh(1.0);
    CHECK(h_infty(H) == doctest::Approx(ref).epsilon(0.01));
    for (double h : H) CHECK(h == doctest::Approx(ref).epsilon(0.01));
  }
  {
    const auto model = AmbientModel::make(1.0);
    const auto mesh = generate_icosphere(model, model.base_point(), 0.35, 4);
    const auto H = mean_curvature(mesh);
    const double ref = 1.0 / std::tan(0.35);
    CHECK(h_infty(H) == doctest::Approx(ref).epsilon(0.01));
  }
}

TEST_CASE("shape operator on the unit sphere is the identity") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 4);
  const auto field = shape_operator(mesh);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    CHECK(field.principal[v][0] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(field.principal[v][1] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(field.principal[v][0] >= field.principal[v][1]);
    CHECK(field.H[v] == doctest::Approx(1.0).epsilon(0.02));
    CHECK(field.B_norm[v] == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
    CHECK(field.B0_norm[v] < 0.02);  // umbilic: traceless part vanishes
  }
}

TEST_CASE("shape operator on an open cylinder patch") {
  RevolutionSpec spec;
  spec.n_theta = 96;
  spec.caps = false;
  for (int i = 0; i <= 48; ++i) spec.sheet_a.push_back({1.0, 3.0 * i / 48.0});
  const auto mesh = generate_revolution(AmbientModel::make(0.0), spec);
  const auto field = shape_operator(mesh);
  int checked = 0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const double z = mesh.vertices[v][2];
    if (z < 1.0 || z > 2.0) continue;  // skip the boundary-influenced bands
    const double k1 = std::abs(field.principal[v][0]), k2 = std::abs(field.principal[v][1]);
    CHECK(std::max(k1, k2) == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::min(k1, k2) < 0.03);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("norm_B_q on the unit sphere") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 3);
  const auto field = shape_operator(mesh);
  const auto measure = vertex_measures(mesh);
  const double rt2 = std::sqrt(2.0);
  for (double q : {1.0, 2.0, 4.0})
    CHECK(norm_B_q(field, measure, q) == doctest::Approx(rt2).epsilon(0.02));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(norm_B_q(field, measure, inf) == doctest::Approx(rt2).epsilon(0.02));
  CHECK(norm_B0_q(field, measure, 2.0) < 0.02);
  CHECK_THROWS(norm_B_q(field, measure, 0.0));
}

TEST_CASE("h_infty input validation") {
  CHECK_THROWS(h_infty(std::vector<double>{}));
  CHECK(h_infty(std::vector<double>{-3.0, 1.0}) == doctest::Approx(3.0));
}

TEST_SUITE_END();
