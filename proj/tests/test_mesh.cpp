#include <doctest.h>

#include <cmath>

#include "pinchlab/mesh.hpp"

using namespace pinchlab;

TEST_SUITE_BEGIN("mesh");

TEST_CASE("icosphere combinatorics and area") {
  const auto model = AmbientModel::make(0.0);
  for (int subdiv : {0, 2, 3}) {
    const auto mesh = generate_icosphere(model, model.base_point(), 1.0, subdiv);
    validate(mesh);
    const int expect_v = 10 * (1 << (2 * subdiv)) + 2;
    CHECK(static_cast<int>(mesh.vertices.size()) == expect_v);
    CHECK(euler_characteristic(mesh) == 2);
    CHECK(static_cast<int>(mesh_edges(mesh).size()) == 3 * expect_v - 6);
  }
  const auto fine = generate_icosphere(model, model.base_point(), 1.0, 4);
  CHECK(total_area(fine) == doctest::Approx(4.0 * M_PI).epsilon(0.01));
}

TEST_CASE("icosphere on curved charts stays on the model") {
  for (double delta : {1.0, -1.0}) {
    const auto model = AmbientModel::make(delta);
    const auto mesh = generate_icosphere(model, model.base_point(), 0.4, 3);
    validate(mesh);
    CHECK(euler_characteristic(mesh) == 2);
    for (const auto& v : mesh.vertices) CHECK(model.constraint_violation(v) < 1e-10);
    for (const auto& v : mesh.vertices)
      CHECK(model.distance(model.base_point(), v) == doctest::Approx(0.4).epsilon(1e-10));
  }
}

TEST_CASE("vertex measures sum to the total area") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 3);
  const auto measure = vertex_measures(mesh);
  double acc = 0.0;
  for (double m : measure.dual_area) {
    CHECK(m > 0.0);
    acc += m;
  }
  CHECK(acc == doctest::Approx(measure.total).epsilon(1e-12));
  CHECK(measure.total == doctest::Approx(total_area(mesh)).epsilon(1e-12));
}

TEST_CASE("open cylinder of revolution has the right lateral area") {
  RevolutionSpec spec;
  spec.n_theta = 128;
  spec.caps = false;
  const double h = 2.0;
  for (int i = 0; i <= 64; ++i) spec.sheet_a.push_back({1.0, h * i / 64.0});
  const auto mesh = generate_revolution(AmbientModel::make(0.0), spec);
  CHECK(mesh.allow_boundary);
  CHECK(total_area(mesh) == doctest::Approx(2.0 * M_PI * h).epsilon(0.01));
}

TEST_CASE("semicircle profile of revolution closes to a sphere") {
  RevolutionSpec spec;
  spec.n_theta = 96;
  for (int i = 0; i <= 96; ++i) {
    const double phi = M_PI * i / 96.0;
    spec.sheet_a.push_back({std::sin(phi), std::cos(phi)});
  }
  spec.sheet_a.front()[0] = spec.sheet_a.back()[0] = 0.0;
  const auto mesh = generate_revolution(AmbientModel::make(0.0), spec);
  validate(mesh);
  CHECK(euler_characteristic(mesh) == 2);
  CHECK(total_area(mesh) == doctest::Approx(4.0 * M_PI).epsilon(0.01));
}

TEST_CASE("seeded perturbation is deterministic") {
  const auto model = AmbientModel::make(0.0);
  const auto base = generate_icosphere(model, model.base_point(), 1.0, 2);
  const auto a = perturb_radially_seeded(base, 0.1, 42);
  const auto b = perturb_radially_seeded(base, 0.1, 42);
  const auto c = perturb_radially_seeded(base, 0.1, 43);
  REQUIRE(a.vertices.size() == b.vertices.size());
  double dab = 0.0, dac = 0.0;
  for (std::size_t v = 0; v < a.vertices.size(); ++v) {
    dab = std::max(dab, (a.vertices[v] - b.vertices[v]).norm());
    dac = std::max(dac, (a.vertices[v] - c.vertices[v]).norm());
  }
  CHECK(dab == 0.0);
  CHECK(dac > 0.0);
  // amplitude bound is attained: max radial shift equals the amplitude
  double shift = 0.0;
  for (std::size_t v = 0; v < a.vertices.size(); ++v)
    shift = std::max(shift, std::abs(a.vertices[v].norm() - 1.0));
  CHECK(shift == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("extrinsic ball area matches the spherical cap") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 4);
  const Vec pole(0.0, 0.0, 1.0, 0.0);
  // chord ball of radius s on the unit sphere cuts a cap of area pi s^2
  for (double s : {0.3, 0.6, 1.0}) {
    const double cap = M_PI * s * s;
    CHECK(extrinsic_ball_area(mesh, pole, s) == doctest::Approx(cap).epsilon(0.01));
  }
  CHECK(extrinsic_ball_area(mesh, pole, 3.0) ==
        doctest::Approx(total_area(mesh)).epsilon(1e-12));
}

TEST_CASE("hausdorff distance to the reference sphere") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 4);
  CHECK(hausdorff_to_geodesic_sphere(mesh, model.base_point(), 1.0) < 3e-3);
  const auto bumped = perturb_radially_seeded(mesh, 0.1, 5);
  const double d = hausdorff_to_geodesic_sphere(bumped, model.base_point(), 1.0);
  CHECK(d > 0.05);
  CHECK(d < 0.15);
}

TEST_CASE("validate rejects broken meshes") {
  const auto model = AmbientModel::make(0.0);
  auto mesh = generate_icosphere(model, model.base_point(), 1.0, 1);
  auto broken = mesh;
  std::swap(broken.faces[0][0], broken.faces[0][1]);  // orientation flip
  CHECK_THROWS(validate(broken));
  broken = mesh;
  broken.faces.pop_back();  // boundary appears
  CHECK_THROWS(validate(broken));
  broken = mesh;
  broken.faces[0] = {0, 0, 1};  // degenerate face
  CHECK_THROWS(validate(broken));
}

TEST_CASE("chord centroid of a centered sphere is the center") {
  for (double delta : {0.0, 1.0, -1.0}) {
    const auto model = AmbientModel::make(delta);
    const auto mesh = generate_icosphere(model, model.base_point(), 0.5, 3);
    const Vec c = chord_centroid(mesh);
    CHECK(model.distance(c, model.base_point()) < 1e-8);
  }
}

TEST_SUITE_END();
