#include <doctest.h>

#include <cmath>

#include "pinchlab/mesh.hpp"
#include "pinchlab/spectral.hpp"

using namespace pinchlab;

TEST_SUITE_BEGIN("spectral");

TEST_CASE("mass matrix carries the total area") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 3);
  const auto op = assemble(mesh);
  CHECK(op.mass.sum() == doctest::Approx(total_area(mesh)).epsilon(1e-12));
  CHECK(op.size == static_cast<int>(mesh.vertices.size()));
  // stiffness annihilates constants
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.size);
  CHECK((op.stiffness * ones).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("unit sphere lambda1 approaches n = 2") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 4);
  const auto op = assemble(mesh);
  const auto eig = lambda1(op, 1e-10);
  CHECK(eig.lambda1 == doctest::Approx(2.0).epsilon(0.01));
  CHECK(eig.residual < 1e-8);
  // scale invariance of the operator: radius 2 sphere has lambda1 = 2/4
  const auto big = generate_icosphere(model, model.base_point(), 2.0, 4);
  const auto eig2 = lambda1(assemble(big), 1e-10);
  CHECK(eig2.lambda1 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("geodesic sphere lambda1 on curved charts") {
  for (double delta : {1.0, -1.0}) {
    const auto model = AmbientModel::make(delta);
    const double R0 = delta > 0.0 ? 0.35 : 1.0;
    const auto mesh = generate_icosphere(model, model.base_point(), R0, 4);
    const auto eig = lambda1(assemble(mesh), 1e-10);
    const auto ref = geodesic_sphere_reference(delta, 2, R0);
    CHECK(eig.lambda1 == doctest::Approx(ref.lambda1).epsilon(0.01));
  }
}

TEST_CASE("dense oracle agrees with the iterative solver") {
  const auto model = AmbientModel::make(0.0);
  for (unsigned seed : {1u, 2u}) {
    const auto mesh = perturb_radially_seeded(
        generate_icosphere(model, model.base_point(), 1.0, 2), 0.1, seed);
    const auto op = assemble(mesh);
    const auto eig = lambda1(op, 1e-12);
    const auto spectrum = dense_spectrum_oracle(op);
    REQUIRE(spectrum.size() >= 2);
    CHECK(std::abs(spectrum[0]) < 1e-10);  // constants
    CHECK(std::abs(spectrum[1] - eig.lambda1) < 1e-8);
  }
}

TEST_CASE("round sphere lambda1 multiplicity-3 cluster") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 2);
  const auto spectrum = dense_spectrum_oracle(assemble(mesh));
  REQUIRE(spectrum.size() >= 5);
  const double mid = (spectrum[1] + spectrum[2] + spectrum[3]) / 3.0;
  for (int i = 1; i <= 3; ++i) CHECK(std::abs(spectrum[i] / mid - 1.0) < 0.005);
  // clear gap to the l = 2 band (analytically 6 vs 2)
  CHECK(spectrum[4] > 2.0 * mid);
}

TEST_CASE("rayleigh quotient bounds lambda1 from above") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 3);
  const auto op = assemble(mesh);
  const auto eig = lambda1(op, 1e-10);
  for (int k = 0; k < 3; ++k) {
    Eigen::VectorXd f(op.size);
    for (int v = 0; v < op.size; ++v) f[v] = mesh.vertices[v][k];
    const auto rq = rayleigh_quotient(op, f);
    CHECK(!rq.degenerate);
    CHECK(rq.value >= eig.lambda1 - 1e-9);
    // coordinates are near-eigenfunctions on the round sphere
    CHECK(rq.value == doctest::Approx(eig.lambda1).epsilon(0.01));
  }
  const auto flat = rayleigh_quotient(op, Eigen::VectorXd::Ones(op.size));
  CHECK(flat.degenerate);
}

TEST_SUITE_END();
