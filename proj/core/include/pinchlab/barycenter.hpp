#pragma once

#include <vector>

#include "pinchlab/mesh.hpp"

namespace pinchlab {

// Modified-distance energy F(q) = sum_v m_v Phi_delta(dist(q, v)).
double energy(const SurfaceMesh& mesh, const VertexMeasure& measure, const Vec& q);

// Y(q) = sum_v m_v (s_delta(r)/r) log_q(v); the energy decreases along +Y.
Vec gradient_Y(const SurfaceMesh& mesh, const VertexMeasure& measure, const Vec& q);

struct CenterResult {
  Vec p0 = Vec::Zero();
  double energy = 0.0;
  double gradient_norm = 0.0;  // |Y| / area at the solution
  int iterations = 0;
  double balance_residual = 0.0;
  bool size_condition_ok = true;  // R <= pi/(8 sqrt(delta)) when delta > 0
};

// Backtracking gradient descent with the model exponential as retraction,
// started from the projected chord centroid.
CenterResult solve_center(const SurfaceMesh& mesh, const VertexMeasure& measure, double tol);

struct PositionField {
  std::vector<Vec> X;      // s_delta(r) grad r, ambient vectors at the vertices
  std::vector<Vec> X_tan;  // X - <X, nu> nu
  std::vector<double> r;   // distance to p0
  // chart-metric norms (the embedding norm is wrong on the hyperboloid)
  std::vector<double> x_norm;     // = s_delta(r)
  std::vector<double> xtan_norm;
};

PositionField position_field(const SurfaceMesh& mesh, const Vec& p0);

// Norm of the first-order balance vector in normal coordinates at p0;
// vanishes exactly at the energy minimizer.
double balance_residual(const SurfaceMesh& mesh, const VertexMeasure& measure, const Vec& p0);

}  // namespace pinchlab
