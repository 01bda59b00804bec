#pragma once

#include <array>
#include <vector>

#include "pinchlab/mesh.hpp"

namespace pinchlab {

struct CurvatureField {
  std::vector<double> H;        // (kappa1 + kappa2) / 2 from the quadric fit
  std::vector<double> B_norm;   // sqrt(kappa1^2 + kappa2^2)
  std::vector<double> B0_norm;  // traceless part: |kappa1 - kappa2| / sqrt(2)
  std::vector<std::array<double, 2>> principal;  // kappa1 >= kappa2
};

// Cotangent mean-curvature vector projected on the vertex normal, divided by
// n. Positive on round spheres with outward normals.
std::vector<double> mean_curvature(const SurfaceMesh& mesh);

// Per-vertex principal curvatures from an osculating quadric fit in normal
// coordinates over the 2-ring (3-ring fallback).
CurvatureField shape_operator(const SurfaceMesh& mesh);

// Normalized L^q norm ((1/|M|) int |B|^q)^(1/q); q = infinity gives the max.
double norm_B_q(const CurvatureField& field, const VertexMeasure& measure, double q);

// Same norm applied to the traceless part B - H g, whose pointwise norm is
// |kappa1 - kappa2| / sqrt(2). This is the quantity whose small-q norms decay
// on families that concentrate curvature in a shrinking neck; the full-form
// norm is pinned near sqrt(2) by the umbilic regions.
double norm_B0_q(const CurvatureField& field, const VertexMeasure& measure, double q);

// max |H| over vertices
double h_infty(const std::vector<double>& H);
double h_infty(const CurvatureField& field);

}  // namespace pinchlab
