#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "pinchlab/mesh.hpp"

namespace pinchlab {

struct LaplaceOperator {
  Eigen::SparseMatrix<double> stiffness;  // cotangent weights, PSD
  Eigen::VectorXd mass;                   // lumped (barycentric dual areas)
  int size = 0;
  int clamped_edges = 0;  // negative edge weights clamped at zero
};

// Cotangent stiffness from intrinsic (geodesic) edge lengths plus lumped mass.
// clamp_negative=false keeps raw cotangent weights (used by curvature
// estimation, where the clamp would bias the mean-curvature vector).
LaplaceOperator assemble(const SurfaceMesh& mesh, bool clamp_negative = true);

struct EigenResult {
  double lambda1 = 0.0;
  Eigen::VectorXd eigenvector;  // mass-orthonormal, mass-orthogonal to constants
  double residual = 0.0;
  int iterations = 0;
};

// Smallest generalized eigenvalue on the mass-orthogonal complement of the
// constants, by shift-inverted power iteration with constant deflation.
// Throws on non-convergence (residual included in the message).
EigenResult lambda1(const LaplaceOperator& op, double tol);

struct RayleighResult {
  double value = 0.0;
  bool degenerate = false;  // constant input (zero after centering)
};
RayleighResult rayleigh_quotient(const LaplaceOperator& op, const Eigen::VectorXd& f);

// Full generalized spectrum by dense solve; sizes up to 2000 vertices.
std::vector<double> dense_spectrum_oracle(const LaplaceOperator& op);

}  // namespace pinchlab
