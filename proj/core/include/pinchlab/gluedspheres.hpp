#pragma once

#include <array>
#include <vector>

#include "pinchlab/mesh.hpp"

namespace pinchlab {

// Closed-form coefficients of the glued-spheres profile: a catenoid throat at
// r = eps^2 feeding two C^1 gluing polynomials into a pair of nested
// near-unit spheres of radii r0_plus > 1 > r0_minus.
struct ProfileCoefficients {
  double eps = 0.0;
  double a0 = 0.0, a1 = 0.0, a2 = 0.0;
  double b1_plus = 0.0, b2_plus = 0.0;
  double b1_minus = 0.0, b2_minus = 0.0;
  double r0_plus = 0.0, r0_minus = 0.0;
};

// Evaluates the closed forms and re-checks the defining identities to 1e-12.
ProfileCoefficients coefficients(double eps);

// Piecewise profile z(r) for sheet = +1 (outer) or -1 (inner) on
// [eps^2, 3 eps + r0^sheet]; C^1 across the region boundaries.
double profile(const ProfileCoefficients& c, int sheet, double r);

struct FamilyParams {
  double eps = 0.1;
  int l = 1;  // necks per junction; only l = 1 is implemented
  int p = 2;  // number of spheres
  int n_r = 128;
  int n_theta = 128;
};

struct GluedMesh {
  SurfaceMesh mesh;
  ProfileCoefficients coeffs;
  std::vector<int> sheet_label;   // 0 = outer sheet, 1 = inner sheet(s)
  std::vector<int> throat_ring;   // vertex indices of the first throat circle
  double min_quality = 0.0;       // min over faces of 4 sqrt(3) A / sum l^2
};

GluedMesh build_glued_mesh(const FamilyParams& params);

// Leading-order analytic principal curvatures (kappa1 >= kappa2) in the
// region containing r, measured with each sheet's own outward normal.
std::array<double, 2> analytic_regional_curvatures(const ProfileCoefficients& c,
                                                   int sheet, double r);

// int_neck |B|^2 = 8 pi sqrt(1 - eps^2): closed form cross-checked against
// quadrature (throws on > 0.5% drift).
double neck_B2_integral(double eps);
double neck_B2_quadrature(double eps);  // independent numerical evaluation

// Discrete counterpart: sum of m_v |B_v|^2 over the catenoid vertices.
double neck_B2_discrete(const GluedMesh& glued, const std::vector<double>& B_norm,
                        const VertexMeasure& measure);

struct BqSweep {
  double slope = 0.0;           // d log ||B||_q / d log eps, least squares
  std::vector<double> norms;    // ||B||_q per eps
};
BqSweep bq_blowup_rate(const std::vector<double>& eps_list, double q,
                       int n_r = 128, int n_theta = 128);

// Log-ramp cutoff: 0 for s <= eps, 1 for s >= sqrt(eps).
double courtois_cutoff(double eps, double s);

// Rayleigh quotient of f = (+-1 per sheet) * cutoff(distance to the throat
// ring); a variational upper bound for lambda1.
double lambda1_upper_bound_via_test_function(const GluedMesh& glued, double eps);

}  // namespace pinchlab
