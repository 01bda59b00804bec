#pragma once

#include <functional>
#include <vector>

#include "pinchlab/mesh.hpp"

namespace pinchlab {

// Radial sectional-curvature profile mu <= k(t) <= delta on [0, R].
struct RadialCurvatureProfile {
  double mu = 0.0;
  double delta = 0.0;
  std::function<double(double)> k;
  double R = 0.0;
};

RadialCurvatureProfile constant_profile(double k, double R);
// k(t) = mu + (delta - mu) t / R
RadialCurvatureProfile linear_profile(double mu, double delta, double R);
// smooth bump dipping from delta down to mu around t = R/2
RadialCurvatureProfile bump_profile(double mu, double delta, double R);

struct RiccatiSolution {
  std::vector<double> grid;   // increasing, grid.front() = d0
  std::vector<double> rho;    // radial Hessian coefficient
  std::vector<double> J;      // Jacobi amplitude, J ~ s_delta(t) near d0
  std::vector<double> F_aux;  // monotone auxiliary function
  double d0 = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  double R = 0.0;
  int n = 2;
  double sandwich_violation = 0.0;  // worst excursion outside [cot_delta, cot_mu]
};

// RK4 on (rho, log J) from t = d0 = max(10 dt, 1e-4 R) with the series start
// rho(d0) = 1/d0 - k(d0) d0 / 3. Throws on focal blow-up before R.
RiccatiSolution integrate_riccati(const RadialCurvatureProfile& profile, double dt);

struct RigidityCertificate {
  bool ok = false;
  double max_ratio = 0.0;  // max_t J(t)/s_delta(t)
  double min_ratio = 0.0;
  bool F_monotone = false;
  double C_explicit = 0.0;
  double d0_cert = 0.0;
};

// Checks the boundary hypothesis rho(R) <= cot_delta(R) + n*eps, the
// monotonicity of F_aux, and the ratio bound max J/s_delta <= exp(C sqrt(eps))
// with C assembled from n, mu, delta, R, d0.
RigidityCertificate rigidity_certificate(const RiccatiSolution& solution, double eps);

struct MonotonicityResult {
  bool ok = false;
  double worst_margin = 0.0;  // min over pairs of bound/value; >= 1 passes
  std::vector<double> s;
  std::vector<double> F;  // ball area / s_delta(s)^n
};

// Weighted extrinsic volume monotonicity: for every sampled pair s_i < s_j,
// F(s_i) <= F(s_j) exp((n Lambda + sqrt(max(0, -delta)))(s_j - s_i)) with 3%
// slack, where F(s) = extrinsic_ball_area(x0, s)/s_delta(s)^n.
MonotonicityResult volume_monotonicity_check(const SurfaceMesh& mesh, const Vec& x0,
                                             double Lambda, double r0, int samples);

}  // namespace pinchlab
