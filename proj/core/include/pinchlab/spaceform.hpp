#pragma once

#include <Eigen/Dense>
#include <array>

namespace pinchlab {

// Ambient points and vectors live in a fixed 4d embedding:
//   euclidean:   (x, y, z, 0)
//   delta > 0:   round sphere of radius 1/sqrt(delta) in R^4
//   delta < 0:   hyperboloid <p,p> = 1/delta in Minkowski R^{3,1},
//                signature (+,+,+,-), last coordinate positive.
using Vec = Eigen::Vector4d;

// delta-trig kernel. All throw std::domain_error outside the stated domains.
double s_delta(double delta, double r);
double c_delta(double delta, double r);
double phi_delta(double delta, double r);
double s_delta_inverse(double delta, double v);
// c_delta/s_delta with a series fallback near r = 0.
double cot_delta(double delta, double r);

enum class Chart { Euclidean, Sphere, Hyperboloid };

struct AmbientModel {
  double delta = 0.0;
  int dim = 3;  // ambient dimension n+1; only 3 is exercised
  Chart chart = Chart::Euclidean;

  static AmbientModel make(double delta, int dim = 3);

  double radius() const;  // 1/sqrt(|delta|), infinity for euclidean
  // Metric of the embedding (Minkowski for the hyperboloid chart).
  double dot(const Vec& u, const Vec& v) const;
  double norm(const Vec& u) const;
  // |constraint| in the normalized form |delta <p,p> - 1| (|p[3]| for euclidean).
  double constraint_violation(const Vec& p) const;
  Vec base_point() const;
  Vec project(const Vec& p) const;
  Vec project_tangent(const Vec& p, const Vec& v) const;

  double distance(const Vec& p, const Vec& q) const;
  // Tangent vector at p with exp(p, log(p,q)) = q.
  Vec log(const Vec& p, const Vec& q) const;
  Vec exp(const Vec& p, const Vec& v) const;

  // Oriented orthonormal tangent frame at p; orientation is globally
  // consistent (fixed by the sign of det[b1 b2 b3 p]).
  std::array<Vec, 3> tangent_basis(const Vec& p) const;
};

struct RadialData {
  double r = 0.0;
  Vec grad_r = Vec::Zero();  // unit tangent at x of the geodesic center -> x
  double hess_coeff = 0.0;   // c_delta(r)/s_delta(r)
};

RadialData radial_data(const AmbientModel& model, const Vec& center, const Vec& x);

struct SphereReference {
  double H = 0.0;
  double lambda1 = 0.0;
};

// Analytic mean curvature and first eigenvalue of a geodesic sphere.
SphereReference geodesic_sphere_reference(double delta, int n, double R0);

}  // namespace pinchlab
