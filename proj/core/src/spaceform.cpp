#include "pinchlab/spaceform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pinchlab {

namespace {

void check_radial_domain(double delta, double r) {
  if (!(r >= 0.0)) throw std::domain_error("radial argument must be nonnegative");
  if (delta > 0.0 && r >= M_PI / std::sqrt(delta))
    throw std::domain_error("radial argument exceeds pi/sqrt(delta)");
}

}  // namespace

double s_delta(double delta, double r) {
  check_radial_domain(delta, r);
  if (delta == 0.0) return r;
  if (delta > 0.0) {
    const double sq = std::sqrt(delta);
    return std::sin(sq * r) / sq;
  }
  const double sq = std::sqrt(-delta);
  return std::sinh(sq * r) / sq;
}

double c_delta(double delta, double r) {
  check_radial_domain(delta, r);
  if (delta == 0.0) return 1.0;
  if (delta > 0.0) return std::cos(std::sqrt(delta) * r);
  return std::cosh(std::sqrt(-delta) * r);
}

double phi_delta(double delta, double r) {
  check_radial_domain(delta, r);
  if (delta == 0.0) return 0.5 * r * r;
  return (1.0 - c_delta(delta, r)) / delta;
}

double s_delta_inverse(double delta, double v) {
  if (!(v >= 0.0)) throw std::domain_error("s_delta_inverse needs v >= 0");
  if (delta == 0.0) return v;
  if (delta > 0.0) {
    const double sq = std::sqrt(delta);
    const double x = v * sq;
    if (x > 1.0 + 1e-12) throw std::domain_error("v exceeds the maximum of s_delta");
    return std::asin(std::min(x, 1.0)) / sq;
  }
  const double sq = std::sqrt(-delta);
  return std::asinh(v * sq) / sq;
}

double cot_delta(double delta, double r) {
  check_radial_domain(delta, r);
  if (r <= 0.0) throw std::domain_error("cot_delta needs r > 0");
  if (r < 1e-4) return 1.0 / r - delta * r / 3.0;
  return c_delta(delta, r) / s_delta(delta, r);
}

AmbientModel AmbientModel::make(double delta, int dim) {
  AmbientModel m;
  m.delta = delta;
  m.dim = dim;
  m.chart = delta == 0.0 ? Chart::Euclidean
                         : (delta > 0.0 ? Chart::Sphere : Chart::Hyperboloid);
  if (dim != 3) throw std::invalid_argument("only ambient dimension 3 is implemented");
  return m;
}

double AmbientModel::radius() const {
  if (chart == Chart::Euclidean) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(std::abs(delta));
}

double AmbientModel::dot(const Vec& u, const Vec& v) const {
  if (chart == Chart::Hyperboloid)
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3];
  return u.dot(v);
}

double AmbientModel::norm(const Vec& u) const {
  return std::sqrt(std::max(0.0, dot(u, u)));
}

double AmbientModel::constraint_violation(const Vec& p) const {
  if (chart == Chart::Euclidean) return std::abs(p[3]);
  return std::abs(delta * dot(p, p) - 1.0);
}

Vec AmbientModel::base_point() const {
  if (chart == Chart::Euclidean) return Vec::Zero();
  return Vec(0.0, 0.0, 0.0, radius());
}

Vec AmbientModel::project(const Vec& p) const {
  Vec q = p;
  if (chart == Chart::Euclidean) {
    q[3] = 0.0;
    return q;
  }
  if (chart == Chart::Sphere) {
    const double n = p.norm();
    if (n <= 0.0) throw std::domain_error("cannot project the origin to the sphere");
    return (radius() / n) * q;
  }
  const double pp = dot(p, p);
  if (!(pp < 0.0)) throw std::domain_error("point not timelike; cannot project to hyperboloid");
  q *= radius() / std::sqrt(-pp);
  if (q[3] < 0.0) q = -q;
  return q;
}

Vec AmbientModel::project_tangent(const Vec& p, const Vec& v) const {
  Vec w = v;
  if (chart == Chart::Euclidean) {
    w[3] = 0.0;
    return w;
  }
  w -= (dot(p, v) / dot(p, p)) * p;
  return w;
}

double AmbientModel::distance(const Vec& p, const Vec& q) const {
  if (chart == Chart::Euclidean) return (p - q).norm();
  const double a = radius();
  const double c = dot(p, q) / (a * a);
  if (chart == Chart::Sphere) return a * std::acos(std::clamp(c, -1.0, 1.0));
  return a * std::acosh(std::max(1.0, -c));
}

Vec AmbientModel::log(const Vec& p, const Vec& q) const {
  if (chart == Chart::Euclidean) {
    Vec v = q - p;
    v[3] = 0.0;
    return v;
  }
  const double d = distance(p, q);
  Vec u = q - delta * dot(p, q) * p;  // component of q orthogonal to p
  const double n = norm(u);
  if (n < 1e-300 || d == 0.0) return Vec::Zero();
  return (d / n) * u;
}

Vec AmbientModel::exp(const Vec& p, const Vec& v) const {
  if (chart == Chart::Euclidean) {
    Vec q = p + v;
    q[3] = 0.0;
    return q;
  }
  const double t = norm(v);
  if (t == 0.0) return p;
  return c_delta(delta, t) * p + (s_delta(delta, t) / t) * v;
}

std::array<Vec, 3> AmbientModel::tangent_basis(const Vec& p) const {
  std::array<Vec, 3> basis;
  if (chart == Chart::Euclidean) {
    basis[0] = Vec::Unit(0);
    basis[1] = Vec::Unit(1);
    basis[2] = Vec::Unit(2);
    return basis;
  }
  int k = 0;
  for (int i = 0; i < 4 && k < 3; ++i) {
    Vec t = project_tangent(p, Vec::Unit(i));
    for (int j = 0; j < k; ++j) t -= dot(basis[j], t) * basis[j];
    const double n = norm(t);
    if (n > 1e-6 * std::max(1.0, radius())) basis[k++] = t / n;
  }
  if (k < 3) throw std::runtime_error("tangent frame construction failed");
  Eigen::Matrix4d m;
  m.col(0) = basis[0];
  m.col(1) = basis[1];
  m.col(2) = basis[2];
  m.col(3) = p;
  if (m.determinant() < 0.0) basis[2] = -basis[2];
  return basis;
}

RadialData radial_data(const AmbientModel& model, const Vec& center, const Vec& x) {
  RadialData out;
  out.r = model.distance(center, x);
  if (out.r <= 0.0) throw std::domain_error("radial_data: coincident points");
  if (model.delta > 0.0 && out.r >= M_PI / std::sqrt(model.delta) - 1e-12)
    throw std::domain_error("radial_data: antipodal points");
  out.grad_r = -model.log(x, center) / out.r;
  out.hess_coeff = cot_delta(model.delta, out.r);
  return out;
}

SphereReference geodesic_sphere_reference(double delta, int n, double R0) {
  SphereReference ref;
  const double s = s_delta(delta, R0);
  ref.H = c_delta(delta, R0) / s;
  ref.lambda1 = static_cast<double>(n) / (s * s);
  return ref;
}

}  // namespace pinchlab
