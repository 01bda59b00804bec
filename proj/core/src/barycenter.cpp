#include "pinchlab/barycenter.hpp"

#include <cmath>
#include <stdexcept>

namespace pinchlab {

namespace {

double sinc_s(double delta, double r) {
  // s_delta(r)/r, smooth through r = 0
  if (r < 1e-8) return 1.0;
  return s_delta(delta, r) / r;
}

}  // namespace

double energy(const SurfaceMesh& mesh, const VertexMeasure& measure, const Vec& q) {
  double acc = 0.0;
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    acc += measure.dual_area[v] * phi_delta(mesh.ambient.delta,
                                            mesh.ambient.distance(q, mesh.vertices[v]));
  return acc;
}

Vec gradient_Y(const SurfaceMesh& mesh, const VertexMeasure& measure, const Vec& q) {
  Vec y = Vec::Zero();
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const double r = mesh.ambient.distance(q, mesh.vertices[v]);
    if (r < 1e-14) throw std::domain_error("gradient_Y: probe coincides with a vertex");
    y += measure.dual_area[v] * sinc_s(mesh.ambient.delta, r) *
         mesh.ambient.log(q, mesh.vertices[v]);
  }
  return y;
}

CenterResult solve_center(const SurfaceMesh& mesh, const VertexMeasure& measure, double tol) {
  const auto& model = mesh.ambient;
  CenterResult res;
  Vec q = chord_centroid(mesh);
  double e = energy(mesh, measure, q);
  const double area = measure.total;

  const int cap = 1000;
  int it = 0;
  for (; it < cap; ++it) {
    const Vec y = gradient_Y(mesh, measure, q);
    const double gnorm = model.norm(y) / area;
    res.gradient_norm = gnorm;
    if (gnorm <= tol) break;
    // the energy Hessian scales like the area, so Y/area is a natural step
    double t = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
      const Vec qn = model.exp(q, (t / area) * y);
      const double en = energy(mesh, measure, qn);
      if (en < e - 0.25 * t * model.dot(y, y) / area) {
        q = qn;
        e = en;
        moved = true;
        break;
      }
    }
    if (!moved) break;  // energy differences below round-off
  }
  if (it == cap) throw std::runtime_error("solve_center: iteration cap exceeded");

  // Polish by damped fixed-point steps on Y alone: near the minimizer the
  // Armijo test drowns in energy round-off long before |Y| reaches tol.
  for (int pit = 0; pit < 100; ++pit) {
    const Vec y = gradient_Y(mesh, measure, q);
    const double gnorm = model.norm(y) / area;
    if (gnorm <= res.gradient_norm) res.gradient_norm = gnorm;
    if (gnorm <= tol) break;
    double t = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 20; ++bt, t *= 0.5) {
      const Vec qn = model.exp(q, (t / area) * y);
      if (model.norm(gradient_Y(mesh, measure, qn)) / area < gnorm) {
        q = qn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  e = energy(mesh, measure, q);

  res.p0 = q;
  res.energy = e;
  res.iterations = it;
  res.balance_residual = balance_residual(mesh, measure, q);
  if (model.delta > 0.0) {
    double rmax = 0.0;
    for (const auto& v : mesh.vertices) rmax = std::max(rmax, model.distance(q, v));
    res.size_condition_ok = rmax <= M_PI / (8.0 * std::sqrt(model.delta)) + 1e-12;
  }
  return res;
}

PositionField position_field(const SurfaceMesh& mesh, const Vec& p0) {
  const auto& model = mesh.ambient;
  const auto normals = vertex_normals(mesh);
  PositionField f;
  const std::size_t n = mesh.vertices.size();
  f.X.resize(n);
  f.X_tan.resize(n);
  f.r.resize(n);
  f.x_norm.resize(n);
  f.xtan_norm.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto rd = radial_data(model, p0, mesh.vertices[v]);
    f.r[v] = rd.r;
    f.X[v] = s_delta(model.delta, rd.r) * rd.grad_r;
    f.X_tan[v] = f.X[v] - model.dot(f.X[v], normals[v]) * normals[v];
    f.x_norm[v] = model.norm(f.X[v]);
    f.xtan_norm[v] = model.norm(f.X_tan[v]);
  }
  return f;
}

double balance_residual(const SurfaceMesh& mesh, const VertexMeasure& measure, const Vec& p0) {
  const auto& model = mesh.ambient;
  const auto frame = model.tangent_basis(p0);
  Eigen::Vector3d acc = Eigen::Vector3d::Zero();
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const double r = model.distance(p0, mesh.vertices[v]);
    const Vec lg = model.log(p0, mesh.vertices[v]);
    const double w = measure.dual_area[v] * sinc_s(model.delta, r);
    acc += w * Eigen::Vector3d(model.dot(lg, frame[0]), model.dot(lg, frame[1]),
                               model.dot(lg, frame[2]));
  }
  return acc.norm();
}

}  // namespace pinchlab
