#include "pinchlab/pinch.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "pinchlab/curvature.hpp"
#include "pinchlab/spectral.hpp"

namespace pinchlab {

SpectralPinch spectral_pinch(double lambda1, double h_infty, double delta, int n) {
  if (!(lambda1 > 0.0)) throw std::invalid_argument("spectral_pinch needs lambda1 > 0");
  SpectralPinch out;
  const double h2 = delta + h_infty * h_infty;
  if (h2 <= 0.0) {
    out.valid = false;
    return out;
  }
  out.eps_spec = static_cast<double>(n) * h2 / lambda1 - 1.0;
  out.R0 = s_delta_inverse(delta, 1.0 / std::sqrt(h2));
  return out;
}

double l2_pinch(const PositionField& field, const VertexMeasure& measure, double h) {
  double acc = 0.0;
  for (std::size_t v = 0; v < field.x_norm.size(); ++v)
    acc += measure.dual_area[v] * field.x_norm[v] * field.x_norm[v];
  return h * h * acc / measure.total - 1.0;
}

TangentialCheck tangential_bound_check(const PositionField& field, const VertexMeasure& measure,
                                       double h_infty, double eps_L2, double slack) {
  TangentialCheck out;
  double acc = 0.0;
  for (std::size_t v = 0; v < field.xtan_norm.size(); ++v)
    acc += measure.dual_area[v] * field.xtan_norm[v] * field.xtan_norm[v];
  out.Xtan_l2sq = acc / measure.total;
  out.bound = 2.0 * std::max(eps_L2, 0.0) / (h_infty * h_infty);
  out.ok = out.Xtan_l2sq <= out.bound + slack;
  return out;
}

PsiResult psi_field(const PositionField& field, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("psi_field needs h > 0");
  PsiResult out;
  out.psi.resize(field.r.size());
  for (std::size_t v = 0; v < field.r.size(); ++v) {
    const double xn = field.x_norm[v];
    out.psi[v] = std::sqrt(xn) * std::abs(xn - 1.0 / h);
    out.psi_infty = std::max(out.psi_infty, out.psi[v]);
    out.hX_dev_infty = std::max(out.hX_dev_infty, std::abs(h * xn - 1.0));
  }
  return out;
}

double heintze_integrated_defect(const SurfaceMesh& mesh, const VertexMeasure& measure,
                                 const PositionField& field, const std::vector<double>& H) {
  double acc = 0.0;
  for (std::size_t v = 0; v < field.r.size(); ++v)
    acc += measure.dual_area[v] * (c_delta(mesh.ambient.delta, field.r[v]) -
                                   std::abs(H[v]) * s_delta(mesh.ambient.delta, field.r[v]));
  return acc;
}

double laplace_deviation(const SurfaceMesh& mesh, const VertexMeasure& measure,
                         const PositionField& field, double R0) {
  const double delta = mesh.ambient.delta;
  const int n = mesh.ambient.dim - 1;
  const double ref = cot_delta(delta, R0);
  double acc = 0.0;
  for (std::size_t v = 0; v < field.r.size(); ++v) {
    const double s = s_delta(delta, field.r[v]);
    const double gradm2 = field.xtan_norm[v] * field.xtan_norm[v] / (s * s);
    const double lap = cot_delta(delta, field.r[v]) * (static_cast<double>(n) - gradm2);
    acc += measure.dual_area[v] * std::abs(ref - lap / static_cast<double>(n));
  }
  return acc / measure.total;
}

YWDiagnostics yw_diagnostics(const AmbientModel& model, const PositionField& field,
                             const std::vector<double>& H, const std::vector<Vec>& nu,
                             const VertexMeasure& measure, double h, double h_infty) {
  YWDiagnostics out;
  double accY = 0.0, accW = 0.0;
  for (std::size_t v = 0; v < field.r.size(); ++v) {
    const double c = c_delta(model.delta, field.r[v]);
    const Vec y = h_infty * h_infty * field.X[v] - H[v] * c * nu[v];
    const double xn = field.x_norm[v];
    Vec w = model.delta * field.X[v] + H[v] * c * nu[v];
    if (xn > 1e-14) w -= (h / xn) * field.X[v];
    accY += measure.dual_area[v] * model.dot(y, y);
    accW += measure.dual_area[v] * xn * model.dot(w, w);
  }
  out.Y_l2sq = accY / measure.total;
  out.W_l2sq = accW / measure.total;
  return out;
}

ProjectionDistortion radial_projection_distortion(const SurfaceMesh& mesh, const Vec& p0,
                                                  double R0) {
  const auto& model = mesh.ambient;
  const auto field = position_field(mesh, p0);
  ProjectionDistortion out;
  for (std::size_t v = 0; v < field.r.size(); ++v) {
    const double s = s_delta(model.delta, field.r[v]);
    out.grad_r_infty = std::max(out.grad_r_infty, field.xtan_norm[v] / s);
  }
  const auto normals = vertex_normals(mesh);
  for (std::size_t v = 0; v < field.r.size(); ++v)
    if (model.dot(field.X[v], normals[v]) <= 0.0) out.star_shaped = false;

  std::vector<Vec> proj(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec lg = model.log(p0, mesh.vertices[v]);
    proj[v] = model.exp(p0, (R0 / field.r[v]) * lg);
  }
  for (const auto& e : mesh_edges(mesh)) {
    const double orig = model.distance(mesh.vertices[e.v0], mesh.vertices[e.v1]);
    const double mapped = model.distance(proj[e.v0], proj[e.v1]);
    if (orig <= 0.0) continue;
    const double ratio2 = (mapped / orig) * (mapped / orig);
    out.dF_distortion = std::max(out.dF_distortion, std::abs(ratio2 - 1.0));
  }
  return out;
}

PinchReport assemble_report(const SurfaceMesh& mesh, double tol) {
  validate(mesh);
  PinchReport rep;
  rep.delta = mesh.ambient.delta;
  rep.vertices = static_cast<int>(mesh.vertices.size());
  const int n = mesh.ambient.dim - 1;

  const auto measure = vertex_measures(mesh);
  rep.area = measure.total;

  const auto op = assemble(mesh);
  rep.clamped_edges = op.clamped_edges;
  const auto eig = lambda1(op, tol);
  rep.lambda1 = eig.lambda1;

  const auto H = mean_curvature(mesh);
  rep.h_infty = h_infty(H);

  const auto sp = spectral_pinch(rep.lambda1, rep.h_infty, rep.delta, n);
  rep.flags["delta_h2_positive"] = sp.valid;
  if (!sp.valid) throw std::runtime_error("assemble_report: delta + h_infty^2 <= 0");
  rep.eps_spec = sp.eps_spec;
  rep.R0 = sp.R0;
  rep.h = std::sqrt(rep.delta + rep.h_infty * rep.h_infty);

  const auto center = solve_center(mesh, measure, tol);
  rep.balance_residual = center.balance_residual;
  rep.flags["size_condition"] = center.size_condition_ok;

  const auto field = position_field(mesh, center.p0);
  rep.eps_L2 = l2_pinch(field, measure, rep.h);
  double x2 = 0.0;
  for (std::size_t v = 0; v < field.x_norm.size(); ++v)
    x2 += measure.dual_area[v] * field.x_norm[v] * field.x_norm[v];
  rep.X_l2 = std::sqrt(x2 / measure.total);

  const auto tan = tangential_bound_check(field, measure, rep.h_infty, rep.eps_L2);
  rep.Xtan_l2sq = tan.Xtan_l2sq;
  rep.flags["tangential_bound"] = tan.ok;

  const auto psi = psi_field(field, rep.h);
  rep.psi_infty = psi.psi_infty;
  rep.hX_dev_infty = psi.hX_dev_infty;

  rep.heintze_defect = heintze_integrated_defect(mesh, measure, field, H);
  rep.laplace_dev = laplace_deviation(mesh, measure, field, rep.R0);

  const auto normals = vertex_normals(mesh);
  const auto yw = yw_diagnostics(mesh.ambient, field, H, normals, measure, rep.h, rep.h_infty);
  rep.Y_l2sq = yw.Y_l2sq;
  rep.W_l2sq = yw.W_l2sq;

  const auto dist = radial_projection_distortion(mesh, center.p0, rep.R0);
  rep.grad_r_infty = dist.grad_r_infty;
  rep.dF_distortion = dist.dF_distortion;
  rep.flags["star_shaped"] = dist.star_shaped;

  rep.hausdorff = hausdorff_to_geodesic_sphere(mesh, center.p0, rep.R0);

  if (mesh.ambient.delta > 0.0) {
    double rmax = 0.0;
    for (const auto& v : mesh.vertices)
      rmax = std::max(rmax, mesh.ambient.distance(center.p0, v));
    rep.flags["radius_condition"] = rmax <= M_PI / (8.0 * std::sqrt(mesh.ambient.delta)) + 1e-12;
  } else {
    rep.flags["radius_condition"] = true;
  }
  return rep;
}

std::string report_to_json(const PinchReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = "pinchlab-report/1";
  j["lambda1"] = r.lambda1;
  j["h_infty"] = r.h_infty;
  j["delta"] = r.delta;
  j["h"] = r.h;
  j["R0"] = r.R0;
  j["eps_spec"] = r.eps_spec;
  j["eps_L2"] = r.eps_L2;
  j["X_l2"] = r.X_l2;
  j["Xtan_l2sq"] = r.Xtan_l2sq;
  j["psi_infty"] = r.psi_infty;
  j["hX_dev_infty"] = r.hX_dev_infty;
  j["heintze_defect"] = r.heintze_defect;
  j["laplace_dev"] = r.laplace_dev;
  j["grad_r_infty"] = r.grad_r_infty;
  j["hausdorff"] = r.hausdorff;
  j["dF_distortion"] = r.dF_distortion;
  j["Y_l2sq"] = r.Y_l2sq;
  j["W_l2sq"] = r.W_l2sq;
  j["area"] = r.area;
  j["balance_residual"] = r.balance_residual;
  j["vertices"] = r.vertices;
  j["clamped_edges"] = r.clamped_edges;
  for (const auto& [k, v] : r.flags) j["flags"][k] = v;
  return j.dump(2) + "\n";
}

}  // namespace pinchlab
