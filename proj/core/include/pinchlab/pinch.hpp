#pragma once

#include <map>
#include <string>
#include <vector>

#include "pinchlab/barycenter.hpp"
#include "pinchlab/mesh.hpp"

namespace pinchlab {

struct PinchReport {
  double lambda1 = 0.0;
  double h_infty = 0.0;
  double delta = 0.0;
  double h = 0.0;   // sqrt(delta + h_infty^2)
  double R0 = 0.0;  // s_delta_inverse(1/h)
  double eps_spec = 0.0;
  double eps_L2 = 0.0;
  double X_l2 = 0.0;       // sqrt((1/area) int |X|^2)
  double Xtan_l2sq = 0.0;  // (1/area) int |X_tan|^2
  double psi_infty = 0.0;
  double hX_dev_infty = 0.0;  // max |h |X| - 1|
  double heintze_defect = 0.0;
  double laplace_dev = 0.0;
  double grad_r_infty = 0.0;
  double hausdorff = 0.0;
  double dF_distortion = 0.0;
  double Y_l2sq = 0.0;
  double W_l2sq = 0.0;
  double area = 0.0;
  double balance_residual = 0.0;
  int vertices = 0;
  int clamped_edges = 0;
  std::map<std::string, bool> flags;
};

struct SpectralPinch {
  double eps_spec = 0.0;
  double R0 = 0.0;
  bool valid = true;  // false when delta + h_infty^2 <= 0
};
SpectralPinch spectral_pinch(double lambda1, double h_infty, double delta, int n);

double l2_pinch(const PositionField& field, const VertexMeasure& measure, double h);

struct TangentialCheck {
  double Xtan_l2sq = 0.0;
  double bound = 0.0;
  bool ok = false;
};
TangentialCheck tangential_bound_check(const PositionField& field, const VertexMeasure& measure,
                                       double h_infty, double eps_L2, double slack = 0.02);

struct PsiResult {
  std::vector<double> psi;
  double psi_infty = 0.0;
  double hX_dev_infty = 0.0;
};
PsiResult psi_field(const PositionField& field, double h);

// integral of (c_delta(r) - |H| s_delta(r)); nonpositive up to discretization
double heintze_integrated_defect(const SurfaceMesh& mesh, const VertexMeasure& measure,
                                 const PositionField& field, const std::vector<double>& H);

// (1/area) int |cot_delta(R0) - Delta r / n| with Delta r from the exact
// ambient Hessian: Delta r = cot_delta(r) (n - |grad^M r|^2).
double laplace_deviation(const SurfaceMesh& mesh, const VertexMeasure& measure,
                         const PositionField& field, double R0);

struct YWDiagnostics {
  double Y_l2sq = 0.0;
  double W_l2sq = 0.0;
};
YWDiagnostics yw_diagnostics(const AmbientModel& model, const PositionField& field,
                             const std::vector<double>& H, const std::vector<Vec>& nu,
                             const VertexMeasure& measure, double h, double h_infty);

struct ProjectionDistortion {
  double grad_r_infty = 0.0;
  double dF_distortion = 0.0;
  bool star_shaped = true;
};
ProjectionDistortion radial_projection_distortion(const SurfaceMesh& mesh, const Vec& p0,
                                                  double R0);

PinchReport assemble_report(const SurfaceMesh& mesh, double tol = 1e-10);

// Flat JSON serialization, schema "pinchlab-report/1".
std::string report_to_json(const PinchReport& report);

}  // namespace pinchlab
