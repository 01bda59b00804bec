#include "pinchlab/gluedspheres.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "pinchlab/curvature.hpp"
#include "pinchlab/spectral.hpp"

namespace pinchlab {

ProfileCoefficients coefficients(double eps) {
  if (!(eps > 0.0 && eps <= 0.25))
    throw std::domain_error("coefficients: eps must lie in (0, 0.25]");
  ProfileCoefficients c;
  c.eps = eps;
  const double e2 = eps * eps;
  const double w = std::pow(1.0 - e2, 1.5);
  c.a1 = (2.0 - 3.0 * e2) / (3.0 * eps * w);
  c.a2 = (1.0 - 2.0 * e2) / (4.0 * e2 * w);
  c.a0 = c.a1 * eps * e2 - c.a2 * e2 * e2 + e2 * std::acosh(1.0 / eps);
  auto root = [&](double sign) {
    const double u = 1.0 + sign * c.a0;
    return 0.5 * u + 0.5 * std::sqrt(u * u + e2 / 3.0);
  };
  c.r0_plus = root(1.0);
  c.r0_minus = root(-1.0);
  c.b1_plus = 1.0 / (3.0 * eps * c.r0_plus);
  c.b2_plus = -1.0 / (4.0 * e2 * c.r0_plus);
  c.b1_minus = 1.0 / (3.0 * eps * c.r0_minus);
  c.b2_minus = -1.0 / (4.0 * e2 * c.r0_minus);

  // plug-back identities: r0^2 - (1 +- a0) r0 - eps^2/12 = 0 and the C^1
  // slope match at r = eps
  for (double sign : {1.0, -1.0}) {
    const double r0 = sign > 0 ? c.r0_plus : c.r0_minus;
    const double res = r0 * r0 - (1.0 + sign * c.a0) * r0 - e2 / 12.0;
    if (std::abs(res) > 1e-12 * (1.0 + r0 * r0))
      throw std::runtime_error("coefficients: r0 identity check failed");
  }
  const double slope_poly = 3.0 * c.a1 * e2 - 4.0 * c.a2 * e2 * eps;
  const double slope_cat = eps / std::sqrt(1.0 - e2);
  if (std::abs(slope_poly - slope_cat) > 1e-12 * (1.0 + std::abs(slope_cat)))
    throw std::runtime_error("coefficients: C1 slope check failed");
  return c;
}

double profile(const ProfileCoefficients& c, int sheet, double r) {
  if (sheet != 1 && sheet != -1) throw std::invalid_argument("profile: sheet must be +-1");
  const double eps = c.eps, e2 = eps * eps;
  const double s = static_cast<double>(sheet);
  const double r0 = sheet > 0 ? c.r0_plus : c.r0_minus;
  const double tol = 1e-12 * (1.0 + r);
  if (r < e2 - tol || r > 3.0 * eps + r0 + tol)
    throw std::domain_error("profile: r outside the sheet domain");
  r = std::clamp(r, e2, 3.0 * eps + r0);
  if (r <= eps) return 1.0 + s * e2 * std::acosh(r / e2);
  if (r <= 2.0 * eps) {
    const double u = r - 2.0 * eps;
    return 1.0 + s * (c.a1 * u * u * u + c.a2 * u * u * u * u + c.a0);
  }
  if (r <= 3.0 * eps) {
    const double b1 = sheet > 0 ? c.b1_plus : c.b1_minus;
    const double b2 = sheet > 0 ? c.b2_plus : c.b2_minus;
    const double u = r - 2.0 * eps;
    return 1.0 + b1 * u * u * u + b2 * u * u * u * u + s * c.a0;
  }
  const double u = r - 3.0 * eps;
  return std::sqrt(std::max(0.0, r0 * r0 - u * u));
}

namespace {

using P2 = std::array<double, 2>;

struct RingCounts {
  int neck, glue, sphere, cap;
};

// One sheet of a junction in its local coordinates: throat at (eps^2, 1),
// sphere of radius r0^sheet centered at (3 eps, 0), traversed from the throat
// down to polar angle theta_end. When closed (with_cap), the arc runs past
// the south pole until it reaches r = 4 eps on the lower branch and is
// finished by a C^2 quartic patch z = z0 + c2 r^2 + c4 r^4, which stays
// within O(eps^4) of the sphere instead of introducing an O(eps) bulge.
std::vector<P2> junction_sheet(const ProfileCoefficients& c, int sheet, double theta_end,
                               bool with_cap, const RingCounts& rc) {
  const double eps = c.eps, e2 = eps * eps;
  const double r0 = sheet > 0 ? c.r0_plus : c.r0_minus;
  std::vector<P2> pts;
  const double T = std::acosh(1.0 / eps);  // catenoid parameter range
  for (int i = 0; i <= rc.neck; ++i) {
    const double r = e2 * std::cosh(T * i / rc.neck);
    pts.push_back({r, profile(c, sheet, r)});
  }
  for (int seg = 0; seg < 2; ++seg)
    for (int i = 1; i <= rc.glue; ++i) {
      const double r = (1.0 + seg) * eps + eps * i / rc.glue;
      pts.push_back({r, profile(c, sheet, r)});
    }
  if (with_cap) theta_end = -0.5 * M_PI + std::asin(eps / r0);
  for (int i = 1; i <= rc.sphere; ++i) {
    const double th = 0.5 * M_PI + (theta_end - 0.5 * M_PI) * i / rc.sphere;
    pts.push_back({3.0 * eps + r0 * std::cos(th), r0 * std::sin(th)});
  }
  if (with_cap) {
    // match z, z', z'' of the lower sphere branch at r_p = 4 eps
    const double rp = 4.0 * eps;
    const double zp = -std::sqrt(r0 * r0 - e2);
    const double sp = eps / std::sqrt(r0 * r0 - e2);
    const double qp = r0 * r0 / std::pow(r0 * r0 - e2, 1.5);
    const double c4 = (qp - sp / rp) / (8.0 * rp * rp);
    const double c2 = sp / (2.0 * rp) - 2.0 * c4 * rp * rp;
    const double z0 = zp - c2 * rp * rp - c4 * rp * rp * rp * rp;
    for (int i = 1; i <= rc.cap; ++i) {
      const double r = rp * (1.0 - static_cast<double>(i) / rc.cap);
      pts.push_back({r, z0 + c2 * r * r + c4 * r * r * r * r});
    }
    pts.back()[0] = 0.0;  // exact pole
  }
  return pts;
}

void append_transformed(std::vector<P2>& out, const std::vector<P2>& pts, double scale,
                        bool flip, bool skip_first) {
  for (std::size_t i = skip_first ? 1 : 0; i < pts.size(); ++i)
    out.push_back({scale * pts[i][0], (flip ? -1.0 : 1.0) * scale * pts[i][1]});
}

}  // namespace

GluedMesh build_glued_mesh(const FamilyParams& params) {
  const double eps = params.eps;
  if (params.l < 1 ||
      params.l > static_cast<int>(std::ceil(std::sqrt(std::log(1.0 / eps)))))
    throw std::invalid_argument("build_glued_mesh: l outside 1..ceil(sqrt(log(1/eps)))");
  if (params.l > 1)
    throw std::runtime_error("build_glued_mesh: multi-neck junctions (l > 1) not implemented");
  if (params.p < 2) throw std::invalid_argument("build_glued_mesh: p must be >= 2");
  if (params.n_r < 64)
    throw std::invalid_argument("build_glued_mesh: n_r < 64 leaves the neck under-resolved");

  const auto c = coefficients(eps);
  RingCounts rc;
  rc.neck = std::max(16, params.n_r / 4);
  rc.glue = std::max(8, params.n_r / 8);
  rc.sphere = std::max(24, params.n_r - rc.neck - 2 * rc.glue);
  rc.cap = std::max(6, rc.sphere / 8);
  RingCounts rc_half = rc;  // arc truncated at the equator for chained spheres
  rc_half.sphere = std::max(16, 3 * rc.sphere / 5);

  RevolutionSpec spec;
  spec.n_theta = params.n_theta;
  spec.sheet_a = junction_sheet(c, +1, -M_PI / 3.0, true, rc);

  const double s = c.r0_minus / c.r0_plus;  // scale between chained junctions
  if (params.p == 2) {
    spec.sheet_b = junction_sheet(c, -1, -M_PI / 3.0, true, rc);
  } else {
    append_transformed(spec.sheet_b, junction_sheet(c, -1, 0.0, false, rc_half), 1.0, false,
                       false);
    for (int k = 2; k < params.p; ++k) {
      const double sk = std::pow(s, k - 1);
      const bool flip = (k % 2 == 0);
      auto outer = junction_sheet(c, +1, 0.0, false, rc_half);
      std::reverse(outer.begin(), outer.end());
      append_transformed(spec.sheet_b, outer, sk, flip, false);
      const bool last = (k == params.p - 1);
      const auto inner = junction_sheet(c, -1, last ? -M_PI / 3.0 : 0.0, last, rc_half);
      append_transformed(spec.sheet_b, inner, sk, flip, true);
    }
  }

  GluedMesh out;
  out.coeffs = c;
  out.mesh = generate_revolution(AmbientModel::make(0.0), spec);

  const int nt = params.n_theta;
  const int na = nt * (static_cast<int>(spec.sheet_a.size()) - 1) + 1;
  out.sheet_label.assign(out.mesh.vertices.size(), 1);
  for (int v = 0; v < na; ++v) out.sheet_label[v] = 0;
  out.throat_ring.resize(nt);
  for (int j = 0; j < nt; ++j) out.throat_ring[j] = j;

  out.min_quality = 1e300;
  for (const auto& f : out.mesh.faces) {
    const Vec& a = out.mesh.vertices[f[0]];
    const Vec& b = out.mesh.vertices[f[1]];
    const Vec& d = out.mesh.vertices[f[2]];
    const double l0 = (b - a).squaredNorm(), l1 = (d - b).squaredNorm(),
                 l2 = (a - d).squaredNorm();
    const double area = 0.5 * (b - a).head<3>().cross((d - a).head<3>()).norm();
    out.min_quality = std::min(out.min_quality, 4.0 * std::sqrt(3.0) * area / (l0 + l1 + l2));
  }
  return out;
}

std::array<double, 2> analytic_regional_curvatures(const ProfileCoefficients& c, int sheet,
                                                   double r) {
  if (sheet != 1 && sheet != -1)
    throw std::invalid_argument("analytic_regional_curvatures: sheet must be +-1");
  const double eps = c.eps, e2 = eps * eps;
  const double sg = static_cast<double>(sheet);
  const double r0 = sheet > 0 ? c.r0_plus : c.r0_minus;
  double k1, k2;
  if (r >= e2 && r <= eps) {
    k1 = e2 / (r * r);
    k2 = -e2 / (r * r);
  } else if (r <= 2.0 * eps) {
    const double tau = r / eps - 1.0;
    k1 = sg * (1.0 + 2.0 * tau - 3.0 * tau * tau);
    k2 = -sg * (1.0 - tau) * (1.0 - tau);
  } else if (r <= 3.0 * eps) {
    const double tau = r / eps - 2.0;
    k1 = -2.0 * tau + 3.0 * tau * tau;
    k2 = (-tau * tau + tau * tau * tau) / (2.0 + tau);
  } else if (r <= 3.0 * eps + r0) {
    k1 = 1.0;
    k2 = 1.0 - 3.0 * eps / r;
  } else {
    throw std::domain_error("analytic_regional_curvatures: r outside the profile");
  }
  if (k1 < k2) std::swap(k1, k2);
  return {k1, k2};
}

double neck_B2_quadrature(double eps) {
  // both catenoid halves; substitution r = eps^2 + u^2 removes the endpoint
  // singularity of |B|^2 dA = 2 eps^4 / (r^2 sqrt(r^2 - eps^4)) dr dtheta
  const double e2 = eps * eps;
  const double U = std::sqrt(eps - e2);
  const int n = 4096;
  auto g = [&](double u) {
    const double r = e2 + u * u;
    return 4.0 * e2 * e2 / (r * r * std::sqrt(r + e2));
  };
  double acc = g(0.0) + g(U);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(U * i / n);
  return 4.0 * M_PI * acc * U / (3.0 * n);
}

double neck_B2_discrete(const GluedMesh& glued, const std::vector<double>& B_norm,
                        const VertexMeasure& measure) {
  const double eps = glued.coeffs.eps;
  const double zspan = eps * eps * std::acosh(1.0 / eps) * 1.5 + 1e-12;
  double acc = 0.0;
  for (std::size_t v = 0; v < glued.mesh.vertices.size(); ++v) {
    const double rho = glued.mesh.vertices[v].head<2>().norm();
    if (rho > eps * (1.0 + 1e-9)) continue;
    if (std::abs(glued.mesh.vertices[v][2] - 1.0) > zspan) continue;
    acc += measure.dual_area[v] * B_norm[v] * B_norm[v];
  }
  return acc;
}

double neck_B2_integral(double eps) {
  if (!(eps > 0.0 && eps <= 0.25))
    throw std::domain_error("neck_B2_integral: eps must lie in (0, 0.25]");
  const double closed = 8.0 * M_PI * std::sqrt(1.0 - eps * eps);
  const double quad = neck_B2_quadrature(eps);
  if (std::abs(quad / closed - 1.0) > 0.005)
    throw std::runtime_error("neck_B2_integral: quadrature drifted from the closed form");
  return closed;
}

BqSweep bq_blowup_rate(const std::vector<double>& eps_list, double q, int n_r, int n_theta) {
  if (eps_list.size() < 3)
    throw std::invalid_argument("bq_blowup_rate: need at least three eps values");
  if (q == 2.0) throw std::invalid_argument("bq_blowup_rate: q = 2 has no power rate");
  BqSweep out;
  for (double eps : eps_list) {
    FamilyParams params;
    params.eps = eps;
    params.n_r = n_r;
    params.n_theta = n_theta;
    const auto glued = build_glued_mesh(params);
    const auto field = shape_operator(glued.mesh);
    const auto measure = vertex_measures(glued.mesh);

    // resolution guard: the discrete neck curvature must track eps^2/r^2
    const double rt = std::pow(eps, 1.5);
    int best = -1;
    double bestd = 1e300;
    for (std::size_t v = 0; v < glued.mesh.vertices.size(); ++v) {
      const double rho = glued.mesh.vertices[v].head<2>().norm();
      if (rho < 1.05 * eps * eps || rho > 0.95 * eps) continue;
      if (std::abs(glued.mesh.vertices[v][2] - 1.0) >
          2.0 * eps * eps * std::acosh(1.0 / eps))
        continue;
      if (std::abs(rho - rt) < bestd) {
        bestd = std::abs(rho - rt);
        best = static_cast<int>(v);
      }
    }
    if (best < 0) throw std::runtime_error("bq_blowup_rate: no neck vertices found");
    const double rho = glued.mesh.vertices[best].head<2>().norm();
    const double analytic = std::sqrt(2.0) * eps * eps / (rho * rho);
    if (std::abs(field.B_norm[best] / analytic - 1.0) > 0.10) {
      std::ostringstream msg;
      msg << "bq_blowup_rate: insufficient resolution at eps = " << eps
          << " (neck |B| off by " << std::abs(field.B_norm[best] / analytic - 1.0) * 100.0
          << "%)";
      throw std::runtime_error(msg.str());
    }
    out.norms.push_back(norm_B_q(field, measure, q));
  }
  // least-squares slope of log ||B||_q against log eps
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(eps_list.size());
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const double x = std::log(eps_list[i]), y = std::log(out.norms[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return out;
}

double courtois_cutoff(double eps, double s) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("courtois_cutoff: eps in (0,1)");
  if (s <= eps) return 0.0;
  if (s >= std::sqrt(eps)) return 1.0;
  return 2.0 * std::log(s / eps) / std::log(1.0 / eps);
}

double lambda1_upper_bound_via_test_function(const GluedMesh& glued, double eps) {
  const auto& mesh = glued.mesh;
  if (glued.sheet_label.size() != mesh.vertices.size() || glued.throat_ring.empty())
    throw std::invalid_argument("lambda1_upper_bound: mesh lacks the family labeling");

  // multi-source Dijkstra from the throat ring along embedding edge lengths
  const auto adj = vertex_adjacency(mesh);
  std::vector<double> dist(mesh.vertices.size(), 1e300);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
  for (int v : glued.throat_ring) {
    dist[v] = 0.0;
    pq.push({0.0, v});
  }
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (int w : adj[v]) {
      const double nd = d + (mesh.vertices[w] - mesh.vertices[v]).norm();
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.push({nd, w});
      }
    }
  }

  Eigen::VectorXd f(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    f[v] = (glued.sheet_label[v] == 0 ? 1.0 : -1.0) * courtois_cutoff(eps, dist[v]);

  const auto op = assemble(mesh);
  const auto rq = rayleigh_quotient(op, f);
  if (rq.degenerate) throw std::runtime_error("lambda1_upper_bound: degenerate test function");
  return rq.value;
}

}  // namespace pinchlab
