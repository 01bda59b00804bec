#include "pinchlab/curvature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pinchlab/spectral.hpp"

namespace pinchlab {

namespace {

// Mixed Voronoi dual areas (intrinsic lengths); obtuse triangles fall back to
// the half/quarter split. Pairs with the cotangent stiffness so that the
// mean-curvature normal is exact on round spheres.
std::vector<double> voronoi_dual_areas(const SurfaceMesh& mesh) {
  const auto geom = mesh_geometry(mesh);
  std::vector<double> va(mesh.vertices.size(), 0.0);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& l = geom.edge_len[f];  // l[k] opposite corner k
    const double area = geom.face_area[f];
    std::array<double, 3> cot;
    int obtuse = -1;
    for (int k = 0; k < 3; ++k) {
      const int ka = (k + 1) % 3, kb = (k + 2) % 3;
      cot[k] = (l[ka] * l[ka] + l[kb] * l[kb] - l[k] * l[k]) / (4.0 * area);
      if (cot[k] < 0.0) obtuse = k;
    }
    for (int k = 0; k < 3; ++k) {
      const int ka = (k + 1) % 3, kb = (k + 2) % 3;
      if (obtuse < 0)
        va[mesh.faces[f][k]] += (l[ka] * l[ka] * cot[ka] + l[kb] * l[kb] * cot[kb]) / 8.0;
      else
        va[mesh.faces[f][k]] += (k == obtuse ? 0.5 : 0.25) * area;
    }
  }
  return va;
}

}  // namespace

std::vector<double> mean_curvature(const SurfaceMesh& mesh) {
  const auto op = assemble(mesh, /*clamp_negative=*/false);
  const auto va = voronoi_dual_areas(mesh);
  const auto normals = vertex_normals(mesh);
  const int nverts = static_cast<int>(mesh.vertices.size());
  const int n = mesh.ambient.dim - 1;  // hypersurface dimension

  // S applied to the embedding coordinates approximates -Delta X = n H nu
  // (plus a model-normal component that the projection on nu discards)
  Eigen::MatrixXd coords(nverts, 4);
  for (int v = 0; v < nverts; ++v) coords.row(v) = mesh.vertices[v].transpose();
  const Eigen::MatrixXd lap = op.stiffness * coords;

  std::vector<double> H(nverts);
  for (int v = 0; v < nverts; ++v) {
    const Vec hv = lap.row(v).transpose() / va[v];
    H[v] = mesh.ambient.dot(hv, normals[v]) / static_cast<double>(n);
  }
  return H;
}

namespace {

std::vector<int> ring_neighbors(const std::vector<std::vector<int>>& adj, int v, int depth) {
  std::set<int> seen{v};
  std::vector<int> frontier{v};
  for (int d = 0; d < depth; ++d) {
    std::vector<int> next;
    for (int u : frontier)
      for (int w : adj[u])
        if (seen.insert(w).second) next.push_back(w);
    frontier = std::move(next);
  }
  seen.erase(v);
  return std::vector<int>(seen.begin(), seen.end());
}

// principal curvatures of the graph eta(xi) at the origin with fitted
// gradient g and Hessian Q: generalized eigenvalues of (II, I_g)
std::array<double, 2> graph_principal_curvatures(const Eigen::Vector2d& g,
                                                 const Eigen::Matrix2d& q) {
  const double w = std::sqrt(1.0 + g.squaredNorm());
  const Eigen::Matrix2d ii = q / w;
  Eigen::Matrix2d ig = Eigen::Matrix2d::Identity() + g * g.transpose();
  // det(II - kappa I_g) = 0
  const double a = ig.determinant();
  const double b = -(ii(0, 0) * ig(1, 1) + ii(1, 1) * ig(0, 0) - 2.0 * ii(0, 1) * ig(0, 1));
  const double c = ii.determinant();
  const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
  const double k1 = (-b + disc) / (2.0 * a);
  const double k2 = (-b - disc) / (2.0 * a);
  return {k1, k2};
}

}  // namespace

CurvatureField shape_operator(const SurfaceMesh& mesh) {
  const auto& model = mesh.ambient;
  const auto adj = vertex_adjacency(mesh);
  const auto normals = vertex_normals(mesh);
  const int nverts = static_cast<int>(mesh.vertices.size());

  CurvatureField out;
  out.H.resize(nverts);
  out.B_norm.resize(nverts);
  out.B0_norm.resize(nverts);
  out.principal.resize(nverts);

  for (int v = 0; v < nverts; ++v) {
    const auto frame = model.tangent_basis(mesh.vertices[v]);
    // normal in frame coordinates, then a tangent pair (t1, t2) of M
    const Eigen::Vector3d n3(model.dot(normals[v], frame[0]), model.dot(normals[v], frame[1]),
                             model.dot(normals[v], frame[2]));
    Eigen::Vector3d seed = std::abs(n3[0]) < 0.9 ? Eigen::Vector3d::UnitX()
                                                 : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d t1 = (seed - seed.dot(n3) * n3).normalized();
    const Eigen::Vector3d t2 = n3.cross(t1);

    for (int depth = 2; depth <= 3; ++depth) {
      const auto nb = ring_neighbors(adj, v, depth);
      if (nb.size() < 5) {
        if (depth == 3) {
          std::ostringstream msg;
          msg << "shape_operator: deficient stencil at vertex " << v;
          throw std::runtime_error(msg.str());
        }
        continue;
      }
      Eigen::MatrixXd A(nb.size(), 5);
      Eigen::VectorXd rhs(nb.size());
      for (std::size_t j = 0; j < nb.size(); ++j) {
        const Vec u = model.log(mesh.vertices[v], mesh.vertices[nb[j]]);
        const Eigen::Vector3d q(model.dot(u, frame[0]), model.dot(u, frame[1]),
                                model.dot(u, frame[2]));
        const double x = q.dot(t1), y = q.dot(t2), eta = q.dot(n3);
        A(j, 0) = x;
        A(j, 1) = y;
        A(j, 2) = 0.5 * x * x;
        A(j, 3) = x * y;
        A(j, 4) = 0.5 * y * y;
        rhs(j) = eta;
      }
      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
      if (svd.rank() < 5) {
        if (depth == 3) {
          std::ostringstream msg;
          msg << "shape_operator: rank-deficient stencil at vertex " << v;
          throw std::runtime_error(msg.str());
        }
        continue;
      }
      const Eigen::VectorXd coef = svd.solve(rhs);
      const Eigen::Vector2d g(coef[0], coef[1]);
      Eigen::Matrix2d q;
      q << coef[2], coef[3], coef[3], coef[4];
      auto [k1, k2] = graph_principal_curvatures(g, q);
      // neighbors of an outward-normal sphere lie below the tangent plane;
      // flip so the round sphere comes out positive
      k1 = -k1;
      k2 = -k2;
      if (k1 < k2) std::swap(k1, k2);
      out.principal[v] = {k1, k2};
      out.H[v] = 0.5 * (k1 + k2);
      out.B_norm[v] = std::sqrt(k1 * k1 + k2 * k2);
      out.B0_norm[v] = (k1 - k2) / std::sqrt(2.0);
      break;
    }
  }
  return out;
}

namespace {

double lq_norm(const std::vector<double>& vals, const VertexMeasure& measure, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("norm_B_q needs q > 0");
  if (vals.size() != measure.dual_area.size())
    throw std::invalid_argument("field/measure size mismatch");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double b : vals) m = std::max(m, b);
    return m;
  }
  double acc = 0.0;
  for (std::size_t v = 0; v < vals.size(); ++v)
    acc += measure.dual_area[v] * std::pow(vals[v], q);
  return std::pow(acc / measure.total, 1.0 / q);
}

}  // namespace

double norm_B_q(const CurvatureField& field, const VertexMeasure& measure, double q) {
  return lq_norm(field.B_norm, measure, q);
}

double norm_B0_q(const CurvatureField& field, const VertexMeasure& measure, double q) {
  return lq_norm(field.B0_norm, measure, q);
}

double h_infty(const std::vector<double>& H) {
  if (H.empty()) throw std::invalid_argument("empty curvature field");
  double m = 0.0;
  for (double h : H) m = std::max(m, std::abs(h));
  return m;
}

double h_infty(const CurvatureField& field) { return h_infty(field.H); }

}  // namespace pinchlab
