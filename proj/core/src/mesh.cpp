#include "pinchlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace pinchlab {

namespace {

double face_area_from_lengths(double a, double b, double c) {
  // numerically stable Heron (Kahan)
  std::array<double, 3> l{a, b, c};
  std::sort(l.begin(), l.end());
  const double x = l[2], y = l[1], z = l[0];
  const double t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  if (t <= 0.0) return 0.0;
  return 0.25 * std::sqrt(t);
}

struct GridKey {
  std::int64_t a, b, c, d;
  bool operator==(const GridKey&) const = default;
};
struct GridKeyHash {
  std::size_t operator()(const GridKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int64_t v : {k.a, k.b, k.c, k.d}) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

class VertexGrid {
 public:
  VertexGrid(const std::vector<Vec>& pts, double cell) : pts_(pts), cell_(cell) {
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      const auto k = key(pts[i]);
      cells_[k].push_back(i);
      if (i == 0) lo_ = hi_ = k;
      lo_ = GridKey{std::min(lo_.a, k.a), std::min(lo_.b, k.b), std::min(lo_.c, k.c),
                    std::min(lo_.d, k.d)};
      hi_ = GridKey{std::max(hi_.a, k.a), std::max(hi_.b, k.b), std::max(hi_.c, k.c),
                    std::max(hi_.d, k.d)};
    }
  }

  // all vertices with embedding (euclidean) distance <= r from p
  std::vector<int> query(const Vec& p, double r) const {
    std::vector<int> out;
    auto lo = key(p - Vec::Constant(r));
    auto hi = key(p + Vec::Constant(r));
    // clamp to the occupied bounding box; probing empty cells of a wide query
    // cube costs more than scanning the points outright
    lo = GridKey{std::max(lo.a, lo_.a), std::max(lo.b, lo_.b), std::max(lo.c, lo_.c),
                 std::max(lo.d, lo_.d)};
    hi = GridKey{std::min(hi.a, hi_.a), std::min(hi.b, hi_.b), std::min(hi.c, hi_.c),
                 std::min(hi.d, hi_.d)};
    if (lo.a > hi.a || lo.b > hi.b || lo.c > hi.c || lo.d > hi.d) return out;
    const double cube = static_cast<double>(hi.a - lo.a + 1) *
                        static_cast<double>(hi.b - lo.b + 1) *
                        static_cast<double>(hi.c - lo.c + 1) *
                        static_cast<double>(hi.d - lo.d + 1);
    if (cube > static_cast<double>(pts_.size())) {
      for (int i = 0; i < static_cast<int>(pts_.size()); ++i)
        if ((pts_[i] - p).norm() <= r) out.push_back(i);
      return out;
    }
    for (std::int64_t a = lo.a; a <= hi.a; ++a)
      for (std::int64_t b = lo.b; b <= hi.b; ++b)
        for (std::int64_t c = lo.c; c <= hi.c; ++c)
          for (std::int64_t d = lo.d; d <= hi.d; ++d) {
            auto it = cells_.find(GridKey{a, b, c, d});
            if (it == cells_.end()) continue;
            for (int i : it->second)
              if ((pts_[i] - p).norm() <= r) out.push_back(i);
          }
    return out;
  }

  int nearest(const Vec& p) const {
    double r = cell_;
    for (int iter = 0; iter < 64; ++iter, r *= 2.0) {
      auto cand = query(p, r);
      if (cand.empty()) continue;
      int best = -1;
      double bd = std::numeric_limits<double>::max();
      for (int i : cand) {
        const double d = (pts_[i] - p).norm();
        if (d < bd) { bd = d; best = i; }
      }
      return best;
    }
    throw std::runtime_error("vertex grid nearest query failed");
  }

 private:
  GridKey key(const Vec& p) const {
    auto q = [&](double x) { return static_cast<std::int64_t>(std::floor(x / cell_)); };
    return GridKey{q(p[0]), q(p[1]), q(p[2]), q(p[3])};
  }
  const std::vector<Vec>& pts_;
  double cell_;
  GridKey lo_{}, hi_{};
  std::unordered_map<GridKey, std::vector<int>, GridKeyHash> cells_;
};

// closest point on triangle abc to p, euclidean in the embedding
Vec closest_point_on_triangle(const Vec& p, const Vec& a, const Vec& b, const Vec& c) {
  const Vec ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Vec bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return a + v * ab;
  }
  const Vec cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return a + w * ac;
  }
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + w * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom, w = vc * denom;
  return a + v * ab + w * ac;
}

}  // namespace

std::vector<EdgeInfo> mesh_edges(const SurfaceMesh& mesh) {
  std::map<std::pair<int, int>, EdgeInfo> edges;
  std::map<std::pair<int, int>, int> directed;
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
    const auto& fc = mesh.faces[f];
    for (int k = 0; k < 3; ++k) {
      const int u = fc[k], v = fc[(k + 1) % 3];
      if (u == v) throw std::runtime_error("degenerate face with repeated vertex");
      ++directed[{u, v}];
      auto key = std::minmax(u, v);
      auto& e = edges[{key.first, key.second}];
      e.v0 = key.first;
      e.v1 = key.second;
      if (e.f0 < 0) e.f0 = f;
      else if (e.f1 < 0) e.f1 = f;
      else throw std::runtime_error("non-manifold edge (more than two incident faces)");
    }
  }
  for (const auto& [de, count] : directed) {
    if (count > 1) throw std::runtime_error("inconsistent orientation (repeated directed edge)");
    if (!mesh.allow_boundary && !directed.count({de.second, de.first}))
      throw std::runtime_error("boundary edge in a mesh not flagged as open");
  }
  std::vector<EdgeInfo> out;
  out.reserve(edges.size());
  for (const auto& [k, e] : edges) out.push_back(e);
  return out;
}

int euler_characteristic(const SurfaceMesh& mesh) {
  const auto edges = mesh_edges(mesh);
  return static_cast<int>(mesh.vertices.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(mesh.faces.size());
}

std::vector<std::vector<int>> vertex_adjacency(const SurfaceMesh& mesh) {
  std::vector<std::vector<int>> adj(mesh.vertices.size());
  for (const auto& e : mesh_edges(mesh)) {
    adj[e.v0].push_back(e.v1);
    adj[e.v1].push_back(e.v0);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

MeshGeometry mesh_geometry(const SurfaceMesh& mesh) {
  MeshGeometry g;
  const std::size_t nf = mesh.faces.size();
  g.edge_len.resize(nf);
  g.face_area.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& fc = mesh.faces[f];
    for (int k = 0; k < 3; ++k)
      g.edge_len[f][k] =
          mesh.ambient.distance(mesh.vertices[fc[(k + 1) % 3]], mesh.vertices[fc[(k + 2) % 3]]);
    g.face_area[f] = face_area_from_lengths(g.edge_len[f][0], g.edge_len[f][1], g.edge_len[f][2]);
  }
  g.total_area = std::accumulate(g.face_area.begin(), g.face_area.end(), 0.0);
  return g;
}

void validate(const SurfaceMesh& mesh) {
  if (mesh.vertices.empty() || mesh.faces.empty())
    throw std::runtime_error("empty mesh");
  for (const auto& fc : mesh.faces)
    for (int v : fc)
      if (v < 0 || v >= static_cast<int>(mesh.vertices.size()))
        throw std::runtime_error("face index out of range");
  mesh_edges(mesh);  // manifold + orientation checks

  if (mesh.ambient.chart != Chart::Euclidean) {
    for (const auto& v : mesh.vertices)
      if (mesh.ambient.constraint_violation(v) > 1e-8)
        throw std::runtime_error("vertex off the model hypersurface");
  } else {
    for (const auto& v : mesh.vertices)
      if (std::abs(v[3]) > 1e-12) throw std::runtime_error("euclidean vertex with 4th coordinate");
  }

  const auto g = mesh_geometry(mesh);
  const double mean_area = g.total_area / static_cast<double>(mesh.faces.size());
  for (double a : g.face_area)
    if (a < 1e-12 * mean_area) throw std::runtime_error("degenerate face area");

  if (!mesh.allow_disconnected) {
    const auto adj = vertex_adjacency(mesh);
    std::vector<char> seen(mesh.vertices.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    std::size_t count = 1;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          q.push(v);
        }
    }
    if (count != mesh.vertices.size()) throw std::runtime_error("mesh not connected");
  }
}

double total_area(const SurfaceMesh& mesh) { return mesh_geometry(mesh).total_area; }

VertexMeasure vertex_measures(const SurfaceMesh& mesh) {
  const auto g = mesh_geometry(mesh);
  VertexMeasure m;
  m.dual_area.assign(mesh.vertices.size(), 0.0);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f)
    for (int v : mesh.faces[f]) m.dual_area[v] += g.face_area[f] / 3.0;
  m.total = g.total_area;
  return m;
}

std::vector<Vec> vertex_normals(const SurfaceMesh& mesh) {
  const auto& model = mesh.ambient;
  std::vector<Vec> normals(mesh.vertices.size(), Vec::Zero());
  std::vector<std::array<Vec, 3>> frames(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    frames[v] = model.tangent_basis(mesh.vertices[v]);

  for (const auto& fc : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      const int v = fc[k], a = fc[(k + 1) % 3], b = fc[(k + 2) % 3];
      const Vec e1 = model.log(mesh.vertices[v], mesh.vertices[a]);
      const Vec e2 = model.log(mesh.vertices[v], mesh.vertices[b]);
      const auto& fr = frames[v];
      const Eigen::Vector3d u(model.dot(e1, fr[0]), model.dot(e1, fr[1]), model.dot(e1, fr[2]));
      const Eigen::Vector3d w(model.dot(e2, fr[0]), model.dot(e2, fr[1]), model.dot(e2, fr[2]));
      const Eigen::Vector3d cr = u.cross(w);
      const double nu = u.norm(), nw = w.norm(), nc = cr.norm();
      if (nu <= 0.0 || nw <= 0.0 || nc <= 0.0) continue;
      const double angle = std::asin(std::clamp(nc / (nu * nw), -1.0, 1.0));
      normals[v] += (angle / nc) * (cr[0] * fr[0] + cr[1] * fr[1] + cr[2] * fr[2]);
    }
  }
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    const double n = model.norm(normals[v]);
    if (n <= 0.0) throw std::runtime_error("zero vertex normal");
    normals[v] /= n;
  }
  return normals;
}

double extrinsic_ball_area(const SurfaceMesh& mesh, const Vec& x0, double s) {
  const auto g = mesh_geometry(mesh);
  std::vector<double> dist(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    dist[v] = mesh.ambient.distance(x0, mesh.vertices[v]);

  double area = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& fc = mesh.faces[f];
    const double d0 = dist[fc[0]], d1 = dist[fc[1]], d2 = dist[fc[2]];
    const int inside = (d0 <= s) + (d1 <= s) + (d2 <= s);
    if (inside == 3) {
      area += g.face_area[f];
      continue;
    }
    if (inside == 0) continue;
    // clip the reference triangle against the linear interpolant <= s
    std::array<Eigen::Vector2d, 3> ref{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0),
                                       Eigen::Vector2d(0, 1)};
    std::array<double, 3> val{d0, d1, d2};
    std::vector<Eigen::Vector2d> poly;
    for (int k = 0; k < 3; ++k) {
      const auto& p = ref[k];
      const auto& q = ref[(k + 1) % 3];
      const double vp = val[k], vq = val[(k + 1) % 3];
      if (vp <= s) poly.push_back(p);
      if ((vp <= s) != (vq <= s)) {
        const double t = (s - vp) / (vq - vp);
        poly.push_back(p + t * (q - p));
      }
    }
    double a2 = 0.0;
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
      const auto& p = poly[k];
      const auto& q = poly[k + 1];
      a2 += p[0] * q[1] - q[0] * p[1];
    }
    if (!poly.empty()) {
      const auto& p = poly.back();
      const auto& q = poly.front();
      a2 += p[0] * q[1] - q[0] * p[1];
    }
    area += std::abs(a2) * g.face_area[f];  // reference triangle area = 1/2
  }
  return area;
}

double hausdorff_to_geodesic_sphere(const SurfaceMesh& mesh, const Vec& p0, double R0) {
  const auto& model = mesh.ambient;
  double worst = 0.0;
  for (const auto& v : mesh.vertices)
    worst = std::max(worst, std::abs(model.distance(p0, v) - R0));

  // sphere-to-mesh direction on quasi-uniform samples
  double max_edge = 0.0;
  for (const auto& e : mesh_edges(mesh))
    max_edge = std::max(max_edge, (mesh.vertices[e.v0] - mesh.vertices[e.v1]).norm());
  VertexGrid grid(mesh.vertices, std::max(max_edge, 1e-12));
  std::vector<std::vector<int>> incident(mesh.vertices.size());
  for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f)
    for (int v : mesh.faces[f]) incident[v].push_back(f);

  const auto frame = model.tangent_basis(p0);
  const std::size_t n_samples = 10 * mesh.vertices.size();
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  std::vector<int> face_stamp(mesh.faces.size(), -1);
  for (std::size_t i = 0; i < n_samples; ++i) {
    // Fibonacci sphere directions
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n_samples);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    const Eigen::Vector3d u(rho * std::cos(phi), rho * std::sin(phi), z);
    const Vec dir = u[0] * frame[0] + u[1] * frame[1] + u[2] * frame[2];
    const Vec sample = model.exp(p0, R0 * dir);

    const int nv = grid.nearest(sample);
    const double dnv = (mesh.vertices[nv] - sample).norm();
    auto cand = grid.query(sample, dnv + max_edge + 1e-15);
    // nearest-first lets the shrinking bound prune most of the candidate ball
    std::sort(cand.begin(), cand.end(), [&](int a, int b) {
      return (mesh.vertices[a] - sample).squaredNorm() <
             (mesh.vertices[b] - sample).squaredNorm();
    });
    Vec best = mesh.vertices[nv];
    double bd = dnv;
    for (int cv : cand) {
      if ((mesh.vertices[cv] - sample).norm() > bd + max_edge) break;
      for (int f : incident[cv]) {
        if (face_stamp[f] == static_cast<int>(i)) continue;
        face_stamp[f] = static_cast<int>(i);
        const auto& fc = mesh.faces[f];
        const Vec cp = closest_point_on_triangle(sample, mesh.vertices[fc[0]],
                                                 mesh.vertices[fc[1]], mesh.vertices[fc[2]]);
        const double d = (cp - sample).norm();
        if (d < bd) { bd = d; best = cp; }
      }
    }
    const double d_geo = model.chart == Chart::Euclidean
                             ? bd
                             : model.distance(sample, model.project(best));
    worst = std::max(worst, d_geo);
  }
  return worst;
}

SurfaceMesh generate_icosphere(const AmbientModel& model, const Vec& center,
                               double radius, int subdivisions) {
  if (subdivisions < 0 || subdivisions > 8)
    throw std::invalid_argument("subdivisions out of [0, 8]");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> dirs = {
      {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& d : dirs) d.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
      {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
      {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      dirs.push_back((dirs[a] + dirs[b]).normalized());
      const int idx = static_cast<int>(dirs.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  SurfaceMesh mesh;
  mesh.ambient = model;
  mesh.faces = std::move(faces);
  mesh.vertices.reserve(dirs.size());
  const Vec c = model.project(center);
  const auto frame = model.tangent_basis(c);
  for (const auto& d : dirs) {
    const Vec v = d[0] * frame[0] + d[1] * frame[1] + d[2] * frame[2];
    mesh.vertices.push_back(model.exp(c, radius * v));
  }

  // make face orientation agree with the outward radial direction
  const auto& f0 = mesh.faces[0];
  const Vec e1 = model.log(mesh.vertices[f0[0]], mesh.vertices[f0[1]]);
  const Vec e2 = model.log(mesh.vertices[f0[0]], mesh.vertices[f0[2]]);
  const auto fr = model.tangent_basis(mesh.vertices[f0[0]]);
  const Eigen::Vector3d u(model.dot(e1, fr[0]), model.dot(e1, fr[1]), model.dot(e1, fr[2]));
  const Eigen::Vector3d w(model.dot(e2, fr[0]), model.dot(e2, fr[1]), model.dot(e2, fr[2]));
  const Eigen::Vector3d cr = u.cross(w);
  const Vec n = cr[0] * fr[0] + cr[1] * fr[1] + cr[2] * fr[2];
  const Vec out_dir = radial_data(model, c, mesh.vertices[f0[0]]).grad_r;
  if (model.dot(n, out_dir) < 0.0)
    for (auto& f : mesh.faces) std::swap(f[1], f[2]);
  return mesh;
}

SurfaceMesh generate_revolution(const AmbientModel& model, const RevolutionSpec& spec) {
  if (model.chart != Chart::Euclidean)
    throw std::invalid_argument("generate_revolution: euclidean chart only");
  if (spec.n_theta < 16) throw std::invalid_argument("n_theta too small");
  const bool two_sheets = !spec.sheet_b.empty();
  if (spec.sheet_a.size() < 2 || (two_sheets && spec.sheet_b.size() < 2))
    throw std::invalid_argument("profile sheets need at least two points");
  if (two_sheets) {
    const double dr = std::hypot(spec.sheet_a[0][0] - spec.sheet_b[0][0],
                                 spec.sheet_a[0][1] - spec.sheet_b[0][1]);
    if (dr > 1e-8) throw std::invalid_argument("profile sheets do not meet at the shared circle");
  }

  SurfaceMesh mesh;
  mesh.ambient = model;
  const int nt = spec.n_theta;
  const double pole_tol = 1e-12;

  // ring index per profile point; -1 marks a pole vertex
  auto add_ring = [&](double r, double z) {
    const int base = static_cast<int>(mesh.vertices.size());
    for (int j = 0; j < nt; ++j) {
      const double th = 2.0 * M_PI * j / nt;
      mesh.vertices.push_back(Vec(r * std::cos(th), r * std::sin(th), z, 0.0));
    }
    return base;
  };
  auto add_pole = [&](double z) {
    mesh.vertices.push_back(Vec(0.0, 0.0, z, 0.0));
    return static_cast<int>(mesh.vertices.size()) - 1;
  };
  // strip between consecutive rings; flip controls winding
  auto add_strip = [&](int ring0, int ring1, bool flip) {
    for (int j = 0; j < nt; ++j) {
      const int j1 = (j + 1) % nt;
      const int a = ring0 + j, b = ring0 + j1, c = ring1 + j, d = ring1 + j1;
      if (!flip) {
        mesh.faces.push_back({a, b, d});
        mesh.faces.push_back({a, d, c});
      } else {
        mesh.faces.push_back({a, d, b});
        mesh.faces.push_back({a, c, d});
      }
    }
  };
  auto add_fan = [&](int ring, int pole, bool flip) {
    for (int j = 0; j < nt; ++j) {
      const int j1 = (j + 1) % nt;
      if (!flip) mesh.faces.push_back({ring + j, ring + j1, pole});
      else mesh.faces.push_back({ring + j, pole, ring + j1});
    }
  };

  int shared_ring = -1;
  bool open_boundary = false;
  auto build_sheet = [&](const std::vector<std::array<double, 2>>& sheet, bool flip) {
    int prev = -1;
    bool prev_is_pole = false;
    for (std::size_t i = 0; i < sheet.size(); ++i) {
      const double r = sheet[i][0], z = sheet[i][1];
      const bool is_pole = r < pole_tol;
      if (is_pole && i != 0 && i != sheet.size() - 1)
        throw std::invalid_argument("interior profile point on the axis");
      int cur;
      if (i == 0 && shared_ring >= 0 && two_sheets) {
        cur = shared_ring;  // join circle shared between sheets
      } else if (is_pole) {
        cur = add_pole(z);
      } else {
        cur = add_ring(r, z);
      }
      if (i == 0 && shared_ring < 0 && !is_pole) shared_ring = cur;
      if (i > 0) {
        if (prev_is_pole) add_fan(cur, prev, !flip);
        else if (is_pole) add_fan(prev, cur, flip);
        else add_strip(prev, cur, flip);
      }
      prev = cur;
      prev_is_pole = is_pole;
    }
    if (!prev_is_pole && !two_sheets) open_boundary = true;
  };

  if (two_sheets && spec.sheet_a[0][0] < pole_tol)
    throw std::invalid_argument("two-sheet profiles must share a circle, not a pole");
  build_sheet(spec.sheet_a, false);
  if (two_sheets) build_sheet(spec.sheet_b, true);
  if (!two_sheets && spec.sheet_a[0][0] >= pole_tol) open_boundary = true;
  mesh.allow_boundary = open_boundary && !spec.caps;
  if (open_boundary && spec.caps)
    throw std::invalid_argument("open profile but caps requested; close the profile instead");

  // orient outward by signed volume (closed surfaces)
  if (!mesh.allow_boundary) {
    double vol6 = 0.0;
    for (const auto& f : mesh.faces) {
      const auto& a = mesh.vertices[f[0]];
      const auto& b = mesh.vertices[f[1]];
      const auto& c = mesh.vertices[f[2]];
      vol6 += a.head<3>().dot(b.head<3>().cross(c.head<3>()));
    }
    if (vol6 < 0.0)
      for (auto& f : mesh.faces) std::swap(f[1], f[2]);
  }
  return mesh;
}

Vec chord_centroid(const SurfaceMesh& mesh) {
  Vec c = Vec::Zero();
  for (const auto& v : mesh.vertices) c += v;
  c /= static_cast<double>(mesh.vertices.size());
  return mesh.ambient.project(c);
}

namespace {

SurfaceMesh perturb_with_field(const SurfaceMesh& mesh,
                               double amplitude,
                               const std::vector<double>& field) {
  double fmax = 0.0;
  for (double w : field) fmax = std::max(fmax, std::abs(w));
  if (fmax <= 0.0) throw std::runtime_error("perturbation field vanishes");

  const Vec c = chord_centroid(mesh);
  SurfaceMesh out = mesh;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto rd = radial_data(mesh.ambient, c, mesh.vertices[i]);
    const Vec dir = mesh.ambient.log(c, mesh.vertices[i]) / rd.r;
    const double rnew = rd.r + amplitude * field[i] / fmax;
    out.vertices[i] = mesh.ambient.exp(c, rnew * dir);
  }
  return out;
}

// direction of a vertex in the tangent frame at the centroid, as (theta, phi)
std::vector<Eigen::Vector3d> centroid_directions(const SurfaceMesh& mesh, const Vec& c) {
  const auto frame = mesh.ambient.tangent_basis(c);
  std::vector<Eigen::Vector3d> dirs(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto rd = radial_data(mesh.ambient, c, mesh.vertices[i]);
    const Vec u = mesh.ambient.log(c, mesh.vertices[i]) / rd.r;
    dirs[i] = Eigen::Vector3d(mesh.ambient.dot(u, frame[0]), mesh.ambient.dot(u, frame[1]),
                              mesh.ambient.dot(u, frame[2]))
                  .normalized();
  }
  return dirs;
}

double real_harmonic(int l, int m, const Eigen::Vector3d& u) {
  const double theta = std::acos(std::clamp(u[2], -1.0, 1.0));
  const double phi = std::atan2(u[1], u[0]);
  const int ma = std::abs(m);
  const double p = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(ma), theta);
  if (m == 0) return p;
  return m > 0 ? p * std::cos(ma * phi) : p * std::sin(ma * phi);
}

}  // namespace

SurfaceMesh perturb_radially(const SurfaceMesh& mesh, double amplitude, int l, int m) {
  if (amplitude == 0.0) return mesh;
  const Vec c = chord_centroid(mesh);
  const auto dirs = centroid_directions(mesh, c);
  std::vector<double> field(mesh.vertices.size());
  for (std::size_t i = 0; i < field.size(); ++i) field[i] = real_harmonic(l, m, dirs[i]);
  return perturb_with_field(mesh, amplitude, field);
}

SurfaceMesh perturb_radially_seeded(const SurfaceMesh& mesh, double amplitude,
                                    std::uint32_t seed) {
  if (amplitude == 0.0) return mesh;
  const Vec c = chord_centroid(mesh);
  const auto dirs = centroid_directions(mesh, c);
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> field(mesh.vertices.size(), 0.0);
  for (int l = 1; l <= 4; ++l)
    for (int m = -l; m <= l; ++m) {
      const double coef = gauss(rng);
      for (std::size_t i = 0; i < field.size(); ++i)
        field[i] += coef * real_harmonic(l, m, dirs[i]);
    }
  return perturb_with_field(mesh, amplitude, field);
}

}  // namespace pinchlab
