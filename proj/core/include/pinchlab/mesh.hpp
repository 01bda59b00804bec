#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pinchlab/spaceform.hpp"

namespace pinchlab {

struct SurfaceMesh {
  AmbientModel ambient;
  std::vector<Vec> vertices;
  std::vector<std::array<int, 3>> faces;
  bool allow_boundary = false;
  bool allow_disconnected = false;
};

// Throws std::runtime_error describing the first violated invariant:
// closed oriented 2-manifold, connected, no degenerate faces, vertices on the
// model hypersurface.
void validate(const SurfaceMesh& mesh);

struct EdgeInfo {
  int v0, v1;      // v0 < v1
  int f0 = -1, f1 = -1;
};

// Undirected edge list with incident faces; checks manifoldness/orientation.
std::vector<EdgeInfo> mesh_edges(const SurfaceMesh& mesh);
int euler_characteristic(const SurfaceMesh& mesh);
std::vector<std::vector<int>> vertex_adjacency(const SurfaceMesh& mesh);

// Intrinsic metric data: geodesic edge lengths per chart, Heron face areas.
struct MeshGeometry {
  // edge_len[f][k] = length of the edge opposite corner k
  std::vector<std::array<double, 3>> edge_len;
  std::vector<double> face_area;
  double total_area = 0.0;
};
MeshGeometry mesh_geometry(const SurfaceMesh& mesh);

double total_area(const SurfaceMesh& mesh);

struct VertexMeasure {
  std::vector<double> dual_area;  // barycentric (1/3 per incident face)
  double total = 0.0;
};
VertexMeasure vertex_measures(const SurfaceMesh& mesh);

// Angle-weighted unit normals, tangent to the model for curved charts,
// consistent with face orientation.
std::vector<Vec> vertex_normals(const SurfaceMesh& mesh);

// Area of {x in M : dist(x0, x) <= s}; faces split by the linear interpolant
// of the vertex distances.
double extrinsic_ball_area(const SurfaceMesh& mesh, const Vec& x0, double s);

// Symmetric Hausdorff estimate against the geodesic sphere S(p0, R0):
// vertex deviations one way, >= 10x quasi-uniform sphere samples against the
// mesh the other way (point-triangle projection in the embedding).
double hausdorff_to_geodesic_sphere(const SurfaceMesh& mesh, const Vec& p0, double R0);

SurfaceMesh generate_icosphere(const AmbientModel& model, const Vec& center,
                               double radius, int subdivisions);

// Surface of revolution about the z axis (euclidean chart). Each sheet is a
// polyline in the (r, z) half-plane; the sheets share their first point (the
// join circle). A sheet endpoint with r ~ 0 becomes a pole vertex. A single
// open sheet with caps=false yields a boundary mesh (test fixture only).
struct RevolutionSpec {
  std::vector<std::array<double, 2>> sheet_a;
  std::vector<std::array<double, 2>> sheet_b;  // may be empty (open surface)
  int n_theta = 64;
  bool caps = true;
};
SurfaceMesh generate_revolution(const AmbientModel& model, const RevolutionSpec& spec);

// Moves every vertex radially about the projected chord centroid by
// amplitude * w with max |w| = 1 over the mesh.
SurfaceMesh perturb_radially(const SurfaceMesh& mesh, double amplitude,
                             int l, int m);
SurfaceMesh perturb_radially_seeded(const SurfaceMesh& mesh, double amplitude,
                                    std::uint32_t seed);

Vec chord_centroid(const SurfaceMesh& mesh);  // projected to the model

}  // namespace pinchlab
