#include "pinchlab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pinchlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

LaplaceOperator assemble(const SurfaceMesh& mesh, bool clamp_negative) {
  const auto g = mesh_geometry(mesh);
  const int n = static_cast<int>(mesh.vertices.size());

  std::map<std::pair<int, int>, double> weight;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& fc = mesh.faces[f];
    const auto& l = g.edge_len[f];
    const double area = g.face_area[f];
    if (area <= 0.0) throw std::runtime_error("degenerate face in assembly");
    for (int k = 0; k < 3; ++k) {
      // cotangent at corner k, opposite edge (k+1, k+2)
      const double a = l[k], b = l[(k + 1) % 3], c = l[(k + 2) % 3];
      const double cot = (b * b + c * c - a * a) / (4.0 * area);
      const int u = fc[(k + 1) % 3], v = fc[(k + 2) % 3];
      weight[std::minmax(u, v)] += 0.5 * cot;
    }
  }

  LaplaceOperator op;
  op.size = n;
  int clamped = 0;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(weight.size() * 4);
  for (const auto& [e, w0] : weight) {
    double w = w0;
    if (clamp_negative && w < 0.0) {
      w = 0.0;
      ++clamped;
    }
    trip.emplace_back(e.first, e.second, -w);
    trip.emplace_back(e.second, e.first, -w);
    trip.emplace_back(e.first, e.first, w);
    trip.emplace_back(e.second, e.second, w);
  }
  op.stiffness.resize(n, n);
  op.stiffness.setFromTriplets(trip.begin(), trip.end());
  op.clamped_edges = clamped;

  const auto vm = vertex_measures(mesh);
  op.mass = Eigen::Map<const Eigen::VectorXd>(vm.dual_area.data(), n);
  return op;
}

EigenResult lambda1(const LaplaceOperator& op, double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-4)) throw std::invalid_argument("tol out of [1e-12, 1e-4]");
  const int n = op.size;
  const Eigen::VectorXd& m = op.mass;
  const double mtot = m.sum();

  // small positive shift keeps the factorization definite; the generalized
  // eigenvector is unchanged and lambda is recovered by Rayleigh quotient
  const double scale = op.stiffness.diagonal().sum() / mtot;
  const double sigma = 1e-3 * scale;
  Eigen::SparseMatrix<double> shifted = op.stiffness;
  for (int i = 0; i < n; ++i) shifted.coeffRef(i, i) += sigma * m[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success) throw std::runtime_error("factorization failed");

  auto deflate = [&](Eigen::VectorXd& x) {
    x.array() -= m.dot(x) / mtot;
  };
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i)
    x[i] = (splitmix64(static_cast<std::uint64_t>(i)) & 1ull) ? 1.0 : -1.0;
  deflate(x);
  x /= std::sqrt(x.dot(m.cwiseProduct(x)));

  EigenResult res;
  const int max_iter = 50000;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd y = solver.solve(m.cwiseProduct(x));
    deflate(y);
    const double nrm = std::sqrt(y.dot(m.cwiseProduct(y)));
    if (!(nrm > 0.0)) throw std::runtime_error("eigeniteration collapsed");
    x = y / nrm;
    const Eigen::VectorXd sx = op.stiffness * x;
    const double lam = x.dot(sx);  // x is M-normalized
    const Eigen::VectorXd r = sx - lam * m.cwiseProduct(x);
    res.residual = r.norm() / (m.cwiseProduct(x)).norm();
    res.iterations = it;
    res.lambda1 = lam;
    if (res.residual <= tol) {
      res.eigenvector = x;
      return res;
    }
  }
  std::ostringstream msg;
  msg << "lambda1 iteration did not converge: residual " << res.residual << " after "
      << res.iterations << " iterations (tol " << tol << ")";
  throw std::runtime_error(msg.str());
}

RayleighResult rayleigh_quotient(const LaplaceOperator& op, const Eigen::VectorXd& f) {
  if (f.size() != op.size) throw std::invalid_argument("size mismatch");
  const Eigen::VectorXd& m = op.mass;
  Eigen::VectorXd g = f;
  g.array() -= m.dot(f) / m.sum();
  const double denom = g.dot(m.cwiseProduct(g));
  RayleighResult out;
  if (denom <= 1e-24 * f.squaredNorm() || denom == 0.0) {
    out.degenerate = true;
    return out;
  }
  out.value = g.dot(op.stiffness * g) / denom;
  return out;
}

std::vector<double> dense_spectrum_oracle(const LaplaceOperator& op) {
  if (op.size > 2000) throw std::invalid_argument("dense oracle capped at 2000 vertices");
  const Eigen::VectorXd isqrt = op.mass.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd b = Eigen::MatrixXd(op.stiffness);
  b = isqrt.asDiagonal() * b * isqrt.asDiagonal();
  b = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolve failed");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + op.size);
  return out;
}

}  // namespace pinchlab
