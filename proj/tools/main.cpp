#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pinchlab/barycenter.hpp"
#include "pinchlab/curvature.hpp"
#include "pinchlab/gluedspheres.hpp"
#include "pinchlab/mesh.hpp"
#include "pinchlab/mesh_io.hpp"
#include "pinchlab/pinch.hpp"
#include "pinchlab/rigidity.hpp"
#include "pinchlab/spectral.hpp"

namespace {

using namespace pinchlab;

// RFC 4180: CRLF rows, fields quoted when they contain separators
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string fd(double x) { return fmt_double(x); }

SurfaceMesh read_mesh(const std::string& path, const AmbientModel& model) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".obj")
    return read_obj(path, model);
  return read_off(path, model);
}

double mesh_min_quality(const SurfaceMesh& mesh) {
  const auto geom = mesh_geometry(mesh);
  double q = 1e300;
  for (std::size_t f = 0; f < geom.face_area.size(); ++f) {
    const auto& l = geom.edge_len[f];
    q = std::min(q, 4.0 * std::sqrt(3.0) * geom.face_area[f] /
                        (l[0] * l[0] + l[1] * l[1] + l[2] * l[2]));
  }
  return q;
}

void print_mesh_summary(const SurfaceMesh& mesh) {
  const auto edges = mesh_edges(mesh);
  std::cout << "vertices " << mesh.vertices.size() << " edges " << edges.size() << " faces "
            << mesh.faces.size() << " area " << fd(total_area(mesh)) << " min_quality "
            << fd(mesh_min_quality(mesh)) << "\n";
}

const std::vector<std::string> kReportColumns = {
    "lambda1",       "h_infty",     "delta",        "h",
    "R0",            "eps_spec",    "eps_L2",       "X_l2",
    "Xtan_l2sq",     "psi_infty",   "hX_dev_infty", "heintze_defect",
    "laplace_dev",   "grad_r_infty", "hausdorff",   "dF_distortion",
    "Y_l2sq",        "W_l2sq",      "area",         "balance_residual",
    "vertices",      "clamped_edges"};

std::vector<std::string> report_values(const PinchReport& r) {
  return {fd(r.lambda1),     fd(r.h_infty),      fd(r.delta),
          fd(r.h),           fd(r.R0),           fd(r.eps_spec),
          fd(r.eps_L2),      fd(r.X_l2),         fd(r.Xtan_l2sq),
          fd(r.psi_infty),   fd(r.hX_dev_infty), fd(r.heintze_defect),
          fd(r.laplace_dev), fd(r.grad_r_infty), fd(r.hausdorff),
          fd(r.dF_distortion), fd(r.Y_l2sq),     fd(r.W_l2sq),
          fd(r.area),        fd(r.balance_residual),
          std::to_string(r.vertices), std::to_string(r.clamped_edges)};
}

struct GenerateOpts {
  std::string family, out;
  double delta = 0.0, radius = 1.0, amplitude = 0.1, eps = 0.1;
  int subdiv = 4, nr = 128, ntheta = 128;
  unsigned seed = 1;
};

int cmd_generate(const GenerateOpts& o) {
  SurfaceMesh mesh;
  if (o.family == "icosphere" || o.family == "perturbed") {
    const auto model = AmbientModel::make(o.delta);
    mesh = generate_icosphere(model, model.base_point(), o.radius, o.subdiv);
    if (o.family == "perturbed")
      mesh = perturb_radially_seeded(mesh, o.amplitude, o.seed);
  } else if (o.family == "glued") {
    FamilyParams params;
    params.eps = o.eps;
    params.n_r = o.nr;
    params.n_theta = o.ntheta;
    mesh = build_glued_mesh(params).mesh;
  } else if (o.family == "revolution") {
    RevolutionSpec spec;
    spec.n_theta = o.ntheta;
    for (int i = 0; i <= o.nr; ++i) {
      const double phi = M_PI * i / o.nr;
      spec.sheet_a.push_back({o.radius * std::sin(phi), o.radius * std::cos(phi)});
    }
    spec.sheet_a.front()[0] = spec.sheet_a.back()[0] = 0.0;
    mesh = generate_revolution(AmbientModel::make(0.0), spec);
  } else {
    std::cerr << "unknown family: " << o.family
              << " (expected icosphere|perturbed|glued|revolution)\n";
    return 2;
  }
  validate(mesh);
  write_off(mesh, o.out);
  print_mesh_summary(mesh);
  return 0;
}

struct AnalyzeOpts {
  std::string mesh, out, fields_csv;
  double delta = 0.0, tol = 1e-10;
};

int cmd_analyze(const AnalyzeOpts& o) {
  const auto model = AmbientModel::make(o.delta);
  const auto mesh = read_mesh(o.mesh, model);
  const auto report = assemble_report(mesh, o.tol);
  const std::string json = report_to_json(report);
  if (o.out.empty())
    std::cout << json;
  else
    atomic_write(o.out, json);

  if (!o.fields_csv.empty()) {
    const auto measure = vertex_measures(mesh);
    const auto H = mean_curvature(mesh);
    const auto shape = shape_operator(mesh);
    const auto center = solve_center(mesh, measure, o.tol);
    const auto field = position_field(mesh, center.p0);
    const auto psi = psi_field(field, report.h);
    const int n = mesh.ambient.dim - 1;
    std::string csv = csv_row({"vertex", "H", "B_norm", "X_norm", "psi", "laplace_r"});
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
      const double s = s_delta(mesh.ambient.delta, field.r[v]);
      const double gradm2 = field.xtan_norm[v] * field.xtan_norm[v] / (s * s);
      const double lap = cot_delta(mesh.ambient.delta, field.r[v]) * (n - gradm2);
      csv += csv_row({std::to_string(v), fd(H[v]), fd(shape.B_norm[v]), fd(field.x_norm[v]),
                      fd(psi.psi[v]), fd(lap)});
    }
    atomic_write(o.fields_csv, csv);
  }
  return 0;
}

struct RigidityOpts {
  std::string out, family = "constant";
  double mu = -1.0, delta = 1.0, R = 1.0, dt = 0.0;
  std::vector<double> eps_list{0.0};
  int profiles = 0;  // > 0: seeded random admissible profiles
  unsigned seed = 1;
};

RadialCurvatureProfile seeded_profile(double mu, double delta, double R, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.1, 1.0), phase(0.0, 2.0 * M_PI),
      freq(0.5, 3.0);
  const double a = amp(rng), ph = phase(rng), fq = freq(rng);
  return {mu, delta,
          [=](double t) {
            const double w = 0.5 + 0.5 * std::sin(fq * M_PI * t / R + ph);
            return delta - (delta - mu) * a * w;
          },
          R};
}

int cmd_rigidity(const RigidityOpts& o) {
  const double dt = o.dt > 0.0 ? o.dt : o.R / 2000.0;
  std::vector<std::pair<std::string, RadialCurvatureProfile>> profiles;
  if (o.profiles > 0) {
    for (int i = 0; i < o.profiles; ++i)
      profiles.emplace_back("seeded-" + std::to_string(i),
                            seeded_profile(o.mu, o.delta, o.R, o.seed + i));
  } else if (o.family == "constant") {
    profiles.emplace_back("constant", constant_profile(o.delta, o.R));
  } else if (o.family == "linear") {
    profiles.emplace_back("linear", linear_profile(o.mu, o.delta, o.R));
  } else if (o.family == "bump") {
    profiles.emplace_back("bump", bump_profile(o.mu, o.delta, o.R));
  } else {
    std::cerr << "unknown profile family: " << o.family << "\n";
    return 2;
  }

  std::string csv = csv_row({"profile", "mu", "delta", "R", "eps", "boundary_defect",
                             "max_ratio", "bound", "F_monotone", "ok", "status"});
  for (const auto& [name, prof] : profiles) {
    RiccatiSolution sol;
    std::string fail;
    try {
      sol = integrate_riccati(prof, dt);
    } catch (const std::exception& e) {
      fail = std::string(e.what()).find("blow-up") != std::string::npos ? "focal failure"
                                                                        : e.what();
    }
    for (double eps : o.eps_list) {
      std::vector<std::string> row{name, fd(prof.mu), fd(prof.delta), fd(prof.R), fd(eps)};
      if (!fail.empty()) {
        row.insert(row.end(), {"", "", "", "", "", fail});
      } else {
        const double defect =
            (sol.rho.back() - cot_delta(prof.delta, prof.R)) / sol.n;
        try {
          const auto cert = rigidity_certificate(sol, eps);
          row.insert(row.end(),
                     {fd(defect), fd(cert.max_ratio),
                      fd(eps > 0.0 ? std::exp(cert.C_explicit * std::sqrt(eps)) : 1.0),
                      cert.F_monotone ? "1" : "0", cert.ok ? "1" : "0", "ok"});
        } catch (const std::exception& e) {
          row.insert(row.end(), {fd(defect), "", "", "", "", e.what()});
        }
      }
      csv += csv_row(row);
    }
  }
  atomic_write(o.out, csv);
  return 0;
}

struct SweepOpts {
  std::string kind = "amplitude", out, plot_prefix;
  double delta = 0.0, tol = 1e-10;
  std::vector<double> amplitudes{0.02, 0.05, 0.1, 0.2};
  std::vector<double> eps_list{0.2, 0.1, 0.05};
  int subdiv = 4, nr = 128, ntheta = 128;
  unsigned seed = 1;
};

void write_plot_data(const std::string& prefix, const std::string& column,
                     const std::vector<double>& x, const std::vector<std::string>& y) {
  std::string body;
  for (std::size_t i = 0; i < x.size(); ++i)
    body += fmt_double(x[i]) + " " + y[i] + "\n";
  atomic_write(prefix + "." + column + ".dat", body);
}

int cmd_sweep(const SweepOpts& o) {
  std::vector<double> axis;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  if (o.kind == "amplitude") {
    if (o.amplitudes.empty()) {
      std::cerr << "empty amplitude list\n";
      return 2;
    }
    const auto model = AmbientModel::make(o.delta);
    const auto base = generate_icosphere(model, model.base_point(), 1.0, o.subdiv);
    header.push_back("amplitude");
    header.insert(header.end(), kReportColumns.begin(), kReportColumns.end());
    header.push_back("status");
    for (double a : o.amplitudes) {
      std::vector<std::string> row{fd(a)};
      try {
        const auto mesh = perturb_radially_seeded(base, a, o.seed);
        const auto rep = assemble_report(mesh, o.tol);
        const auto vals = report_values(rep);
        row.insert(row.end(), vals.begin(), vals.end());
        row.push_back("ok");
      } catch (const std::exception& e) {
        row.resize(header.size() - 1);
        row.push_back(e.what());
      }
      axis.push_back(a);
      rows.push_back(row);
    }
  } else if (o.kind == "glued") {
    if (o.eps_list.empty()) {
      std::cerr << "empty eps list\n";
      return 2;
    }
    header = {"eps"};
    header.insert(header.end(), kReportColumns.begin(), kReportColumns.end());
    header.insert(header.end(), {"quotient", "neck_B2_mesh", "neck_B2_closed", "B1", "B2",
                                 "B4", "B0_1", "min_quality", "status"});
    for (double eps : o.eps_list) {
      std::vector<std::string> row{fd(eps)};
      try {
        FamilyParams params;
        params.eps = eps;
        params.n_r = o.nr;
        params.n_theta = o.ntheta;
        const auto glued = build_glued_mesh(params);
        const auto rep = assemble_report(glued.mesh, o.tol);
        const auto vals = report_values(rep);
        row.insert(row.end(), vals.begin(), vals.end());
        const auto shape = shape_operator(glued.mesh);
        const auto measure = vertex_measures(glued.mesh);
        row.push_back(fd(lambda1_upper_bound_via_test_function(glued, eps)));
        row.push_back(fd(neck_B2_discrete(glued, shape.B_norm, measure)));
        row.push_back(fd(neck_B2_integral(eps)));
        row.push_back(fd(norm_B_q(shape, measure, 1.0)));
        row.push_back(fd(norm_B_q(shape, measure, 2.0)));
        row.push_back(fd(norm_B_q(shape, measure, 4.0)));
        row.push_back(fd(norm_B0_q(shape, measure, 1.0)));
        row.push_back(fd(glued.min_quality));
        row.push_back("ok");
      } catch (const std::exception& e) {
        row.resize(header.size() - 1);
        row.push_back(e.what());
      }
      axis.push_back(eps);
      rows.push_back(row);
    }
  } else {
    std::cerr << "unknown sweep kind: " << o.kind << " (expected amplitude|glued)\n";
    return 2;
  }

  std::string csv = csv_row(header);
  for (const auto& row : rows) csv += csv_row(row);
  atomic_write(o.out, csv);

  if (!o.plot_prefix.empty()) {
    for (const std::string& col :
         {"eps_spec", "hausdorff", "psi_infty", "Xtan_l2sq", "laplace_dev", "lambda1"}) {
      const auto it = std::find(header.begin(), header.end(), col);
      if (it == header.end()) continue;
      const auto idx = static_cast<std::size_t>(it - header.begin());
      std::vector<std::string> ys;
      for (const auto& row : rows) ys.push_back(idx < row.size() ? row[idx] : "");
      write_plot_data(o.plot_prefix, col, axis, ys);
    }
  }
  return 0;
}

struct ExampleOpts {
  std::string out;
  std::vector<double> eps_list{0.2, 0.1, 0.05};
  double tol = 1e-10;
  int nr = 128, ntheta = 128;
};

int cmd_example(const ExampleOpts& o) {
  std::string csv =
      csv_row({"eps", "h_infty", "lambda1", "quotient", "neck_B2_closed", "neck_B2_quad",
               "neck_B2_mesh", "B1", "B2", "B4", "B0_1", "vertices", "min_quality"});
  for (double eps : o.eps_list) {
    FamilyParams params;
    params.eps = eps;
    params.n_r = o.nr;
    params.n_theta = o.ntheta;
    const auto glued = build_glued_mesh(params);
    const auto op = assemble(glued.mesh);
    const auto eig = lambda1(op, o.tol);
    const auto H = mean_curvature(glued.mesh);
    const auto shape = shape_operator(glued.mesh);
    const auto measure = vertex_measures(glued.mesh);
    csv += csv_row({fd(eps), fd(h_infty(H)), fd(eig.lambda1),
                    fd(lambda1_upper_bound_via_test_function(glued, eps)),
                    fd(neck_B2_integral(eps)), fd(neck_B2_quadrature(eps)),
                    fd(neck_B2_discrete(glued, shape.B_norm, measure)),
                    fd(norm_B_q(shape, measure, 1.0)), fd(norm_B_q(shape, measure, 2.0)),
                    fd(norm_B_q(shape, measure, 4.0)), fd(norm_B0_q(shape, measure, 1.0)),
                    std::to_string(glued.mesh.vertices.size()), fd(glued.min_quality)});
  }
  if (o.out.empty())
    std::cout << csv;
  else
    atomic_write(o.out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral pinching diagnostics on discrete hypersurfaces"};
  app.set_config("--config", "", "key=value config file with [command] sections");
  app.require_subcommand(1);

  GenerateOpts gen;
  auto* cg = app.add_subcommand("generate", "generate a mesh fixture (OFF)");
  cg->fallthrough();
  cg->configurable();
  cg->add_option("family", gen.family, "icosphere|perturbed|glued|revolution")->required();
  cg->add_option("--ambient-delta", gen.delta, "ambient curvature");
  cg->add_option("--radius", gen.radius, "geodesic radius");
  cg->add_option("--subdiv", gen.subdiv, "icosphere subdivisions");
  cg->add_option("--amplitude", gen.amplitude, "perturbation amplitude");
  cg->add_option("--eps", gen.eps, "glued-family neck parameter");
  cg->add_option("--nr", gen.nr, "profile rings");
  cg->add_option("--ntheta", gen.ntheta, "azimuthal resolution");
  cg->add_option("--seed", gen.seed, "perturbation seed");
  cg->add_option("--out", gen.out, "output OFF path")->required();

  AnalyzeOpts an;
  auto* ca = app.add_subcommand("analyze", "full pinch report for a mesh");
  ca->fallthrough();
  ca->configurable();
  ca->add_option("--mesh", an.mesh, "input OFF/OBJ")->required();
  ca->add_option("--ambient-delta", an.delta, "ambient curvature");
  ca->add_option("--tol", an.tol, "solver tolerance");
  ca->add_option("--out", an.out, "output JSON path (stdout when omitted)");
  ca->add_option("--fields-csv", an.fields_csv, "per-vertex fields CSV path");

  RigidityOpts rg;
  auto* cr = app.add_subcommand("rigidity", "Riccati comparison certificate sweep");
  cr->fallthrough();
  cr->configurable();
  cr->add_option("--mu", rg.mu, "curvature lower bound");
  cr->add_option("--ambient-delta", rg.delta, "curvature upper bound");
  cr->add_option("--R", rg.R, "integration radius");
  cr->add_option("--dt", rg.dt, "step size (default R/2000)");
  cr->add_option("--family", rg.family, "constant|linear|bump");
  cr->add_option("--profiles", rg.profiles, "number of seeded random profiles");
  cr->add_option("--eps-list", rg.eps_list, "boundary defects to certify");
  cr->add_option("--seed", rg.seed, "profile seed");
  cr->add_option("--out", rg.out, "output CSV path")->required();

  SweepOpts sw;
  auto* cs = app.add_subcommand("sweep", "batch report sweep (CSV + plot data)");
  cs->fallthrough();
  cs->configurable();
  cs->add_option("--kind", sw.kind, "amplitude|glued");
  cs->add_option("--ambient-delta", sw.delta, "ambient curvature");
  cs->add_option("--tol", sw.tol, "solver tolerance");
  cs->add_option("--amplitudes", sw.amplitudes, "amplitude sweep values");
  cs->add_option("--eps-list", sw.eps_list, "glued sweep values");
  cs->add_option("--subdiv", sw.subdiv, "icosphere subdivisions");
  cs->add_option("--nr", sw.nr, "glued profile rings");
  cs->add_option("--ntheta", sw.ntheta, "glued azimuthal resolution");
  cs->add_option("--seed", sw.seed, "perturbation seed");
  cs->add_option("--plot-prefix", sw.plot_prefix, "prefix for x/y plot-data files");
  cs->add_option("--out", sw.out, "output CSV path")->required();

  ExampleOpts ex;
  auto* ce = app.add_subcommand("example", "glued-family sweep with curvature integrals");
  ce->fallthrough();
  ce->configurable();
  ce->add_option("--eps-list", ex.eps_list, "neck parameters");
  ce->add_option("--tol", ex.tol, "solver tolerance");
  ce->add_option("--nr", ex.nr, "profile rings");
  ce->add_option("--ntheta", ex.ntheta, "azimuthal resolution");
  ce->add_option("--out", ex.out, "output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cg->parsed()) return cmd_generate(gen);
    if (ca->parsed()) {
      if (!std::filesystem::exists(an.mesh)) {
        std::cerr << "no such file: " << an.mesh << "\n";
        return 2;
      }
      return cmd_analyze(an);
    }
    if (cr->parsed()) return cmd_rigidity(rg);
    if (cs->parsed()) return cmd_sweep(sw);
    if (ce->parsed()) return cmd_example(ex);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
