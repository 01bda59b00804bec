#include "pinchlab/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pinchlab {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + path);
}

namespace {

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return line;
  }
  throw std::runtime_error("unexpected end of file");
}

}  // namespace

void write_off(const SurfaceMesh& mesh, const std::string& path) {
  const bool curved = mesh.ambient.chart != Chart::Euclidean;
  std::ostringstream out;
  if (curved) out << "nOFF\n4\n";
  else out << "OFF\n";
  out << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  const int nc = curved ? 4 : 3;
  for (const auto& v : mesh.vertices) {
    for (int k = 0; k < nc; ++k) {
      if (k) out << ' ';
      out << fmt_double(v[k]);
    }
    out << '\n';
  }
  for (const auto& f : mesh.faces)
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  atomic_write(path, out.str());
}

SurfaceMesh read_off(const std::string& path, const AmbientModel& model) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  std::string header = next_content_line(in);
  {
    std::istringstream hs(header);
    std::string tag;
    hs >> tag;
    if (tag != "OFF" && tag != "nOFF") throw std::runtime_error("not an OFF file: " + path);
    if (tag == "nOFF") {
      int dim = 0;
      std::istringstream ds(next_content_line(in));
      ds >> dim;
      if (dim != 4) throw std::runtime_error("unsupported nOFF dimension");
    }
  }
  std::size_t nv = 0, nf = 0, ne = 0;
  {
    std::istringstream cs(next_content_line(in));
    cs >> nv >> nf >> ne;
    if (!cs || nv == 0 || nf == 0) throw std::runtime_error("bad OFF counts");
  }
  SurfaceMesh mesh;
  mesh.ambient = model;
  const int nc = model.chart == Chart::Euclidean ? 3 : 4;
  mesh.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    std::istringstream vs(next_content_line(in));
    Vec v = Vec::Zero();
    for (int k = 0; k < nc; ++k) vs >> v[k];
    if (!vs) throw std::runtime_error("bad OFF vertex line");
    mesh.vertices.push_back(v);
  }
  mesh.faces.reserve(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    std::istringstream fs(next_content_line(in));
    int cnt = 0;
    fs >> cnt;
    if (cnt != 3) throw std::runtime_error("only triangle faces are supported");
    std::array<int, 3> f{};
    fs >> f[0] >> f[1] >> f[2];
    if (!fs) throw std::runtime_error("bad OFF face line");
    mesh.faces.push_back(f);
  }
  return mesh;
}

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
  if (mesh.ambient.chart != Chart::Euclidean)
    throw std::invalid_argument("OBJ output is euclidean-chart only");
  std::ostringstream out;
  for (const auto& v : mesh.vertices)
    out << "v " << fmt_double(v[0]) << ' ' << fmt_double(v[1]) << ' ' << fmt_double(v[2]) << '\n';
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  atomic_write(path, out.str());
}

SurfaceMesh read_obj(const std::string& path, const AmbientModel& model) {
  if (model.chart != Chart::Euclidean)
    throw std::invalid_argument("OBJ input is euclidean-chart only");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  SurfaceMesh mesh;
  mesh.ambient = model;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec v = Vec::Zero();
      ls >> v[0] >> v[1] >> v[2];
      if (!ls) throw std::runtime_error("bad OBJ vertex line");
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int k = 0; k < 3; ++k) {
        std::string tok;
        if (!(ls >> tok)) throw std::runtime_error("bad OBJ face line");
        f[k] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      mesh.faces.push_back(f);
    }
  }
  if (mesh.vertices.empty() || mesh.faces.empty())
    throw std::runtime_error("no geometry in OBJ file: " + path);
  return mesh;
}

}  // namespace pinchlab
