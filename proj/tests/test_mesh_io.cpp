#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pinchlab/mesh.hpp"
#include "pinchlab/mesh_io.hpp"

using namespace pinchlab;

namespace {

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("mesh_io");

TEST_CASE("fmt_double round-trips exactly") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 1e300, 0.0, 123456.789}) {
    const std::string s = fmt_double(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("atomic_write creates and overwrites") {
  const std::string path = tmp_path("pinchlab_aw_test.txt");
  atomic_write(path, "first\n");
  CHECK(slurp(path) == "first\n");
  atomic_write(path, "second\n");
  CHECK(slurp(path) == "second\n");
  std::remove(path.c_str());
}

TEST_CASE("OFF round trip is exact") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = perturb_radially_seeded(
      generate_icosphere(model, model.base_point(), 1.0, 2), 0.07, 9);
  const std::string path = tmp_path("pinchlab_io_test.off");
  write_off(mesh, path);
  const auto back = read_off(path, model);
  REQUIRE(back.vertices.size() == mesh.vertices.size());
  REQUIRE(back.faces.size() == mesh.faces.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    CHECK((back.vertices[v] - mesh.vertices[v]).cwiseAbs().maxCoeff() == 0.0);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) CHECK(back.faces[f] == mesh.faces[f]);
  // byte-identical on rewrite
  const std::string first = slurp(path);
  write_off(back, path);
  CHECK(slurp(path) == first);
  std::remove(path.c_str());
}

TEST_CASE("nOFF round trip for curved charts") {
  const auto model = AmbientModel::make(-1.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 0.6, 2);
  const std::string path = tmp_path("pinchlab_io_test.noff");
  write_off(mesh, path);
  const auto back = read_off(path, model);
  REQUIRE(back.vertices.size() == mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    CHECK((back.vertices[v] - mesh.vertices[v]).cwiseAbs().maxCoeff() == 0.0);
  validate(back);
  std::remove(path.c_str());
}

TEST_CASE("OBJ round trip is exact") {
  const auto model = AmbientModel::make(0.0);
  const auto mesh = generate_icosphere(model, model.base_point(), 1.0, 1);
  const std::string path = tmp_path("pinchlab_io_test.obj");
  write_obj(mesh, path);
  const auto back = read_obj(path, model);
  REQUIRE(back.vertices.size() == mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    CHECK((back.vertices[v] - mesh.vertices[v]).cwiseAbs().maxCoeff() == 0.0);
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) CHECK(back.faces[f] == mesh.faces[f]);
  std::remove(path.c_str());
}

TEST_CASE("missing files throw") {
  const auto model = AmbientModel::make(0.0);
  CHECK_THROWS(read_off(tmp_path("pinchlab_does_not_exist.off"), model));
  CHECK_THROWS(read_obj(tmp_path("pinchlab_does_not_exist.obj"), model));
}

TEST_SUITE_END();
