#pragma once

#include <string>

#include "pinchlab/mesh.hpp"

namespace pinchlab {

// Shortest representation that round-trips a double exactly.
std::string fmt_double(double x);

// Write-to-temp then rename; no partial file on failure.
void atomic_write(const std::string& path, const std::string& content);

// ASCII OFF (plain OFF for 3 coordinates, nOFF with an explicit dimension for
// curved-chart vertices). Doubles are printed with enough digits for an exact
// round-trip.
void write_off(const SurfaceMesh& mesh, const std::string& path);
SurfaceMesh read_off(const std::string& path, const AmbientModel& model);

// ASCII OBJ, positions and faces only (euclidean chart).
void write_obj(const SurfaceMesh& mesh, const std::string& path);
SurfaceMesh read_obj(const std::string& path, const AmbientModel& model);

}  // namespace pinchlab
