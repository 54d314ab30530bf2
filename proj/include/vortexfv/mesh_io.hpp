#pragma once

#include <iosfwd>
#include <string>

#include "vortexfv/mesh.hpp"

namespace vfv {

// Plain-text "polymesh 1" format:
//   nodes N / N lines "x y"; cells M / M lines "k i1 ... ik";
//   boundary periodic|zerogradient; period Lx Ly [x0 y0] (periodic only);
//   images M / M lines "k kx1 ky1 ... kxk kyk" (optional, periodic);
//   ghosts K / K lines "ghost donor" (optional). '#' starts a comment.
Mesh read_mesh(const std::string& path, bool allow_reorient = false);
Mesh parse_mesh(std::istream& in, bool allow_reorient = false);
void write_mesh(const Mesh& mesh, const std::string& path);
void write_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace vfv
