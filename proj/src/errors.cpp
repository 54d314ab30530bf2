#include "vortexfv/errors.hpp"

namespace vfv {

const char* to_string(MeshErrorKind kind) {
  switch (kind) {
    case MeshErrorKind::NonSimplePolygon: return "NonSimplePolygon";
    case MeshErrorKind::ZeroAreaCell: return "ZeroAreaCell";
    case MeshErrorKind::DanglingNode: return "DanglingNode";
    case MeshErrorKind::InconsistentOrientation: return "InconsistentOrientation";
    case MeshErrorKind::NonManifoldEdge: return "NonManifoldEdge";
    case MeshErrorKind::TangledMesh: return "TangledMesh";
    case MeshErrorKind::Validation: return "ValidationError";
  }
  return "MeshError";
}

MeshError::MeshError(MeshErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

ConfigError::ConfigError(const std::string& key, const std::string& what)
    : std::runtime_error(key.empty() ? what : "'" + key + "': " + what), key_(key) {}

}  // namespace vfv
