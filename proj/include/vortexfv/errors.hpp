#pragma once

#include <stdexcept>
#include <string>

namespace vfv {

enum class MeshErrorKind {
  NonSimplePolygon,
  ZeroAreaCell,
  DanglingNode,
  InconsistentOrientation,
  NonManifoldEdge,
  TangledMesh,
  Validation,
};

const char* to_string(MeshErrorKind kind);

class MeshError : public std::runtime_error {
 public:
  MeshError(MeshErrorKind kind, const std::string& what);
  MeshErrorKind kind() const { return kind_; }

 private:
  MeshErrorKind kind_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Raised when the 2x2 nodal system of the nodal-velocity closure has no
// unique solution.
class SingularNodalSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateStencil : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an analytic formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& what);
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class UnsupportedCombination : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace vfv
