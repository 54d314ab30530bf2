#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexfv/mesh.hpp"

namespace vfv {

using NodalScalarField = std::vector<double>;
using CellVectorField = std::vector<Vec2>;

// (G phi)_c = 1/|c| sum_n l_nc n_nc phi_n
CellVectorField gradient_G(const Mesh& mesh, const NodalScalarField& phi);
// (D v)_n = -1/|c_n| sum_c l_nc n_nc . v_c
NodalScalarField divergence_D(const Mesh& mesh, const CellVectorField& v);
// (C v)_n = -1/|c_n| sum_c l_nc n_nc x v_c
NodalScalarField curl_C(const Mesh& mesh, const CellVectorField& v);

// alpha_nc, stored per corner (same indexing as Mesh corners).
std::vector<double> alpha_coeffs(const Mesh& mesh);
// Cell-centred divergence sum_n alpha_nc (D v)_n.
std::vector<double> cell_divergence_Dtilde(const Mesh& mesh, const CellVectorField& v);

// Sum over nodes of |c_n| |f_n|, restricted to physical nodes.
double nodal_l1(const Mesh& mesh, const NodalScalarField& f);

struct IdentityCheck {
  std::string name;
  bool applicable = true;  // false when the mesh does not satisfy the hypotheses
  double residual = 0;     // relative
  double tolerance = 1e-12;
  bool holds() const { return residual <= tolerance; }
};

// Executable versions of the operator identities: node normals sum to zero and
// reproduce the area tensor, G is exact on affine data and dual to D, the
// alpha-weighted sums reproduce dual-cell quadrature, adjacent corner normals
// have cross product |c|/2 on cells with at most four nodes, and C G = 0. Random data is drawn from seed.
std::vector<IdentityCheck> check_identities(const Mesh& mesh, std::uint64_t seed = 1);

}  // namespace vfv
