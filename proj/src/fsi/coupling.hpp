#pragma once

#include "fluid_mesh.hpp"
#include "solid_mesh.hpp"
#include "types.hpp"

#include <string>
#include <vector>

namespace fsi
{

/// Isoparametric interpolation operator between the fluid velocity space and
/// the solid nodes: P(i,j) = phi_i(x_j^s) with hanging-node constraints folded
/// into the (reduced) fluid basis. D is the two-component block diagonal of
/// P^T and is applied per velocity component.
struct CouplingMatrix
{
  SparseMat P; // n_v_reduced x n_solid_nodes, column-major
  std::vector<FluidMesh::Locate> host; // per solid node, for warm rebuilds

  int fluid_dim() const { return static_cast<int>(P.rows()); }
  int solid_dim() const { return static_cast<int>(P.cols()); }

  /// D as an explicit sparse matrix (2Ns x 2Nvr), block layout.
  SparseMat d_matrix() const;
};

/// Build P from the current solid configuration. `prev` (optional) provides
/// cached host cells used as starting guesses.
CouplingMatrix build_coupling(const FluidMesh & mesh, const SolidMesh & solid,
                              const CouplingMatrix * prev = nullptr);

/// u^s = D u for a reduced fluid velocity vector (block layout 2*Nvr).
Vector interpolate_to_solid(const CouplingMatrix & c, const Vector & u_reduced);

/// Staged application D^T (As (D u)) without forming the global sandwich.
Vector sandwich_apply(const CouplingMatrix & c, const SparseMat & As,
                      const Vector & u_reduced);

/// Explicitly assembled D^T As D (2Nvr x 2Nvr).
SparseMat sandwich_matrix(const CouplingMatrix & c, const SparseMat & As);

void dump_coupling(const CouplingMatrix & c, const std::string & path);

} // namespace fsi
