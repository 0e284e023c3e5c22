#pragma once

#include "fluid_mesh.hpp"
#include "solid_mesh.hpp"
#include "types.hpp"

#include <string>

namespace fsi
{

/// Legacy-ASCII unstructured-grid snapshot of the fluid state.
/// u is the full velocity vector (block layout, length 2*n_vnodes),
/// p the pressure node vector (length n_pnodes).
void write_fluid_vtk(const FluidMesh & mesh, const Vector & u, const Vector & p,
                     const std::string & path);

/// Legacy-ASCII snapshot of the solid: displacement and velocity point data,
/// stress / det F cell data.
void write_solid_vtk(const SolidMesh & solid, const Vector & us,
                     const std::vector<Mat2> & deformation, const std::string & path);

/// Read a triangle mesh (points + VTK_TRIANGLE cells) from a legacy-ASCII
/// unstructured-grid file.
SolidMesh read_solid_vtk(const std::string & path);

} // namespace fsi
