#pragma once

#include "fluid_mesh.hpp"
#include "quadrature.hpp"
#include "solid_mesh.hpp"
#include "solid_state.hpp"
#include "sparse.hpp"
#include "types.hpp"

#include <functional>

namespace fsi
{

// Fluid operators live in the reduced (hanging-node-eliminated) velocity and
// pressure bases, block layout [x; y]. Solid operators live on solid nodes.

/// rho_f (phi_k, phi_m), block diagonal; SPD for rho_f > 0.
SparseOperator assemble_fluid_mass(const FluidMesh & mesh, double rho_f);

/// Unweighted velocity mass matrix (convection solves).
SparseOperator assemble_velocity_mass(const FluidMesh & mesh);

/// mu_f (du_i/dx_j + du_j/dx_i, dv_i/dx_j): the two-one-coupled deviatoric
/// form with K12/K21 off-diagonal blocks; symmetric as a whole.
SparseOperator assemble_fluid_stiffness(const FluidMesh & mesh, double mu_f);

/// B with (B_i)_{mk} = -(phi_k, d phi_m / d x_i), stacked [B1; B2]
/// (2Nvr x Npr). The saddle system is [[A, B], [B^T, 0]].
SparseOperator assemble_divergence(const FluidMesh & mesh);

/// (rho_s - rho_f) P1 mass on the current solid configuration (2Ns x 2Ns).
SparseOperator assemble_solid_mass(const SolidMesh & solid, double rho_s, double rho_f);

/// Full solid tangent K^s (2Ns x 2Ns): elastic mu_s dt terms, mu_s dt^2
/// geometric terms, dt^2 stress-transport terms and dt stress terms, with
/// K21^s the transpose of K12^s. Not symmetric unless grad_u and tau vanish.
SparseOperator assemble_solid_tangent(const SolidMesh & solid,
                                      const SolidStressField & stress, double mu_s,
                                      double dt);

/// rho_f (g_i, phi_m) plus an arbitrary body-force density (reduced space).
Vector assemble_body_force(const FluidMesh & mesh,
                           const std::function<Vec2(const Vec2 &)> & force);

/// Neumann traction on tagged boundary faces: (h_i, phi_m)_GammaN.
Vector assemble_neumann(const FluidMesh & mesh,
                        const std::function<Vec2(const Vec2 &, int)> & traction);

/// f^s: (rho_s - rho_f) gravity plus the stress-history terms
/// (mu_s dt^2 G G^T + dt^2 G tau G^T - tau) tested against grad phi^s.
Vector assemble_solid_load(const SolidMesh & solid, const SolidStressField & stress,
                           double rho_s, double rho_f, const Vec2 & g, double mu_s,
                           double dt);

/// Combined load assembly: f (fluid, gravity + Neumann) and f^s.
std::pair<Vector, Vector> assemble_loads(
    const FluidMesh & mesh, const SolidMesh & solid, const SolidStressField & stress,
    const Vec2 & g, const std::function<Vec2(const Vec2 &, int)> & traction,
    double rho_f, double rho_s, double mu_s, double dt);

/// Gather / expand between full nodal vectors (2*Nv, constrained entries
/// included) and reduced vectors (2*Nvr).
Vector gather_velocity(const FluidMesh & mesh, const Vector & full);
Vector expand_velocity(const FluidMesh & mesh, const Vector & reduced);
Vector gather_pressure(const FluidMesh & mesh, const Vector & full);
Vector expand_pressure(const FluidMesh & mesh, const Vector & reduced);

} // namespace fsi
