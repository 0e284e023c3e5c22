#pragma once

#include "fluid_mesh.hpp"
#include "sparse.hpp"
#include "types.hpp"

namespace fsi
{

enum class ConvectionScheme
{
  least_squares,
  taylor_galerkin
};

struct ConvectionOptions
{
  ConvectionScheme scheme = ConvectionScheme::least_squares;
  int iterations = 1; // >1 re-linearizes about the latest iterate
  double fixed_point_tol = 1e-8;
  double cg_tol = 1e-10;
  int cg_max_iters = 2000;
};

/// Mesh-fixed data reused across steps (the Taylor-Galerkin mass matrix).
struct ConvectionWorkspace
{
  SparseMat velocity_mass; // unweighted, reduced basis
  explicit ConvectionWorkspace(const FluidMesh & mesh);
  ConvectionWorkspace() = default;
};

/// One pure-convection substep producing the intermediate velocity u*.
/// u_n is the full nodal velocity (2*Nv); the result is full as well.
/// Dirichlet data is NOT touched here; the caller re-imposes it on u*.
Vector convection_step(const FluidMesh & mesh, const ConvectionWorkspace & ws,
                       const Vector & u_n, double dt, const ConvectionOptions & opts);

/// Least-squares substep: L(u*) tested against L(w) with
/// L(w) = w + dt (w_j du^n_i/dx_j + u^n_j dw_i/dx_j); SPD system.
Vector least_squares_step(const FluidMesh & mesh, const Vector & u_n, double dt,
                          const ConvectionOptions & opts);

/// Taylor-Galerkin substep:
/// (u*, v) = (u^n - dt u^n.grad u^n, v) - dt^2/2 (u^n.grad u^n, u^n.grad v).
Vector taylor_galerkin_step(const FluidMesh & mesh, const ConvectionWorkspace & ws,
                            const Vector & u_n, double dt,
                            const ConvectionOptions & opts);

/// The assembled least-squares system (L(u*), L(w)) = (u^n + dt u^n.grad u^n, L(w))
/// linearized about u_lin; exposed for the SPD/symmetry property checks.
void least_squares_system(const FluidMesh & mesh, const Vector & u_n,
                          const Vector & u_lin, double dt, SparseMat & matrix,
                          Vector & rhs);

} // namespace fsi
