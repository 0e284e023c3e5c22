#pragma once

#include "coupling.hpp"
#include "fluid_mesh.hpp"
#include "sparse.hpp"
#include "types.hpp"

#include <optional>

namespace fsi
{

enum class SolverKind
{
  direct,
  krylov
};

struct SolverOptions
{
  SolverKind kind = SolverKind::direct;
  double krylov_tol = 1e-10;
  int max_iters = 400;
  std::string residual_history_csv; // dumped when non-empty
};

/// Dirichlet data resolved to reduced velocity dofs (deterministic order).
struct DirichletValues
{
  std::vector<int> dof; // reduced dof indices in [0, 2*Nvr)
  Vector value;
};

/// The coupled diffusion-step system
///   [[A, B], [B^T, 0]] (u, p) = (b, 0)
///   A = M/dt + K + D^T (M^s/dt + K^s) D
///   b = f + D^T f^s + M u*/dt + D^T M^s u^s_n / dt
/// in the reduced basis, before and after constraint application.
struct MonolithicSystem
{
  int nu = 0; // 2 * Nvr
  int np = 0; // Npr

  // unconstrained pieces
  std::vector<Triplet> vel_triplets;       // A block including the solid sandwich
  std::vector<Triplet> fluid_vel_triplets; // M/dt + K only (krylov preconditioner)
  SparseMat B;                             // nu x np
  Vector rhs_u;
  Vector rhs_p;

  // solid block and coupling retained for the matrix-free path
  SparseMat solid_block; // M^s/dt + K^s
  const CouplingMatrix * coupling = nullptr;
  bool has_solid = false;

  // constraint state
  bool constrained = false;
  std::vector<char> dirichlet_mask; // size nu
  Vector dirichlet_value;           // size nu
  int pressure_pin = -1;            // reduced pressure id, -1 = none

  // constrained system (built by apply_boundary_conditions)
  SparseMat A;
  Vector b;
};

struct MonolithicInputs
{
  const SparseMat * M = nullptr; // rho_f mass, reduced
  const SparseMat * K = nullptr; // mu_f stiffness, reduced
  const SparseMat * B = nullptr;
  const SparseMat * Ms = nullptr; // (rho_s - rho_f) solid mass
  const SparseMat * Ks = nullptr; // solid tangent
  const CouplingMatrix * coupling = nullptr;
  const Vector * f = nullptr;       // fluid load, reduced
  const Vector * fs = nullptr;      // solid load
  const Vector * u_star = nullptr;  // reduced (2*Nvr)
  const Vector * us_n = nullptr;    // solid nodal velocity (2*Ns)
  double dt = 0.0;
  bool explicit_sandwich = true; // assemble D^T K^s D explicitly (direct path)
};

/// Assemble A and b per the time-discrete coupled form. Solid pointers may be
/// null (pure fluid system).
MonolithicSystem build_monolithic(const MonolithicInputs & in);

/// Symmetric Dirichlet elimination (identity rows/cols, RHS lift) plus the
/// pressure reference pin (pass -1 to leave the pressure level to a Neumann
/// boundary).
void apply_boundary_conditions(MonolithicSystem & sys, const DirichletValues & bc,
                               int pressure_pin);

struct SolveReport
{
  double rel_residual = 0.0;
  double divergence = 0.0; // ||B^T u|| without the pinned row
  int iterations = 0;      // 0 for the direct path
};

/// Solve the constrained system. Throws SimError("solve", ...) on breakdown
/// or if the residual exceeds 1e-9 * ||b||.
SolveReport solve(const MonolithicSystem & sys, Vector & u_reduced, Vector & p_reduced,
                  const SolverOptions & opts);

} // namespace fsi
