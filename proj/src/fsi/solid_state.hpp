#pragma once

#include "solid_mesh.hpp"
#include "types.hpp"

#include <vector>

namespace fsi
{

/// Per-element state feeding the solid tangent and load assembly:
/// the stress history tau^n and the velocity gradient du^n/dx taken with
/// respect to the current coordinates x^n.
struct SolidStressField
{
  std::vector<Mat2> tau;
  std::vector<Mat2> grad_u;
};

/// Incremental constitutive update for the incompressible neo-Hookean solid:
///   tau^{n+1} = mu_s dt (G + G^T + dt G G^T) + tau^n
///             + dt^2 G tau^n G^T + dt G tau^n + dt tau^n G^T
/// with G = du^{n+1}/dx^n. Algebraically identical to
///   mu_s (Fd Fd^T - I) + Fd tau^n Fd^T,  Fd = I + dt G.
/// Rejects asymmetric tau^n (tolerance 1e-10) and returns an exactly
/// symmetric result.
Mat2 update_stress(const Mat2 & tau_n, const Mat2 & grad_u, double mu_s, double dt);

/// Constant per-element velocity gradient of a P1 field on the current
/// configuration. us in block layout (2*n_nodes).
std::vector<Mat2> element_velocity_gradient(const SolidMesh & solid, const Vector & us);

/// Deformation gradient F per element, reference -> current, computed directly
/// from the stored coordinates (no incremental accumulation).
std::vector<Mat2> accumulate_deformation(const SolidMesh & solid);

/// Bundle tau (from the mesh) with the gradients of the given solid velocity.
SolidStressField build_stress_field(const SolidMesh & solid, const Vector & us_n);

} // namespace fsi
