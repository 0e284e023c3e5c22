#pragma once

#include "fluid_mesh.hpp"
#include "solid_mesh.hpp"
#include "types.hpp"

#include <vector>

namespace fsi
{

/// Four-component energy budget; the total should stay constant over a run
/// up to discretization error.
struct EnergyBudget
{
  double kinetic_fluid = 0.0;      // rho_f/2 int |u|^2 over the whole domain
  double kinetic_solid = 0.0;      // (rho_s - rho_f)/2 int |u^s|^2 over the solid
  double dissipation = 0.0;        // accumulated viscous dissipation
  double potential_solid = 0.0;    // mu_s/2 int (tr(F F^T) - 2) over reference

  double total() const
  {
    return kinetic_fluid + kinetic_solid + dissipation + potential_solid;
  }
};

/// rho_f/2 int_Omega |u|^2 (u full nodal vector, 2*Nv).
double kinetic_energy_fluid(const FluidMesh & mesh, const Vector & u, double rho_f);

/// (rho_s - rho_f)/2 int over the current solid configuration.
double kinetic_energy_solid_correction(const SolidMesh & solid, const Vector & us,
                                       double rho_s, double rho_f);

/// dt * int mu_f (grad u + grad u^T) : grad u with the end-of-step velocity;
/// add the result to the running dissipation total.
double viscous_dissipation_increment(const FluidMesh & mesh, const Vector & u,
                                     double mu_f, double dt);

/// mu_s/2 sum_e (tr(F F^T) - 2) A_ref with F from the deformation field.
double potential_energy_solid(const SolidMesh & solid,
                              const std::vector<Mat2> & deformation, double mu_s);

double solid_area(const SolidMesh & solid);

/// Empirical terminal velocity of a disc falling between parallel walls.
double empirical_terminal_velocity(double rho_s, double rho_f, double mu_f, double g,
                                   double r, double L);

/// Displacement of the tagged probe node, current minus reference.
Vec2 probe_tip_displacement(const SolidMesh & solid, int node);

/// Peaks of an oscillating signal: magnitude (mean |value| at extrema) and
/// frequency (from successive maxima) over [t_begin, t_end].
struct OscillationStats
{
  double magnitude = 0.0;
  double frequency = 0.0;
  int peak_count = 0;
};

OscillationStats measure_oscillation(const std::vector<double> & time,
                                     const std::vector<double> & value, double t_begin,
                                     double t_end);

/// Best-fit rigid motion v + omega x (x - c) of a solid velocity field and the
/// largest pointwise deviation from it.
struct RigidFit
{
  Vec2 translation = Vec2::Zero();
  double omega = 0.0;
  double max_deviation = 0.0;
  double mean_speed = 0.0;
};

RigidFit fit_rigid_motion(const SolidMesh & solid, const Vector & us);

} // namespace fsi
