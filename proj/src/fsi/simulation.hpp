#pragma once

#include "assembly.hpp"
#include "config.hpp"
#include "convection.hpp"
#include "coupling.hpp"
#include "diagnostics.hpp"
#include "fluid_mesh.hpp"
#include "monolithic.hpp"
#include "solid_mesh.hpp"
#include "solid_state.hpp"
#include "types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsi
{

/// Divergence-free initial field u = (dPsi/dy, -dPsi/dx) of the stream
/// function Psi = psi0 sin(a x) sin(b y), sampled at velocity nodes.
Vector initialize_from_stream_function(const FluidMesh & mesh, double psi0, double a,
                                       double b);
Vector stream_function_solid_velocity(const SolidMesh & solid, double psi0, double a,
                                      double b);

/// One row of the time-series CSV.
struct TimeSeriesRecord
{
  int step = 0;
  double t = 0.0;
  Vec2 tip = Vec2::Zero();      // probe displacement
  Vec2 probe_vel = Vec2::Zero();
  EnergyBudget energy;
  double solid_area = 0.0;
  double det_f_min = 1.0, det_f_max = 1.0;
  int solver_iterations = 0;
  double residual = 0.0;
  double divergence = 0.0;
};

/// Orchestrates the four-substep time loop: convection, coupled diffusion
/// solve, solid velocity interpolation, stress/coordinate update, with
/// periodic mesh re-adaptation and field transfer.
class Simulation
{
public:
  explicit Simulation(ScenarioConfig cfg);

  void step();
  /// Full run with CSV/VTK/summary outputs under cfg.output_dir.
  void run();

  void save_state(const std::string & path) const;
  void load_state(const std::string & path);

  const ScenarioConfig & config() const { return cfg_; }
  const FluidMesh & mesh() const { return mesh_; }
  const SolidMesh & solid() const { return solid_; }
  bool has_solid() const { return cfg_.solid_shape != ScenarioConfig::SolidShape::none; }
  const Vector & velocity() const { return u_; }       // full, 2*Nv
  const Vector & pressure() const { return p_; }       // full, Np
  const Vector & solid_velocity() const { return us_; } // 2*Ns
  int step_index() const { return step_; }
  double time() const { return step_ * cfg_.dt; }
  double dissipated_energy() const { return e_dissipated_; }

  TimeSeriesRecord current_record() const;
  const std::vector<TimeSeriesRecord> & history() const { return history_; }

  /// Local fluid / solid element-area ratio near the interface.
  double mesh_size_ratio() const;

  /// The reduced Dirichlet data at a given time (testing hook).
  DirichletValues dirichlet_values(double t) const;
  int pressure_pin() const { return pressure_pin_reduced_; }

private:
  ScenarioConfig cfg_;
  SolidMesh solid_;
  FluidMesh mesh_;
  ConvectionWorkspace conv_ws_;

  // per-epoch operators
  SparseMat mass_plain_;
  SparseMat M_, K_, B_;
  struct DirichletEntry
  {
    int vnode;
    int comp;
    const Expression * expr; // owned by cfg_.bc
  };
  std::vector<DirichletEntry> dirichlet_entries_;
  int pressure_pin_reduced_ = -1;

  // state
  Vector u_, p_, us_;
  int step_ = 0;
  int last_adapt_step_ = 0;
  std::vector<Vec2> adapt_coords_; // solid boundary coords at last mesh build
  double e_dissipated_ = 0.0;
  std::optional<CouplingMatrix> coupling_;
  SolveReport last_report_;

  std::vector<TimeSeriesRecord> history_;

  void build_solid();
  void build_mesh_for_current_solid();
  void epoch_setup();      // operators + Dirichlet table + pin for mesh_
  void transfer_fields(const FluidMesh & old_mesh, const Vector & old_u);
  void impose_dirichlet(Vector & u_full, double t) const;
  void initial_conditions();
  void adapt_if_due();
};

/// Run a scenario end to end; returns the exit code (0 on success) and
/// prints the failure stage on error.
int run_scenario(const ScenarioConfig & cfg);

} // namespace fsi
