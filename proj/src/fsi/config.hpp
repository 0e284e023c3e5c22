#pragma once

#include "convection.hpp"
#include "expression.hpp"
#include "fluid_mesh.hpp"
#include "monolithic.hpp"
#include "types.hpp"

#include <array>
#include <map>
#include <string>

namespace fsi
{

/// Flat "section.key" -> value view of a config file; the scenario is built
/// from this and overrides are applied to it.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_ini(const std::string & text);
KeyValues load_ini(const std::string & path);
/// "section.key=value"
void apply_override(KeyValues & kv, const std::string & assignment);
std::string to_ini(const KeyValues & kv);

struct BcSpec
{
  enum class Type
  {
    none,     // natural (zero Neumann)
    dirichlet,
    neumann,
    slip // u_y = 0 on horizontal walls / u_x = 0 on vertical walls
  };
  Type type = Type::none;
  Expression ux, uy;         // Dirichlet profiles (x, y, t)
  Vec2 traction = Vec2::Zero(); // constant Neumann traction
};

struct ScenarioConfig
{
  std::string name = "scenario";

  DomainSpec domain;

  double rho_f = 1.0;
  double mu_f = 1.0;
  Vec2 gravity = Vec2::Zero();

  enum class SolidShape
  {
    none,
    disc,
    rectangle,
    file
  };
  SolidShape solid_shape = SolidShape::none;
  double rho_s = 1.0;
  double mu_s = 1.0;
  Vec2 disc_center = Vec2::Zero();
  double disc_radius = 0.0;
  int disc_boundary_nodes = 0;
  Vec2 rect_lo = Vec2::Zero();
  double rect_width = 0.0, rect_height = 0.0;
  int rect_nx = 1, rect_ny = 1;
  std::string solid_mesh_file;

  std::array<BcSpec, tag::count> bc;

  enum class InitialCondition
  {
    rest,
    stream_function
  };
  InitialCondition ic = InitialCondition::rest;
  double psi0 = 0.0, ic_a = 0.0, ic_b = 0.0;

  double dt = 1e-3;
  double t_end = 1.0;

  ConvectionOptions convection;

  int refine_levels = 0;
  double refine_halo = 0.0;
  int adapt_every = 10; // steps between re-adaptations, 0 = never
  std::vector<std::array<double, 5>> refine_boxes; // x0 y0 x1 y1 level

  SolverOptions solver;

  int output_every = 1;
  int vtk_every = 0;
  std::string output_dir = "out";
  bool dump_matrices = false;
  std::string log_level = "warn";

  /// Raw key/value source, kept for the resolved-config dump.
  KeyValues raw;

  void validate() const; // throws SimError("config", ...) on hard errors
};

ScenarioConfig config_from_kv(const KeyValues & kv);
ScenarioConfig load_config(const std::string & path);

/// Built-in benchmark presets; throws on unknown names.
KeyValues preset_kv(const std::string & name);
std::vector<std::string> preset_names();

} // namespace fsi
