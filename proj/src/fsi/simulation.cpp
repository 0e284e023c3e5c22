#include "simulation.hpp"

#include "log.hpp"
#include "sparse.hpp"
#include "vtk_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace fsi
{

Vector initialize_from_stream_function(const FluidMesh & mesh, double psi0, double a,
                                       double b)
{
  const int nv = mesh.n_vnodes();
  Vector u(2 * nv);
  for (int n = 0; n < nv; ++n)
  {
    const Vec2 & x = mesh.vnode_coord[n];
    u[n] = psi0 * b * std::sin(a * x[0]) * std::cos(b * x[1]);
    u[nv + n] = -psi0 * a * std::cos(a * x[0]) * std::sin(b * x[1]);
  }
  // hanging nodes take the constrained interpolant, not the sampled value
  Vector ux = u.head(nv);
  Vector uy = u.tail(nv);
  mesh.apply_v_constraints(ux);
  mesh.apply_v_constraints(uy);
  u.head(nv) = ux;
  u.tail(nv) = uy;
  return u;
}

Vector stream_function_solid_velocity(const SolidMesh & solid, double psi0, double a,
                                      double b)
{
  const int ns = solid.n_nodes();
  Vector us(2 * ns);
  for (int n = 0; n < ns; ++n)
  {
    const Vec2 & x = solid.current(n);
    us[n] = psi0 * b * std::sin(a * x[0]) * std::cos(b * x[1]);
    us[ns + n] = -psi0 * a * std::cos(a * x[0]) * std::sin(b * x[1]);
  }
  return us;
}

Simulation::Simulation(ScenarioConfig cfg): cfg_(std::move(cfg))
{
  log::set_level(log::level_from_string(cfg_.log_level));
  cfg_.validate();
  build_solid();
  build_mesh_for_current_solid();
  epoch_setup();
  initial_conditions();
}

void Simulation::build_solid()
{
  switch (cfg_.solid_shape)
  {
  case ScenarioConfig::SolidShape::none: solid_ = SolidMesh(); break;
  case ScenarioConfig::SolidShape::disc:
    solid_ = SolidMesh::disc(cfg_.disc_center, cfg_.disc_radius,
                             cfg_.disc_boundary_nodes);
    break;
  case ScenarioConfig::SolidShape::rectangle:
    solid_ = SolidMesh::rectangle(cfg_.rect_lo, cfg_.rect_width, cfg_.rect_height,
                                  cfg_.rect_nx, cfg_.rect_ny);
    break;
  case ScenarioConfig::SolidShape::file: solid_ = read_solid_vtk(cfg_.solid_mesh_file); break;
  }
}

void Simulation::build_mesh_for_current_solid()
{
  adapt_coords_.clear();
  if (has_solid())
    for (int n: solid_.boundary_nodes())
      adapt_coords_.push_back(solid_.current(n));

  auto solid_target = refine_target_near_points(cfg_.domain, adapt_coords_,
                                                cfg_.refine_levels, cfg_.refine_halo);
  const auto boxes = cfg_.refine_boxes;
  auto target = [solid_target, boxes](const Vec2 & lo, const Vec2 & hi) -> int {
    int lvl = solid_target(lo, hi);
    for (const auto & b: boxes)
      if (hi[0] > b[0] && lo[0] < b[2] && hi[1] > b[1] && lo[1] < b[3])
        lvl = std::max(lvl, static_cast<int>(std::lround(b[4])));
    return lvl;
  };
  mesh_ = build_refined(cfg_.domain, target);
}

void Simulation::epoch_setup()
{
  mass_plain_ = assemble_velocity_mass(mesh_).mat;
  M_ = cfg_.rho_f * mass_plain_;
  K_ = assemble_fluid_stiffness(mesh_, cfg_.mu_f).mat;
  B_ = assemble_divergence(mesh_).mat;
  conv_ws_.velocity_mass = mass_plain_;

  // Dirichlet table: tags claim nodes in fixed priority order; the first
  // claim of a (node, component) wins at corners.
  dirichlet_entries_.clear();
  std::vector<char> claimed_x(mesh_.n_vnodes(), 0), claimed_y(mesh_.n_vnodes(), 0);
  bool any_natural = false;
  for (int t = 0; t < tag::count; ++t)
  {
    const BcSpec & bc = cfg_.bc[t];
    for (const auto & face: mesh_.boundary_faces)
    {
      if (face.tag != t)
        continue;
      if (bc.type == BcSpec::Type::none || bc.type == BcSpec::Type::neumann)
      {
        any_natural = true;
        continue;
      }
      const bool vertical = face.side == 0 || face.side == 1; // W/E faces
      for (int n: mesh_.face_vnodes(face.cell, face.side))
      {
        if (bc.type == BcSpec::Type::dirichlet)
        {
          if (!claimed_x[n])
          {
            claimed_x[n] = 1;
            dirichlet_entries_.push_back({n, 0, &bc.ux});
          }
          if (!claimed_y[n])
          {
            claimed_y[n] = 1;
            dirichlet_entries_.push_back({n, 1, &bc.uy});
          }
        }
        else // slip: constrain only the wall-normal component
        {
          if (vertical)
          {
            if (!claimed_x[n])
            {
              claimed_x[n] = 1;
              dirichlet_entries_.push_back({n, 0, &bc.ux});
            }
          }
          else if (!claimed_y[n])
          {
            claimed_y[n] = 1;
            dirichlet_entries_.push_back({n, 1, &bc.uy});
          }
        }
      }
    }
  }

  pressure_pin_reduced_ = -1;
  if (!any_natural)
  {
    // pin the pressure node nearest the domain's lower-left corner
    const Vec2 corner{cfg_.domain.x0, cfg_.domain.y0};
    int best = 0;
    double best_d = std::numeric_limits<double>::max();
    for (int p = 0; p < mesh_.n_pnodes(); ++p)
    {
      if (mesh_.p_reduced[p] < 0)
        continue;
      const double d = (mesh_.pnode_coord[p] - corner).squaredNorm();
      if (d < best_d)
      {
        best_d = d;
        best = p;
      }
    }
    pressure_pin_reduced_ = mesh_.p_reduced[best];
  }

  if (has_solid())
  {
    const double rm = mesh_size_ratio();
    if (rm < 1.5 || rm > 5.0)
      log::warn("mesh-size ratio r_m = %.2f outside the stable band [1.5, 5.0]", rm);
  }
}

double Simulation::mesh_size_ratio() const
{
  if (!has_solid())
    return 0.0;
  // local fluid cell area at the interface over mean boundary-element area
  std::vector<double> ratios;
  double boundary_area_sum = 0.0;
  int boundary_elems = 0;
  std::vector<char> on_boundary(solid_.n_nodes(), 0);
  for (int n: solid_.boundary_nodes())
    on_boundary[n] = 1;
  for (int e = 0; e < solid_.n_elements(); ++e)
  {
    const auto & t = solid_.element(e);
    if (on_boundary[t[0]] || on_boundary[t[1]] || on_boundary[t[2]])
    {
      boundary_area_sum += solid_.current_area(e);
      ++boundary_elems;
    }
  }
  if (boundary_elems == 0)
    return 0.0;
  const double solid_area = boundary_area_sum / boundary_elems;
  double fluid_area_sum = 0.0;
  for (int n: solid_.boundary_nodes())
  {
    const auto loc = mesh_.locate(solid_.current(n));
    fluid_area_sum += mesh_.cell_area(loc.cell);
  }
  const double fluid_area = fluid_area_sum / solid_.boundary_nodes().size();
  return fluid_area / solid_area;
}

void Simulation::impose_dirichlet(Vector & u_full, double t) const
{
  const int nv = mesh_.n_vnodes();
  for (const auto & e: dirichlet_entries_)
  {
    const Vec2 & x = mesh_.vnode_coord[e.vnode];
    u_full[e.comp * nv + e.vnode] = e.expr->eval(x[0], x[1], t);
  }
  Vector ux = u_full.head(nv);
  Vector uy = u_full.tail(nv);
  mesh_.apply_v_constraints(ux);
  mesh_.apply_v_constraints(uy);
  u_full.head(nv) = ux;
  u_full.tail(nv) = uy;
}

DirichletValues Simulation::dirichlet_values(double t) const
{
  DirichletValues bc;
  const int nvr = mesh_.n_v_reduced;
  bc.dof.reserve(dirichlet_entries_.size());
  std::vector<double> vals;
  vals.reserve(dirichlet_entries_.size());
  for (const auto & e: dirichlet_entries_)
  {
    const int red = mesh_.v_reduced[e.vnode];
    check(red >= 0, "simulation", "Dirichlet node is hanging (corrupt mesh)");
    const Vec2 & x = mesh_.vnode_coord[e.vnode];
    bc.dof.push_back(e.comp * nvr + red);
    vals.push_back(e.expr->eval(x[0], x[1], t));
  }
  bc.value = Eigen::Map<Vector>(vals.data(), vals.size());
  return bc;
}

void Simulation::initial_conditions()
{
  const int nv = mesh_.n_vnodes();
  if (cfg_.ic == ScenarioConfig::InitialCondition::stream_function)
  {
    u_ = initialize_from_stream_function(mesh_, cfg_.psi0, cfg_.ic_a, cfg_.ic_b);
    us_ = has_solid()
              ? stream_function_solid_velocity(solid_, cfg_.psi0, cfg_.ic_a, cfg_.ic_b)
              : Vector();
  }
  else
  {
    u_ = Vector::Zero(2 * nv);
    us_ = has_solid() ? Vector::Zero(2 * solid_.n_nodes()) : Vector();
  }
  p_ = Vector::Zero(mesh_.n_pnodes());
  e_dissipated_ = 0.0;
  step_ = 0;
  last_adapt_step_ = 0;
}

void Simulation::transfer_fields(const FluidMesh & old_mesh, const Vector & old_u)
{
  const int nv = mesh_.n_vnodes();
  const int nv_old = old_mesh.n_vnodes();
  Vector ux_old = old_u.head(nv_old);
  Vector uy_old = old_u.tail(nv_old);
  Vector u_new(2 * nv);
  for (int n = 0; n < nv; ++n)
  {
    const auto loc = old_mesh.locate(mesh_.vnode_coord[n]);
    u_new[n] = old_mesh.eval_q2(ux_old, loc.cell, loc.xi);
    u_new[nv + n] = old_mesh.eval_q2(uy_old, loc.cell, loc.xi);
  }
  Vector ux = u_new.head(nv);
  Vector uy = u_new.tail(nv);
  mesh_.apply_v_constraints(ux);
  mesh_.apply_v_constraints(uy);
  u_.resize(2 * nv);
  u_.head(nv) = ux;
  u_.tail(nv) = uy;
  p_ = Vector::Zero(mesh_.n_pnodes());
}

void Simulation::adapt_if_due()
{
  if (!has_solid() || cfg_.adapt_every <= 0 || cfg_.refine_levels == 0)
    return;
  if (step_ == last_adapt_step_ || step_ - last_adapt_step_ < cfg_.adapt_every)
    return;
  const FluidMesh old_mesh = std::move(mesh_);
  const Vector old_u = std::move(u_);
  build_mesh_for_current_solid();
  transfer_fields(old_mesh, old_u);
  epoch_setup();
  coupling_.reset();
  last_adapt_step_ = step_;
}

void Simulation::step()
{
  const double t_next = (step_ + 1) * cfg_.dt;
  adapt_if_due();

  // (2) convection substep
  Vector u_star = convection_step(mesh_, conv_ws_, u_, cfg_.dt, cfg_.convection);
  impose_dirichlet(u_star, t_next);
  const Vector u_star_red = gather_velocity(mesh_, u_star);

  // (3) coupled diffusion solve on the known solid configuration
  MonolithicInputs in;
  in.M = &M_;
  in.K = &K_;
  in.B = &B_;
  in.f = nullptr;
  in.u_star = &u_star_red;
  in.dt = cfg_.dt;
  in.explicit_sandwich = cfg_.solver.kind == SolverKind::direct;

  Vector f = Vector::Zero(2 * mesh_.n_v_reduced);
  const bool has_gravity = cfg_.gravity[0] != 0.0 || cfg_.gravity[1] != 0.0;
  if (has_gravity)
    f = assemble_body_force(mesh_,
                            [&](const Vec2 &) { return Vec2(cfg_.rho_f * cfg_.gravity); });
  bool has_traction = false;
  for (const auto & bc: cfg_.bc)
    if (bc.type == BcSpec::Type::neumann &&
        (bc.traction[0] != 0.0 || bc.traction[1] != 0.0))
      has_traction = true;
  if (has_traction)
    f += assemble_neumann(mesh_, [&](const Vec2 &, int t) -> Vec2 {
      return cfg_.bc[t].type == BcSpec::Type::neumann ? cfg_.bc[t].traction
                                                      : Vec2(Vec2::Zero());
    });
  in.f = &f;

  SparseMat Ms, Ks;
  Vector fs;
  if (has_solid())
  {
    coupling_ = build_coupling(mesh_, solid_, coupling_ ? &*coupling_ : nullptr);
    const SolidStressField stress = build_stress_field(solid_, us_);
    Ms = assemble_solid_mass(solid_, cfg_.rho_s, cfg_.rho_f).mat;
    Ks = assemble_solid_tangent(solid_, stress, cfg_.mu_s, cfg_.dt).mat;
    fs = assemble_solid_load(solid_, stress, cfg_.rho_s, cfg_.rho_f, cfg_.gravity,
                             cfg_.mu_s, cfg_.dt);
    in.Ms = &Ms;
    in.Ks = &Ks;
    in.fs = &fs;
    in.us_n = &us_;
    in.coupling = &*coupling_;
  }

  MonolithicSystem sys = build_monolithic(in);
  apply_boundary_conditions(sys, dirichlet_values(t_next), pressure_pin_reduced_);

  Vector u_red, p_red;
  last_report_ = solve(sys, u_red, p_red, cfg_.solver);
  u_ = expand_velocity(mesh_, u_red);
  p_ = expand_pressure(mesh_, p_red);

  // (4) solid velocity, stress history, coordinate update
  if (has_solid())
  {
    us_ = interpolate_to_solid(*coupling_, u_red);
    const auto grads = element_velocity_gradient(solid_, us_);
    std::vector<Mat2> tau_next(solid_.n_elements());
    for (int e = 0; e < solid_.n_elements(); ++e)
      tau_next[e] = update_stress(solid_.tau[e], grads[e], cfg_.mu_s, cfg_.dt);
    solid_ = solid_.updated(us_, cfg_.dt);
    solid_.tau = std::move(tau_next);
  }

  ++step_;
  e_dissipated_ += viscous_dissipation_increment(mesh_, u_, cfg_.mu_f, cfg_.dt);
}

TimeSeriesRecord Simulation::current_record() const
{
  TimeSeriesRecord rec;
  rec.step = step_;
  rec.t = time();
  rec.energy.kinetic_fluid = kinetic_energy_fluid(mesh_, u_, cfg_.rho_f);
  rec.energy.dissipation = e_dissipated_;
  rec.solver_iterations = last_report_.iterations;
  rec.residual = last_report_.rel_residual;
  rec.divergence = last_report_.divergence;
  if (has_solid())
  {
    rec.tip = probe_tip_displacement(solid_, solid_.probe_node());
    const int ns = solid_.n_nodes();
    rec.probe_vel = Vec2{us_[solid_.probe_node()], us_[ns + solid_.probe_node()]};
    rec.energy.kinetic_solid =
        kinetic_energy_solid_correction(solid_, us_, cfg_.rho_s, cfg_.rho_f);
    const auto defo = accumulate_deformation(solid_);
    rec.energy.potential_solid = potential_energy_solid(solid_, defo, cfg_.mu_s);
    rec.solid_area = solid_area(solid_);
    rec.det_f_min = std::numeric_limits<double>::max();
    rec.det_f_max = std::numeric_limits<double>::lowest();
    for (const auto & F: defo)
    {
      const double d = F.determinant();
      rec.det_f_min = std::min(rec.det_f_min, d);
      rec.det_f_max = std::max(rec.det_f_max, d);
    }
  }
  return rec;
}

namespace
{

void write_csv_header(std::FILE * f)
{
  std::fprintf(f, "step,time,tip_dx,tip_dy,probe_vx,probe_vy,e_kin_fluid,e_kin_solid,"
                  "e_dissipated,e_potential,e_total,solid_area,det_f_min,det_f_max,"
                  "solver_iters,residual,divergence\n");
}

void write_csv_row(std::FILE * f, const TimeSeriesRecord & r)
{
  std::fprintf(f,
               "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
               "%.17g,%.17g,%d,%.17g,%.17g\n",
               r.step, r.t, r.tip[0], r.tip[1], r.probe_vel[0], r.probe_vel[1],
               r.energy.kinetic_fluid, r.energy.kinetic_solid, r.energy.dissipation,
               r.energy.potential_solid, r.energy.total(), r.solid_area, r.det_f_min,
               r.det_f_max, r.solver_iterations, r.residual, r.divergence);
}

} // namespace

void Simulation::run()
{
  namespace fs = std::filesystem;
  const fs::path outdir(cfg_.output_dir);
  fs::create_directories(outdir);
  fs::create_directories(outdir / "vtk");

  {
    std::ofstream cfg_out(outdir / "config.resolved.ini");
    cfg_out << to_ini(cfg_.raw);
  }

  std::FILE * csv = std::fopen((outdir / "timeseries.csv").string().c_str(), "w");
  check(csv != nullptr, "io", "cannot open timeseries.csv");
  write_csv_header(csv);

  auto emit_vtk = [&](int n) {
    char name[64];
    std::snprintf(name, sizeof(name), "fluid_%06d.vtk", n);
    write_fluid_vtk(mesh_, u_, p_, (outdir / "vtk" / name).string());
    if (has_solid())
    {
      std::snprintf(name, sizeof(name), "solid_%06d.vtk", n);
      write_solid_vtk(solid_, us_, accumulate_deformation(solid_),
                      (outdir / "vtk" / name).string());
    }
  };

  const int n_steps = static_cast<int>(std::lround(cfg_.t_end / cfg_.dt));
  history_.clear();
  history_.push_back(current_record());
  write_csv_row(csv, history_.back());
  if (cfg_.vtk_every > 0)
    emit_vtk(0);

  const auto wall_start = std::chrono::steady_clock::now();
  try
  {
    while (step_ < n_steps)
    {
      step();
      if (step_ % cfg_.output_every == 0 || step_ == n_steps)
      {
        history_.push_back(current_record());
        write_csv_row(csv, history_.back());
        std::fflush(csv);
      }
      if (cfg_.vtk_every > 0 && step_ % cfg_.vtk_every == 0)
        emit_vtk(step_);
    }
  }
  catch (...)
  {
    std::fclose(csv); // keep partial outputs
    throw;
  }
  std::fclose(csv);
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
          .count();

  save_state((outdir / "state_final.bin").string());

  // summary: min / max / final of the tracked quantities
  std::FILE * sum = std::fopen((outdir / "summary.txt").string().c_str(), "w");
  if (sum)
  {
    auto stat = [&](const char * name, auto getter) {
      double lo = std::numeric_limits<double>::max();
      double hi = std::numeric_limits<double>::lowest();
      for (const auto & r: history_)
      {
        const double v = getter(r);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      std::fprintf(sum, "%-14s min % .8e   max % .8e   final % .8e\n", name, lo, hi,
                   getter(history_.back()));
    };
    std::fprintf(sum, "scenario %s, %d steps to t = %g (wall %.1f s)\n",
                 cfg_.name.c_str(), step_, time(), wall_s);
    stat("tip_dx", [](const TimeSeriesRecord & r) { return r.tip[0]; });
    stat("tip_dy", [](const TimeSeriesRecord & r) { return r.tip[1]; });
    stat("probe_vx", [](const TimeSeriesRecord & r) { return r.probe_vel[0]; });
    stat("probe_vy", [](const TimeSeriesRecord & r) { return r.probe_vel[1]; });
    stat("e_total", [](const TimeSeriesRecord & r) { return r.energy.total(); });
    stat("solid_area", [](const TimeSeriesRecord & r) { return r.solid_area; });
    stat("det_f_min", [](const TimeSeriesRecord & r) { return r.det_f_min; });
    if (history_.front().energy.total() != 0.0)
    {
      double drift = 0.0;
      const double e0 = history_.front().energy.total();
      for (const auto & r: history_)
        drift = std::max(drift, std::abs(r.energy.total() - e0) / std::abs(e0));
      std::fprintf(sum, "%-14s %.6f\n", "energy_drift", drift);
    }
    std::fclose(sum);
  }
}

namespace
{

void put_bytes(std::FILE * f, const void * p, size_t n)
{
  check(std::fwrite(p, 1, n, f) == n, "io", "short write in state file");
}

void get_bytes(std::FILE * f, void * p, size_t n)
{
  check(std::fread(p, 1, n, f) == n, "io", "short read in state file");
}

void put_vector(std::FILE * f, const Vector & v)
{
  const int64_t n = v.size();
  put_bytes(f, &n, sizeof(n));
  put_bytes(f, v.data(), sizeof(double) * n);
}

Vector get_vector(std::FILE * f)
{
  int64_t n = 0;
  get_bytes(f, &n, sizeof(n));
  Vector v(n);
  get_bytes(f, v.data(), sizeof(double) * n);
  return v;
}

} // namespace

void Simulation::save_state(const std::string & path) const
{
  std::FILE * f = std::fopen(path.c_str(), "wb");
  check(f != nullptr, "io", "cannot open " + path);
  const char magic[8] = {'F', 'S', 'I', 'S', 'T', 'A', 'T', '1'};
  put_bytes(f, magic, 8);
  const int64_t step = step_, last_adapt = last_adapt_step_;
  put_bytes(f, &step, sizeof(step));
  put_bytes(f, &last_adapt, sizeof(last_adapt));
  put_bytes(f, &e_dissipated_, sizeof(e_dissipated_));

  const int64_t n_adapt = adapt_coords_.size();
  put_bytes(f, &n_adapt, sizeof(n_adapt));
  for (const Vec2 & x: adapt_coords_)
    put_bytes(f, x.data(), 2 * sizeof(double));

  put_vector(f, u_);
  put_vector(f, p_);
  put_vector(f, us_);

  const int64_t ns = has_solid() ? solid_.n_nodes() : 0;
  put_bytes(f, &ns, sizeof(ns));
  if (ns > 0)
  {
    for (const Vec2 & x: solid_.current_coords())
      put_bytes(f, x.data(), 2 * sizeof(double));
    const int64_t ne = solid_.n_elements();
    put_bytes(f, &ne, sizeof(ne));
    for (const Mat2 & t: solid_.tau)
      put_bytes(f, t.data(), 4 * sizeof(double));
  }
  std::fclose(f);
}

void Simulation::load_state(const std::string & path)
{
  std::FILE * f = std::fopen(path.c_str(), "rb");
  check(f != nullptr, "io", "cannot open " + path);
  char magic[8];
  get_bytes(f, magic, 8);
  check(std::memcmp(magic, "FSISTAT1", 8) == 0, "io", "bad state file magic");
  int64_t step = 0, last_adapt = 0;
  get_bytes(f, &step, sizeof(step));
  get_bytes(f, &last_adapt, sizeof(last_adapt));
  get_bytes(f, &e_dissipated_, sizeof(e_dissipated_));
  step_ = static_cast<int>(step);
  last_adapt_step_ = static_cast<int>(last_adapt);

  int64_t n_adapt = 0;
  get_bytes(f, &n_adapt, sizeof(n_adapt));
  adapt_coords_.resize(n_adapt);
  for (auto & x: adapt_coords_)
    get_bytes(f, x.data(), 2 * sizeof(double));

  const Vector u = get_vector(f);
  const Vector p = get_vector(f);
  const Vector us = get_vector(f);

  int64_t ns = 0;
  get_bytes(f, &ns, sizeof(ns));
  build_solid();
  if (ns > 0)
  {
    check(ns == solid_.n_nodes(), "io", "state file solid does not match config");
    std::vector<Vec2> coords(ns);
    for (auto & x: coords)
      get_bytes(f, x.data(), 2 * sizeof(double));
    solid_.set_current_coords(std::move(coords));
    int64_t ne = 0;
    get_bytes(f, &ne, sizeof(ne));
    check(ne == solid_.n_elements(), "io", "state file element count mismatch");
    for (auto & t: solid_.tau)
      get_bytes(f, t.data(), 4 * sizeof(double));
  }
  std::fclose(f);

  // rebuild the mesh exactly as it stood at the last adaptation
  auto solid_target = refine_target_near_points(cfg_.domain, adapt_coords_,
                                                cfg_.refine_levels, cfg_.refine_halo);
  const auto boxes = cfg_.refine_boxes;
  mesh_ = build_refined(cfg_.domain, [&](const Vec2 & lo, const Vec2 & hi) -> int {
    int lvl = solid_target(lo, hi);
    for (const auto & b: boxes)
      if (hi[0] > b[0] && lo[0] < b[2] && hi[1] > b[1] && lo[1] < b[3])
        lvl = std::max(lvl, static_cast<int>(std::lround(b[4])));
    return lvl;
  });
  epoch_setup();
  coupling_.reset();

  check(u.size() == 2 * mesh_.n_vnodes(), "io", "state velocity size mismatch");
  check(p.size() == mesh_.n_pnodes(), "io", "state pressure size mismatch");
  u_ = u;
  p_ = p;
  us_ = us;
}

int run_scenario(const ScenarioConfig & cfg)
{
  try
  {
    Simulation sim(cfg);
    sim.run();
    return 0;
  }
  catch (const SimError & err)
  {
    log::error("%s", err.what());
    std::fprintf(stderr, "aborted at stage [%s]\n", err.stage.c_str());
    return 2;
  }
  catch (const std::exception & err)
  {
    log::error("%s", err.what());
    return 3;
  }
}

} // namespace fsi
