#include "config.hpp"

#include "log.hpp"

#include <fstream>
#include <sstream>

namespace fsi
{

namespace
{

std::string trim(const std::string & s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string unquote(std::string v)
{
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                        (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

struct Reader
{
  const KeyValues & kv;

  bool has(const std::string & key) const { return kv.count(key) > 0; }

  std::string str(const std::string & key, const std::string & dflt) const
  {
    const auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  }

  double num(const std::string & key, double dflt) const
  {
    const auto it = kv.find(key);
    if (it == kv.end())
      return dflt;
    try
    {
      size_t used = 0;
      const double v = std::stod(it->second, &used);
      check(trim(it->second.substr(used)).empty(), "config",
            "trailing characters in numeric value for " + key);
      return v;
    }
    catch (const SimError &)
    {
      throw;
    }
    catch (...)
    {
      throw SimError("config", "invalid number for key " + key + ": " + it->second);
    }
  }

  int integer(const std::string & key, int dflt) const
  {
    const double v = num(key, dflt);
    const int i = static_cast<int>(std::lround(v));
    check(std::abs(v - i) < 1e-9, "config", "expected integer for key " + key);
    return i;
  }

  bool flag(const std::string & key, bool dflt) const
  {
    const auto it = kv.find(key);
    if (it == kv.end())
      return dflt;
    const std::string v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on")
      return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
      return false;
    throw SimError("config", "invalid boolean for key " + key + ": " + v);
  }

  std::vector<double> numbers(const std::string & key) const
  {
    std::vector<double> out;
    const auto it = kv.find(key);
    if (it == kv.end())
      return out;
    std::istringstream in(it->second);
    double v;
    while (in >> v)
      out.push_back(v);
    return out;
  }
};

const char * tag_name(int t)
{
  switch (t)
  {
  case tag::left: return "left";
  case tag::right: return "right";
  case tag::bottom: return "bottom";
  case tag::top: return "top";
  default: return "hole";
  }
}

BcSpec parse_bc(const Reader & r, const std::string & side)
{
  BcSpec bc;
  const std::string type = r.str("bc." + side, "none");
  if (type == "none")
    bc.type = BcSpec::Type::none;
  else if (type == "dirichlet")
    bc.type = BcSpec::Type::dirichlet;
  else if (type == "neumann")
    bc.type = BcSpec::Type::neumann;
  else if (type == "slip")
    bc.type = BcSpec::Type::slip;
  else
    throw SimError("config", "unknown boundary type '" + type + "' for " + side);
  bc.ux = Expression(r.str("bc." + side + "_ux", "0"));
  bc.uy = Expression(r.str("bc." + side + "_uy", "0"));
  bc.traction =
      Vec2{r.num("bc." + side + "_tx", 0.0), r.num("bc." + side + "_ty", 0.0)};
  return bc;
}

} // namespace

KeyValues parse_ini(const std::string & text)
{
  KeyValues kv;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    if (line.front() == '[')
    {
      check(line.back() == ']', "config",
            "malformed section header at line " + std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    check(eq != std::string::npos, "config",
          "expected key = value at line " + std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    check(!key.empty(), "config", "empty key at line " + std::to_string(line_no));
    kv[section.empty() ? key : section + "." + key] = value;
  }
  return kv;
}

KeyValues load_ini(const std::string & path)
{
  std::ifstream in(path);
  check(in.good(), "config", "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ini(buf.str());
}

void apply_override(KeyValues & kv, const std::string & assignment)
{
  const auto eq = assignment.find('=');
  check(eq != std::string::npos, "config",
        "override must be section.key=value: " + assignment);
  const std::string key = trim(assignment.substr(0, eq));
  kv[key] = unquote(trim(assignment.substr(eq + 1)));
}

std::string to_ini(const KeyValues & kv)
{
  std::string out, section;
  for (const auto & [key, value]: kv)
  {
    const auto dot = key.find('.');
    const std::string sec = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
    if (sec != section)
    {
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += name + " = " + value + "\n";
  }
  return out;
}

ScenarioConfig config_from_kv(const KeyValues & kv)
{
  const Reader r{kv};
  ScenarioConfig cfg;
  cfg.raw = kv;

  cfg.name = r.str("scenario.name", "scenario");
  cfg.dt = r.num("scenario.dt", 1e-3);
  cfg.t_end = r.num("scenario.t_end", 1.0);
  cfg.output_every = r.integer("scenario.output_every", 1);
  cfg.vtk_every = r.integer("scenario.vtk_every", 0);
  cfg.output_dir = r.str("scenario.output_dir", "out");
  cfg.log_level = r.str("scenario.log_level", "warn");

  cfg.domain.x0 = r.num("domain.x0", 0.0);
  cfg.domain.y0 = r.num("domain.y0", 0.0);
  cfg.domain.Lx = r.num("domain.Lx", 1.0);
  cfg.domain.Ly = r.num("domain.Ly", 1.0);
  cfg.domain.nx = r.integer("domain.nx", 1);
  cfg.domain.ny = r.integer("domain.ny", 1);
  if (r.has("domain.hole"))
  {
    const auto h = r.numbers("domain.hole");
    check(h.size() == 4, "config", "domain.hole expects 'x0 y0 x1 y1'");
    cfg.domain.hole = std::array<double, 4>{h[0], h[1], h[2], h[3]};
  }

  cfg.rho_f = r.num("fluid.rho", 1.0);
  cfg.mu_f = r.num("fluid.mu", 1.0);
  cfg.gravity = Vec2{r.num("fluid.gx", 0.0), r.num("fluid.gy", 0.0)};

  const std::string shape = r.str("solid.shape", "none");
  if (shape == "none")
    cfg.solid_shape = ScenarioConfig::SolidShape::none;
  else if (shape == "disc")
    cfg.solid_shape = ScenarioConfig::SolidShape::disc;
  else if (shape == "rectangle")
    cfg.solid_shape = ScenarioConfig::SolidShape::rectangle;
  else if (shape == "file")
    cfg.solid_shape = ScenarioConfig::SolidShape::file;
  else
    throw SimError("config", "unknown solid.shape '" + shape + "'");
  cfg.rho_s = r.num("solid.rho", 1.0);
  cfg.mu_s = r.num("solid.mu", 1.0);
  cfg.disc_center = Vec2{r.num("solid.cx", 0.0), r.num("solid.cy", 0.0)};
  cfg.disc_radius = r.num("solid.radius", 0.0);
  cfg.disc_boundary_nodes = r.integer("solid.boundary_nodes", 48);
  cfg.rect_lo = Vec2{r.num("solid.x0", 0.0), r.num("solid.y0", 0.0)};
  cfg.rect_width = r.num("solid.width", 0.0);
  cfg.rect_height = r.num("solid.height", 0.0);
  cfg.rect_nx = r.integer("solid.nx", 1);
  cfg.rect_ny = r.integer("solid.ny", 1);
  cfg.solid_mesh_file = r.str("solid.mesh_file", "");

  for (int t = 0; t < tag::count; ++t)
    cfg.bc[t] = parse_bc(r, tag_name(t));

  const std::string ic = r.str("ic.type", "rest");
  if (ic == "rest")
    cfg.ic = ScenarioConfig::InitialCondition::rest;
  else if (ic == "stream_function")
    cfg.ic = ScenarioConfig::InitialCondition::stream_function;
  else
    throw SimError("config", "unknown ic.type '" + ic + "'");
  cfg.psi0 = r.num("ic.psi0", 0.0);
  cfg.ic_a = r.num("ic.a", 2.0 * M_PI);
  cfg.ic_b = r.num("ic.b", 2.0 * M_PI);

  const std::string scheme = r.str("convection.scheme", "least_squares");
  if (scheme == "least_squares")
    cfg.convection.scheme = ConvectionScheme::least_squares;
  else if (scheme == "taylor_galerkin")
    cfg.convection.scheme = ConvectionScheme::taylor_galerkin;
  else
    throw SimError("config", "unknown convection.scheme '" + scheme + "'");
  cfg.convection.iterations = r.integer("convection.iterations", 1);
  cfg.convection.fixed_point_tol = r.num("convection.tol", 1e-8);

  cfg.refine_levels = r.integer("refine.levels", 0);
  cfg.refine_halo = r.num("refine.halo", 0.0);
  cfg.adapt_every = r.integer("refine.every", 10);
  for (int b = 1;; ++b)
  {
    const std::string key = "refine.box" + std::to_string(b);
    if (!r.has(key))
      break;
    const auto v = r.numbers(key);
    check(v.size() == 5, "config", key + " expects 'x0 y0 x1 y1 level'");
    cfg.refine_boxes.push_back({v[0], v[1], v[2], v[3], v[4]});
  }

  const std::string solver = r.str("solver.type", "direct");
  if (solver == "direct")
    cfg.solver.kind = SolverKind::direct;
  else if (solver == "krylov")
    cfg.solver.kind = SolverKind::krylov;
  else
    throw SimError("config", "unknown solver.type '" + solver + "'");
  cfg.solver.krylov_tol = r.num("solver.krylov_tol", 1e-10);
  cfg.solver.max_iters = r.integer("solver.max_iters", 400);

  cfg.dump_matrices = r.flag("output.dump_matrices", false);

  cfg.validate();
  return cfg;
}

void ScenarioConfig::validate() const
{
  check(dt > 0.0, "config", "scenario.dt must be positive");
  check(t_end > 0.0, "config", "scenario.t_end must be positive");
  check(rho_f > 0.0, "config", "fluid.rho must be positive");
  check(mu_f > 0.0, "config", "fluid.mu must be positive");
  check(domain.nx >= 1 && domain.ny >= 1, "config", "domain.nx/ny must be >= 1");
  check(domain.Lx > 0.0 && domain.Ly > 0.0, "config", "domain extents must be positive");
  if (solid_shape != SolidShape::none)
  {
    check(rho_s > 0.0, "config", "solid.rho must be positive");
    check(mu_s > 0.0, "config", "solid.mu must be positive");
  }
  check(refine_levels >= 0 && refine_halo >= 0.0, "config",
        "refinement parameters must be non-negative");
  check(output_every >= 1, "config", "scenario.output_every must be >= 1");
}

ScenarioConfig load_config(const std::string & path)
{
  return config_from_kv(load_ini(path));
}

} // namespace fsi
