#include "diagnostics.hpp"

#include "fe_cache.hpp"
#include "quadrature.hpp"

#include <cmath>

namespace fsi
{

double kinetic_energy_fluid(const FluidMesh & mesh, const Vector & u, double rho_f)
{
  check(u.size() == 2 * mesh.n_vnodes(), "diagnostics", "velocity dimension mismatch");
  const auto bases = level_bases(mesh);
  const int nv = mesh.n_vnodes();
  double e = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    for (int q = 0; q < qb.rule.size(); ++q)
    {
      Vec2 uq = Vec2::Zero();
      for (int a = 0; a < 9; ++a)
      {
        uq[0] += qb.phi[q][a] * u[cell.vnode[a]];
        uq[1] += qb.phi[q][a] * u[nv + cell.vnode[a]];
      }
      e += qb.w_detj[q] * uq.squaredNorm();
    }
  }
  return 0.5 * rho_f * e;
}

double kinetic_energy_solid_correction(const SolidMesh & solid, const Vector & us,
                                       double rho_s, double rho_f)
{
  const int ns = solid.n_nodes();
  check(us.size() == 2 * ns, "diagnostics", "solid velocity dimension mismatch");
  const QuadratureRule rule = triangle_deg2();
  double e = 0.0;
  for (int el = 0; el < solid.n_elements(); ++el)
  {
    const auto & t = solid.element(el);
    const double detj = 2.0 * solid.current_area(el);
    for (int q = 0; q < rule.size(); ++q)
    {
      const Vec2 & xi = rule.points[q];
      const double lambda[3] = {1.0 - xi[0] - xi[1], xi[0], xi[1]};
      Vec2 uq = Vec2::Zero();
      for (int a = 0; a < 3; ++a)
      {
        uq[0] += lambda[a] * us[t[a]];
        uq[1] += lambda[a] * us[ns + t[a]];
      }
      e += rule.weights[q] * detj * uq.squaredNorm();
    }
  }
  return 0.5 * (rho_s - rho_f) * e;
}

double viscous_dissipation_increment(const FluidMesh & mesh, const Vector & u,
                                     double mu_f, double dt)
{
  check(u.size() == 2 * mesh.n_vnodes(), "diagnostics", "velocity dimension mismatch");
  const auto bases = level_bases(mesh);
  const int nv = mesh.n_vnodes();
  double e = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    for (int q = 0; q < qb.rule.size(); ++q)
    {
      Mat2 G = Mat2::Zero();
      for (int a = 0; a < 9; ++a)
      {
        const Vec2 ua{u[cell.vnode[a]], u[nv + cell.vnode[a]]};
        G += ua * qb.dphi[q][a].transpose();
      }
      const Mat2 tau = G + G.transpose();
      e += qb.w_detj[q] * (tau.cwiseProduct(G)).sum();
    }
  }
  return mu_f * dt * e;
}

double potential_energy_solid(const SolidMesh & solid,
                              const std::vector<Mat2> & deformation, double mu_s)
{
  check(static_cast<int>(deformation.size()) == solid.n_elements(), "diagnostics",
        "deformation field element count mismatch");
  double e = 0.0;
  for (int el = 0; el < solid.n_elements(); ++el)
  {
    const Mat2 & F = deformation[el];
    e += ((F * F.transpose()).trace() - 2.0) * solid.reference_area(el);
  }
  return 0.5 * mu_s * e;
}

double solid_area(const SolidMesh & solid) { return solid.total_current_area(); }

double empirical_terminal_velocity(double rho_s, double rho_f, double mu_f, double g,
                                   double r, double L)
{
  check(r < L, "diagnostics", "terminal-velocity formula requires r < L");
  const double ratio = r / L;
  return (rho_s - rho_f) * g * r * r / (4.0 * mu_f) *
         (std::log(L / r) - 0.9157 + 1.7244 * ratio * ratio -
          1.7302 * ratio * ratio * ratio * ratio);
}

Vec2 probe_tip_displacement(const SolidMesh & solid, int node)
{
  return solid.current(node) - solid.reference(node);
}

OscillationStats measure_oscillation(const std::vector<double> & time,
                                     const std::vector<double> & value, double t_begin,
                                     double t_end)
{
  OscillationStats stats;
  std::vector<double> pt, pv; // maxima
  std::vector<double> ext;    // |value| at all extrema
  for (size_t i = 1; i + 1 < value.size(); ++i)
  {
    if (time[i] < t_begin || time[i] > t_end)
      continue;
    const bool is_max = value[i] > value[i - 1] && value[i] >= value[i + 1];
    const bool is_min = value[i] < value[i - 1] && value[i] <= value[i + 1];
    if (is_max)
    {
      pt.push_back(time[i]);
      pv.push_back(value[i]);
    }
    if (is_max || is_min)
      ext.push_back(std::abs(value[i]));
  }
  // prune noise peaks: keep extrema above 20% of the largest
  double vmax = 0.0;
  for (double v: ext)
    vmax = std::max(vmax, v);
  std::vector<double> big_t;
  double mag_sum = 0.0;
  int mag_count = 0;
  for (size_t i = 0; i < pt.size(); ++i)
    if (std::abs(pv[i]) >= 0.2 * vmax)
      big_t.push_back(pt[i]);
  for (double v: ext)
    if (v >= 0.2 * vmax)
    {
      mag_sum += v;
      ++mag_count;
    }
  stats.peak_count = static_cast<int>(big_t.size());
  if (mag_count > 0)
    stats.magnitude = mag_sum / mag_count;
  if (big_t.size() >= 2)
    stats.frequency = (big_t.size() - 1) / (big_t.back() - big_t.front());
  return stats;
}

RigidFit fit_rigid_motion(const SolidMesh & solid, const Vector & us)
{
  const int ns = solid.n_nodes();
  check(us.size() == 2 * ns, "diagnostics", "solid velocity dimension mismatch");
  RigidFit fit;

  Vec2 centroid = Vec2::Zero(), vbar = Vec2::Zero();
  for (int n = 0; n < ns; ++n)
  {
    centroid += solid.current(n);
    vbar += Vec2{us[n], us[ns + n]};
  }
  centroid /= ns;
  vbar /= ns;

  // least-squares omega: minimize sum |v - vbar - omega * perp(x - c)|^2
  double num = 0.0, den = 0.0;
  for (int n = 0; n < ns; ++n)
  {
    const Vec2 r = solid.current(n) - centroid;
    const Vec2 v{us[n] - vbar[0], us[ns + n] - vbar[1]};
    num += r[0] * v[1] - r[1] * v[0];
    den += r.squaredNorm();
  }
  fit.omega = den > 0.0 ? num / den : 0.0;
  fit.translation = vbar;

  double speed_sum = 0.0;
  for (int n = 0; n < ns; ++n)
  {
    const Vec2 r = solid.current(n) - centroid;
    const Vec2 rigid{vbar[0] - fit.omega * r[1], vbar[1] + fit.omega * r[0]};
    const Vec2 v{us[n], us[ns + n]};
    fit.max_deviation = std::max(fit.max_deviation, (v - rigid).norm());
    speed_sum += v.norm();
  }
  fit.mean_speed = speed_sum / ns;
  return fit;
}

} // namespace fsi
