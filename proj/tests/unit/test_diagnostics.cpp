#include "fsi/diagnostics.hpp"
#include "fsi/quadrature.hpp"
#include "fsi/shape.hpp"
#include "fsi/solid_state.hpp"

#include <doctest.h>

using namespace fsi;

namespace
{

FluidMesh square(int n)
{
  DomainSpec dom;
  dom.nx = dom.ny = n;
  return build_structured_fluid_mesh(dom);
}

} // namespace

TEST_CASE("fluid kinetic energy")
{
  const FluidMesh mesh = square(6);
  const int nv = mesh.n_vnodes();

  CHECK(kinetic_energy_fluid(mesh, Vector::Zero(2 * nv), 1.0) == 0.0);

  Vector u(2 * nv);
  u.head(nv).setConstant(3.0);
  u.tail(nv).setConstant(4.0); // |u| = 5 uniformly
  CHECK(kinetic_energy_fluid(mesh, u, 2.0) == doctest::Approx(25.0).epsilon(1e-13));

  // interpolant of a sine field against a 2-orders-higher quadrature value
  for (int k = 0; k < nv; ++k)
  {
    const Vec2 & x = mesh.vnode_coord[k];
    u[k] = std::sin(M_PI * x[0]) * std::sin(M_PI * x[1]);
    u[nv + k] = 0.0;
  }
  const double coarse = kinetic_energy_fluid(mesh, u, 1.0);
  // dense 5x5-point evaluation of the same nodal interpolant
  double fine = 0.0;
  {
    const FluidMesh & m = mesh;
    std::vector<double> gp, gw;
    gauss_segment(5, gp, gw);
    for (int c = 0; c < m.n_cells(); ++c)
    {
      const auto & cell = m.cells[c];
      const BilinearCell geo = m.cell_geometry(c);
      for (size_t qj = 0; qj < gp.size(); ++qj)
        for (size_t qi = 0; qi < gp.size(); ++qi)
        {
          const Vec2 xi{gp[qi], gp[qj]};
          const auto phi = q2_values(xi);
          Vec2 uq = Vec2::Zero();
          for (int a = 0; a < 9; ++a)
          {
            uq[0] += phi[a] * u[cell.vnode[a]];
            uq[1] += phi[a] * u[nv + cell.vnode[a]];
          }
          const Mat2 J = geo.jacobian(xi);
          fine += gw[qi] * gw[qj] * J.determinant() * uq.squaredNorm();
        }
    }
    fine *= 0.5;
  }
  CHECK(coarse == doctest::Approx(fine).epsilon(1e-10));
}

TEST_CASE("solid kinetic-energy correction")
{
  const SolidMesh disc = SolidMesh::disc(Vec2{0, 0}, 0.3, 48);
  const int ns = disc.n_nodes();
  CHECK(kinetic_energy_solid_correction(disc, Vector::Ones(2 * ns), 1.0, 1.0) == 0.0);

  Vector us(2 * ns);
  us.head(ns).setConstant(0.6);
  us.tail(ns).setConstant(0.8); // |u| = 1
  CHECK(kinetic_energy_solid_correction(disc, us, 2.0, 1.0) ==
        doctest::Approx(0.5 * disc.total_current_area()).epsilon(1e-12));
}

TEST_CASE("viscous dissipation increment")
{
  const FluidMesh mesh = square(5);
  const int nv = mesh.n_vnodes();

  Vector u(2 * nv);
  u.head(nv).setConstant(2.0);
  u.tail(nv).setConstant(-1.0);
  CHECK(viscous_dissipation_increment(mesh, u, 1.0, 0.1) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // rigid rotation: symmetric gradient vanishes
  for (int k = 0; k < nv; ++k)
  {
    const Vec2 & x = mesh.vnode_coord[k];
    u[k] = -x[1];
    u[nv + k] = x[0];
  }
  CHECK(viscous_dissipation_increment(mesh, u, 1.0, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // simple shear u = (y, 0): (grad u + grad u^T) : grad u = 1
  for (int k = 0; k < nv; ++k)
  {
    u[k] = mesh.vnode_coord[k][1];
    u[nv + k] = 0.0;
  }
  CHECK(viscous_dissipation_increment(mesh, u, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("solid potential energy")
{
  SolidMesh disc = SolidMesh::disc(Vec2{0, 0}, 0.5, 32);
  const double mu_s = 3.0;

  CHECK(potential_energy_solid(disc, accumulate_deformation(disc), mu_s) ==
        doctest::Approx(0.0).epsilon(1e-12));

  // uniform stretch diag(2, 1/2): (mu/2)(4 + 1/4 - 2) A = 1.125 mu A
  std::vector<Vec2> stretched;
  for (int n = 0; n < disc.n_nodes(); ++n)
    stretched.push_back(Vec2{2.0 * disc.reference(n)[0], 0.5 * disc.reference(n)[1]});
  disc.set_current_coords(stretched);
  const double a_ref = [&] {
    double s = 0.0;
    for (int e = 0; e < disc.n_elements(); ++e)
      s += disc.reference_area(e);
    return s;
  }();
  CHECK(potential_energy_solid(disc, accumulate_deformation(disc), mu_s) ==
        doctest::Approx(1.125 * mu_s * a_ref).epsilon(1e-12));

  // rigid rotation leaves the energy at zero (machine precision)
  const double th = 0.7;
  Mat2 R;
  R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  std::vector<Vec2> rotated;
  for (int n = 0; n < disc.n_nodes(); ++n)
    rotated.push_back(R * disc.reference(n));
  disc.set_current_coords(rotated);
  CHECK(std::abs(potential_energy_solid(disc, accumulate_deformation(disc), mu_s)) <
        1e-12 * mu_s * a_ref);
}

TEST_CASE("solid area tracks the current configuration")
{
  SolidMesh disc = SolidMesh::disc(Vec2{0.5, 0.5}, 0.2, 96);
  const double a0 = solid_area(disc);
  CHECK(a0 == doctest::Approx(M_PI * 0.04).epsilon(0.005));

  const int ns = disc.n_nodes();
  Vector us(2 * ns);
  us.head(ns).setConstant(0.13);
  us.tail(ns).setConstant(-0.07);
  const SolidMesh moved = disc.updated(us, 1.0);
  CHECK(solid_area(moved) == doctest::Approx(a0).epsilon(1e-14));
}

TEST_CASE("empirical terminal velocity")
{
  CHECK(empirical_terminal_velocity(1.0, 1.0, 1.0, 980.0, 0.0625, 1.0) == 0.0);
  const double ut = empirical_terminal_velocity(1.2, 1.0, 1.0, 980.0, 0.0625, 1.0);
  CHECK(ut == doctest::Approx(0.3567).epsilon(2e-4));
  // linear in the density contrast
  const double ut2 = empirical_terminal_velocity(1.4, 1.0, 1.0, 980.0, 0.0625, 1.0);
  CHECK(ut2 == doctest::Approx(2.0 * ut).epsilon(1e-13));
}

TEST_CASE("tip displacement probe")
{
  SolidMesh leaf = SolidMesh::rectangle(Vec2{0, 0}, 0.1, 1.0, 1, 4);
  CHECK(probe_tip_displacement(leaf, leaf.probe_node()).norm() == 0.0);
  const int ns = leaf.n_nodes();
  Vector us(2 * ns);
  us.head(ns).setConstant(0.3);
  us.tail(ns).setConstant(-0.2);
  const SolidMesh moved = leaf.updated(us, 1.0);
  const Vec2 d = probe_tip_displacement(moved, moved.probe_node());
  CHECK(d[0] == doctest::Approx(0.3));
  CHECK(d[1] == doctest::Approx(-0.2));
}

TEST_CASE("oscillation measurement on a synthetic signal")
{
  std::vector<double> t, y;
  const double f = 2.94, amp = 1.34;
  for (int i = 0; i <= 20000; ++i)
  {
    const double time = i * 5e-4;
    t.push_back(time);
    y.push_back(amp * std::sin(2.0 * M_PI * f * time));
  }
  const auto stats = measure_oscillation(t, y, 2.0, 10.0);
  CHECK(stats.magnitude == doctest::Approx(amp).epsilon(0.01));
  CHECK(stats.frequency == doctest::Approx(f).epsilon(0.01));
}

TEST_CASE("rigid-motion fit")
{
  const SolidMesh disc = SolidMesh::disc(Vec2{1.0, 2.0}, 0.4, 32);
  const int ns = disc.n_nodes();
  Vector us(2 * ns);
  const Vec2 v{0.3, -0.1};
  const double omega = 0.8;
  for (int n = 0; n < ns; ++n)
  {
    const Vec2 r = disc.current(n) - Vec2{1.0, 2.0};
    us[n] = v[0] - omega * r[1];
    us[ns + n] = v[1] + omega * r[0];
  }
  const RigidFit fit = fit_rigid_motion(disc, us);
  CHECK(fit.translation[0] == doctest::Approx(v[0]).epsilon(1e-12));
  CHECK(fit.translation[1] == doctest::Approx(v[1]).epsilon(1e-12));
  CHECK(fit.omega == doctest::Approx(omega).epsilon(1e-12));
  CHECK(fit.max_deviation < 1e-12);
}
