#include "fsi/assembly.hpp"
#include "fsi/coupling.hpp"

#include <doctest.h>

#include <random>

using namespace fsi;

namespace
{

FluidMesh refined_square(int n, int levels)
{
  DomainSpec dom;
  dom.nx = dom.ny = n;
  if (levels == 0)
    return build_structured_fluid_mesh(dom);
  const SolidMesh disc = SolidMesh::disc(Vec2{0.5, 0.5}, 0.25, 64);
  return refine_near_solid(build_structured_fluid_mesh(dom), disc, levels, 0.08);
}

} // namespace

TEST_CASE("coupling columns: unit vector at a coincident node, unit sums elsewhere")
{
  const FluidMesh mesh = refined_square(8, 0);
  // place one solid node exactly on an interior fluid node (0.25, 0.25)
  int coincident = -1;
  for (int n = 0; n < mesh.n_vnodes(); ++n)
    if ((mesh.vnode_coord[n] - Vec2{0.25, 0.25}).norm() < 1e-14)
      coincident = n;
  REQUIRE(coincident >= 0);
  std::vector<Vec2> pts = {Vec2{0.25, 0.25}, Vec2{0.7, 0.22}, Vec2{0.321, 0.517}};
  const SolidMesh cloud(std::move(pts), {{0, 1, 2}});
  const CouplingMatrix c = build_coupling(mesh, cloud);

  // column 0 is the unit vector at the coincident node
  int nnz0 = 0;
  for (SparseMat::InnerIterator it(c.P, 0); it; ++it)
  {
    CHECK(it.row() == mesh.v_reduced[coincident]);
    CHECK(it.value() == doctest::Approx(1.0).epsilon(1e-14));
    ++nnz0;
  }
  CHECK(nnz0 == 1);

  for (int j = 0; j < c.solid_dim(); ++j)
  {
    double sum = 0.0;
    int nnz = 0;
    for (SparseMat::InnerIterator it(c.P, j); it; ++it)
    {
      sum += it.value();
      ++nnz;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(nnz <= 9);
  }
}

TEST_CASE("interpolation reproduces linear fields through hanging nodes")
{
  const FluidMesh mesh = refined_square(8, 2);
  const SolidMesh disc = SolidMesh::disc(Vec2{0.5, 0.5}, 0.25, 48);
  const CouplingMatrix c = build_coupling(mesh, disc);

  auto f = [](const Vec2 & x) { return 3.0 * x[0] - 2.0 * x[1] + 1.0; };
  Vector nodal(2 * mesh.n_vnodes());
  const int nv = mesh.n_vnodes();
  for (int n = 0; n < nv; ++n)
  {
    nodal[n] = f(mesh.vnode_coord[n]);
    nodal[nv + n] = -0.5 * f(mesh.vnode_coord[n]);
  }
  const Vector red = gather_velocity(mesh, nodal);
  const Vector us = interpolate_to_solid(c, red);
  const int ns = disc.n_nodes();
  for (int j = 0; j < ns; ++j)
  {
    CHECK(us[j] == doctest::Approx(f(disc.current(j))).epsilon(1e-12));
    CHECK(us[ns + j] == doctest::Approx(-0.5 * f(disc.current(j))).epsilon(1e-12));
  }
}

TEST_CASE("interpolation: zero and constant fields")
{
  const FluidMesh mesh = refined_square(6, 1);
  const SolidMesh disc = SolidMesh::disc(Vec2{0.5, 0.5}, 0.2, 24);
  const CouplingMatrix c = build_coupling(mesh, disc);
  const int nvr = mesh.n_v_reduced;
  const int ns = disc.n_nodes();

  CHECK(interpolate_to_solid(c, Vector::Zero(2 * nvr)).norm() == 0.0);

  Vector constant(2 * nvr);
  constant.head(nvr).setConstant(3.5);
  constant.tail(nvr).setConstant(-1.25);
  const Vector us = interpolate_to_solid(c, constant);
  for (int j = 0; j < ns; ++j)
  {
    CHECK(us[j] == doctest::Approx(3.5).epsilon(1e-13));
    CHECK(us[ns + j] == doctest::Approx(-1.25).epsilon(1e-13));
  }
}

TEST_CASE("interpolating a smooth field matches independent basis evaluation")
{
  const FluidMesh mesh = refined_square(10, 0);
  const SolidMesh disc = SolidMesh::disc(Vec2{0.45, 0.55}, 0.2, 32);
  const CouplingMatrix c = build_coupling(mesh, disc);

  const int nv = mesh.n_vnodes();
  Vector nodal(2 * nv);
  for (int n = 0; n < nv; ++n)
  {
    const Vec2 & x = mesh.vnode_coord[n];
    nodal[n] = std::sin(M_PI * x[0]) * std::sin(M_PI * x[1]);
    nodal[nv + n] = std::cos(M_PI * x[0]);
  }
  const Vector us = interpolate_to_solid(c, gather_velocity(mesh, nodal));

  // independent evaluation: 1D Lagrange products written inline
  auto lag = [](double s, int i) {
    if (i == 0)
      return 0.5 * s * (s - 1.0);
    if (i == 1)
      return (1.0 - s) * (1.0 + s);
    return 0.5 * s * (s + 1.0);
  };
  const int ns = disc.n_nodes();
  for (int j = 0; j < ns; ++j)
  {
    const auto loc = mesh.locate(disc.current(j));
    const auto & cell = mesh.cells[loc.cell];
    double ex = 0.0, ey = 0.0;
    for (int b = 0; b < 3; ++b)
      for (int a = 0; a < 3; ++a)
      {
        const double w = lag(loc.xi[0], a) * lag(loc.xi[1], b);
        ex += w * nodal[cell.vnode[3 * b + a]];
        ey += w * nodal[nv + cell.vnode[3 * b + a]];
      }
    CHECK(us[j] == doctest::Approx(ex).epsilon(1e-12));
    CHECK(us[ns + j] == doctest::Approx(ey).epsilon(1e-12));
  }
}

TEST_CASE("sandwich application: staged equals dense triple product")
{
  const FluidMesh mesh = refined_square(4, 1);
  const SolidMesh disc = SolidMesh::disc(Vec2{0.5, 0.5}, 0.22, 12);
  const CouplingMatrix c = build_coupling(mesh, disc);
  const int nvr = mesh.n_v_reduced;
  const int ns = disc.n_nodes();
  REQUIRE(2 * ns <= 200);

  std::mt19937 rng(8);
  std::uniform_real_distribution<double> d(-1.0, 1.0);

  SUBCASE("zero operator gives zero")
  {
    SparseMat As(2 * ns, 2 * ns);
    Vector u = Vector::Random(2 * nvr);
    CHECK(sandwich_apply(c, As, u).norm() == 0.0);
  }

  SUBCASE("identity operator reproduces D^T D u")
  {
    SparseMat As(2 * ns, 2 * ns);
    As.setIdentity();
    Vector u(2 * nvr);
    for (int i = 0; i < 2 * nvr; ++i)
      u[i] = d(rng);
    const Vector staged = sandwich_apply(c, As, u);
    const SparseMat explicit_dtd = sandwich_matrix(c, As);
    const Vector direct = explicit_dtd * u;
    CHECK((staged - direct).norm() <= 1e-13 * std::max(1.0, direct.norm()));
  }

  SUBCASE("random sparse operator matches the dense oracle")
  {
    for (int trial = 0; trial < 5; ++trial)
    {
      std::vector<Triplet> trips;
      for (int k = 0; k < 6 * ns; ++k)
        trips.emplace_back(rng() % (2 * ns), rng() % (2 * ns), d(rng));
      SparseMat As(2 * ns, 2 * ns);
      As.setFromTriplets(trips.begin(), trips.end());

      Vector u(2 * nvr);
      for (int i = 0; i < 2 * nvr; ++i)
        u[i] = d(rng);

      const Vector staged = sandwich_apply(c, As, u);

      // dense oracle: build D explicitly and multiply
      Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * ns, 2 * nvr);
      for (int j = 0; j < ns; ++j)
        for (SparseMat::InnerIterator it(c.P, j); it; ++it)
        {
          D(j, it.row()) = it.value();
          D(ns + j, nvr + it.row()) = it.value();
        }
      const Eigen::MatrixXd sandwich = D.transpose() * Eigen::MatrixXd(As) * D;
      const Vector dense = sandwich * u;
      CHECK((staged - dense).norm() <= 1e-12 * std::max(1.0, dense.norm()));

      const SparseMat explicit_m = sandwich_matrix(c, As);
      CHECK((Eigen::MatrixXd(explicit_m) - sandwich).cwiseAbs().maxCoeff() <=
            1e-12 * std::max(1.0, sandwich.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("rebuild after a tiny displacement is stable")
{
  const FluidMesh mesh = refined_square(6, 0);
  SolidMesh disc = SolidMesh::disc(Vec2{0.437, 0.519}, 0.2, 24);
  const CouplingMatrix a = build_coupling(mesh, disc);

  const int ns = disc.n_nodes();
  Vector tiny(2 * ns);
  tiny.setConstant(1e-14);
  disc = disc.updated(tiny, 1.0);
  const CouplingMatrix b = build_coupling(mesh, disc, &a);

  REQUIRE(a.P.nonZeros() == b.P.nonZeros());
  for (int j = 0; j < ns; ++j)
  {
    SparseMat::InnerIterator ia(a.P, j), ib(b.P, j);
    for (; ia && ib; ++ia, ++ib)
    {
      CHECK(ia.row() == ib.row());
      CHECK(std::abs(ia.value() - ib.value()) < 1e-12);
    }
  }
}

TEST_CASE("a solid node outside the fluid domain is reported")
{
  const FluidMesh mesh = refined_square(4, 0);
  std::vector<Vec2> pts = {Vec2{0.2, 0.2}, Vec2{1.7, 0.5}, Vec2{0.5, 0.8}};
  const SolidMesh cloud(std::move(pts), {{0, 1, 2}});
  CHECK_THROWS_AS(build_coupling(mesh, cloud), SimError);
}
