#include "convection.hpp"

#include "assembly.hpp"
#include "fe_cache.hpp"

namespace fsi
{

namespace
{

/// u and grad u at a quadrature point from the full nodal vector.
inline void field_at_qp(const Vector & u_full, int nv, const std::array<int, 9> & nodes,
                        const std::array<double, 9> & phi,
                        const std::array<Vec2, 9> & dphi, Vec2 & u, Mat2 & grad)
{
  u.setZero();
  grad.setZero();
  for (int a = 0; a < 9; ++a)
  {
    const Vec2 ua{u_full[nodes[a]], u_full[nv + nodes[a]]};
    u += phi[a] * ua;
    grad += ua * dphi[a].transpose();
  }
}

} // namespace

ConvectionWorkspace::ConvectionWorkspace(const FluidMesh & mesh)
{
  velocity_mass = assemble_velocity_mass(mesh).mat;
}

void least_squares_system(const FluidMesh & mesh, const Vector & u_n,
                          const Vector & u_lin, double dt, SparseMat & matrix,
                          Vector & rhs)
{
  const int nv = mesh.n_vnodes();
  const int nvr = mesh.n_v_reduced;
  const auto bases = level_bases(mesh);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_cells()) * 1300);
  rhs = Vector::Zero(2 * nvr);

  double s00[9][9], s01[9][9], s10[9][9], s11[9][9];
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        s00[a][b] = s01[a][b] = s10[a][b] = s11[a][b] = 0.0;
    double fl[2][9] = {};

    for (int q = 0; q < qb.rule.size(); ++q)
    {
      Vec2 v, un;
      Mat2 G, Gn;
      field_at_qp(u_lin, nv, cell.vnode, qb.phi[q], qb.dphi[q], v, G);
      field_at_qp(u_n, nv, cell.vnode, qb.phi[q], qb.dphi[q], un, Gn);

      // r = u^n + dt (u^k . grad) u^k  (the printed right side)
      const Vec2 r = un + dt * (G * v);
      const Mat2 GtG = G.transpose() * G;
      const Vec2 Gtr = G.transpose() * r;
      const double w = qb.w_detj[q];

      double A[9]; // phi_a + dt u^k . grad phi_a
      for (int a = 0; a < 9; ++a)
        A[a] = qb.phi[q][a] + dt * v.dot(qb.dphi[q][a]);

      for (int a = 0; a < 9; ++a)
      {
        const double pa = qb.phi[q][a];
        for (int b = 0; b < 9; ++b)
        {
          const double pb = qb.phi[q][b];
          const double aa = A[a] * A[b];
          s00[a][b] += w * (aa + dt * G(0, 0) * (A[a] * pb + pa * A[b]) +
                            dt * dt * GtG(0, 0) * pa * pb);
          s11[a][b] += w * (aa + dt * G(1, 1) * (A[a] * pb + pa * A[b]) +
                            dt * dt * GtG(1, 1) * pa * pb);
          s01[a][b] += w * (dt * G(0, 1) * A[a] * pb + dt * G(1, 0) * pa * A[b] +
                            dt * dt * GtG(0, 1) * pa * pb);
          s10[a][b] += w * (dt * G(1, 0) * A[a] * pb + dt * G(0, 1) * pa * A[b] +
                            dt * dt * GtG(1, 0) * pa * pb);
        }
        fl[0][a] += w * (r[0] * A[a] + dt * Gtr[0] * pa);
        fl[1][a] += w * (r[1] * A[a] + dt * Gtr[1] * pa);
      }
    }

    for (int a = 0; a < 9; ++a)
      for (const auto & [ra, wa]: mesh.v_expand[cell.vnode[a]])
      {
        rhs[ra] += wa * fl[0][a];
        rhs[nvr + ra] += wa * fl[1][a];
        for (int b = 0; b < 9; ++b)
          for (const auto & [rb, wb]: mesh.v_expand[cell.vnode[b]])
          {
            const double ww = wa * wb;
            trips.emplace_back(ra, rb, ww * s00[a][b]);
            trips.emplace_back(nvr + ra, nvr + rb, ww * s11[a][b]);
            trips.emplace_back(ra, nvr + rb, ww * s01[a][b]);
            trips.emplace_back(nvr + ra, rb, ww * s10[a][b]);
          }
      }
  }

  matrix.resize(2 * nvr, 2 * nvr);
  matrix.setFromTriplets(trips.begin(), trips.end());
}

Vector least_squares_step(const FluidMesh & mesh, const Vector & u_n, double dt,
                          const ConvectionOptions & opts)
{
  const int nv = mesh.n_vnodes();
  check(u_n.size() == 2 * nv, "convection", "velocity dimension mismatch");

  Vector u_lin = u_n; // linearization state u^k (full layout)
  Vector x = gather_velocity(mesh, u_n); // reduced solution (warm start)

  for (int iter = 0; iter < std::max(1, opts.iterations); ++iter)
  {
    SparseMat S;
    Vector rhs;
    least_squares_system(mesh, u_n, u_lin, dt, S, rhs);
    Vector x_new = x;
    const int its = solve_cg(S, rhs, x_new, opts.cg_tol, opts.cg_max_iters);
    check(its >= 0, "convection", "least-squares CG did not converge");

    const double delta = (x_new - x).norm();
    x = x_new;
    if (iter + 1 >= opts.iterations || delta <= opts.fixed_point_tol * (1.0 + x.norm()))
      break;
    u_lin = expand_velocity(mesh, x);
  }

  return expand_velocity(mesh, x);
}

Vector taylor_galerkin_step(const FluidMesh & mesh, const ConvectionWorkspace & ws,
                            const Vector & u_n, double dt,
                            const ConvectionOptions & opts)
{
  const int nv = mesh.n_vnodes();
  const int nvr = mesh.n_v_reduced;
  check(u_n.size() == 2 * nv, "convection", "velocity dimension mismatch");
  check(ws.velocity_mass.rows() == 2 * nvr, "convection", "stale workspace");

  const auto bases = level_bases(mesh);
  Vector rhs = Vector::Zero(2 * nvr);

  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    double fl[2][9] = {};
    for (int q = 0; q < qb.rule.size(); ++q)
    {
      Vec2 un;
      Mat2 G;
      field_at_qp(u_n, nv, cell.vnode, qb.phi[q], qb.dphi[q], un, G);
      const Vec2 adv = G * un; // (u^n . grad) u^n
      const double w = qb.w_detj[q];
      for (int a = 0; a < 9; ++a)
      {
        const double pa = qb.phi[q][a];
        const double uda = un.dot(qb.dphi[q][a]);
        fl[0][a] += w * ((un[0] - dt * adv[0]) * pa - 0.5 * dt * dt * adv[0] * uda);
        fl[1][a] += w * ((un[1] - dt * adv[1]) * pa - 0.5 * dt * dt * adv[1] * uda);
      }
    }
    for (int a = 0; a < 9; ++a)
      for (const auto & [ra, wa]: mesh.v_expand[cell.vnode[a]])
      {
        rhs[ra] += wa * fl[0][a];
        rhs[nvr + ra] += wa * fl[1][a];
      }
  }

  Vector x = gather_velocity(mesh, u_n);
  const int its = solve_cg(ws.velocity_mass, rhs, x, opts.cg_tol, opts.cg_max_iters);
  check(its >= 0, "convection", "Taylor-Galerkin mass solve did not converge");
  return expand_velocity(mesh, x);
}

Vector convection_step(const FluidMesh & mesh, const ConvectionWorkspace & ws,
                       const Vector & u_n, double dt, const ConvectionOptions & opts)
{
  if (opts.scheme == ConvectionScheme::least_squares)
    return least_squares_step(mesh, u_n, dt, opts);
  return taylor_galerkin_step(mesh, ws, u_n, dt, opts);
}

} // namespace fsi
