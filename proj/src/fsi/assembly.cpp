#include "assembly.hpp"

#include "fe_cache.hpp"

#include <array>

namespace fsi
{

namespace
{

/// Scatter a 9x9 nodal block into reduced triplets at block offsets
/// (row_comp, col_comp).
void scatter_vv(const FluidMesh & mesh, const std::array<int, 9> & nodes,
                const double local[9][9], int row_comp, int col_comp,
                std::vector<Triplet> & out)
{
  const int nvr = mesh.n_v_reduced;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
    {
      const double v = local[a][b];
      if (v == 0.0)
        continue;
      for (const auto & [ra, wa]: mesh.v_expand[nodes[a]])
        for (const auto & [rb, wb]: mesh.v_expand[nodes[b]])
          out.emplace_back(row_comp * nvr + ra, col_comp * nvr + rb, v * wa * wb);
    }
}

} // namespace

SparseOperator assemble_fluid_mass(const FluidMesh & mesh, double rho_f)
{
  const auto bases = level_bases(mesh);
  const int nvr = mesh.n_v_reduced;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_cells()) * 200);
  double local[9][9];
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        local[a][b] = 0.0;
    for (int q = 0; q < qb.rule.size(); ++q)
    {
      const double w = qb.w_detj[q] * rho_f;
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
          local[a][b] += w * qb.phi[q][a] * qb.phi[q][b];
    }
    scatter_vv(mesh, cell.vnode, local, 0, 0, trips);
    scatter_vv(mesh, cell.vnode, local, 1, 1, trips);
  }
  return from_triplets(2 * nvr, 2 * nvr, trips, true);
}

SparseOperator assemble_velocity_mass(const FluidMesh & mesh)
{
  return assemble_fluid_mass(mesh, 1.0);
}

SparseOperator assemble_fluid_stiffness(const FluidMesh & mesh, double mu_f)
{
  const auto bases = level_bases(mesh);
  const int nvr = mesh.n_v_reduced;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_cells()) * 700);
  double kxx[9][9], kyy[9][9], kxy[9][9], kyx[9][9];
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        kxx[a][b] = kyy[a][b] = kxy[a][b] = kyx[a][b] = 0.0;
    for (int q = 0; q < qb.rule.size(); ++q)
    {
      const double w = qb.w_detj[q] * mu_f;
      const auto & g = qb.dphi[q];
      for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
        {
          kxx[a][b] += w * (2.0 * g[a][0] * g[b][0] + g[a][1] * g[b][1]);
          kyy[a][b] += w * (2.0 * g[a][1] * g[b][1] + g[a][0] * g[b][0]);
          kxy[a][b] += w * g[a][1] * g[b][0]; // test x, trial y
          kyx[a][b] += w * g[a][0] * g[b][1]; // test y, trial x
        }
    }
    scatter_vv(mesh, cell.vnode, kxx, 0, 0, trips);
    scatter_vv(mesh, cell.vnode, kyy, 1, 1, trips);
    scatter_vv(mesh, cell.vnode, kxy, 0, 1, trips);
    scatter_vv(mesh, cell.vnode, kyx, 1, 0, trips);
  }
  return from_triplets(2 * nvr, 2 * nvr, trips, true);
}

SparseOperator assemble_divergence(const FluidMesh & mesh)
{
  const auto bases = level_bases(mesh);
  const int nvr = mesh.n_v_reduced;
  const int npr = mesh.n_p_reduced;
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(mesh.n_cells()) * 300);
  double b1[9][4], b2[9][4];
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    for (int a = 0; a < 9; ++a)
      for (int k = 0; k < 4; ++k)
        b1[a][k] = b2[a][k] = 0.0;
    for (int q = 0; q < qb.rule.size(); ++q)
    {
      const double w = qb.w_detj[q];
      for (int a = 0; a < 9; ++a)
        for (int k = 0; k < 4; ++k)
        {
          b1[a][k] -= w * qb.psi[q][k] * qb.dphi[q][a][0];
          b2[a][k] -= w * qb.psi[q][k] * qb.dphi[q][a][1];
        }
    }
    for (int a = 0; a < 9; ++a)
      for (int k = 0; k < 4; ++k)
      {
        for (const auto & [ra, wa]: mesh.v_expand[cell.vnode[a]])
          for (const auto & [rk, wk]: mesh.p_expand[cell.pnode[k]])
          {
            if (b1[a][k] != 0.0)
              trips.emplace_back(ra, rk, b1[a][k] * wa * wk);
            if (b2[a][k] != 0.0)
              trips.emplace_back(nvr + ra, rk, b2[a][k] * wa * wk);
          }
      }
  }
  return from_triplets(2 * nvr, npr, trips, false);
}

SparseOperator assemble_solid_mass(const SolidMesh & solid, double rho_s, double rho_f)
{
  const int ns = solid.n_nodes();
  const double contrast = rho_s - rho_f;
  const QuadratureRule rule = triangle_deg2();
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(solid.n_elements()) * 18);
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const double area = solid.current_area(e);
    check(area > 0.0, "assembly", "degenerate solid element " + std::to_string(e));
    const double detj = 2.0 * area; // reference triangle has measure 1/2
    double local[3][3] = {};
    for (int q = 0; q < rule.size(); ++q)
    {
      const Vec2 & xi = rule.points[q];
      const double lambda[3] = {1.0 - xi[0] - xi[1], xi[0], xi[1]};
      const double w = rule.weights[q] * detj * contrast;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          local[a][b] += w * lambda[a] * lambda[b];
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
      {
        trips.emplace_back(t[a], t[b], local[a][b]);
        trips.emplace_back(ns + t[a], ns + t[b], local[a][b]);
      }
  }
  return from_triplets(2 * ns, 2 * ns, trips, true);
}

SparseOperator assemble_solid_tangent(const SolidMesh & solid,
                                      const SolidStressField & stress, double mu_s,
                                      double dt)
{
  const int ns = solid.n_nodes();
  check(static_cast<int>(stress.tau.size()) == solid.n_elements() &&
            static_cast<int>(stress.grad_u.size()) == solid.n_elements(),
        "assembly", "stress field and solid mesh element counts differ");
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(solid.n_elements()) * 36);
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const TriangleGeometry geo(solid.current(t[0]), solid.current(t[1]),
                               solid.current(t[2]));
    check(geo.area > 0.0, "assembly", "degenerate solid element " + std::to_string(e));
    const Mat2 & G = stress.grad_u[e];
    const Mat2 & tau = stress.tau[e];
    const Vec2 r1 = G.row(0);
    const Vec2 r2 = G.row(1);
    const double area = geo.area;

    // w_i(b), the common row factor of all four appendix K^s terms
    std::array<Vec2, 3> wvec;
    for (int b = 0; b < 3; ++b)
    {
      const Vec2 & gb = geo.grad[b];
      const Vec2 taugb = tau * gb;
      wvec[b] = Vec2{mu_s * dt * gb[0] + mu_s * dt * dt * gb.dot(r1) +
                         dt * dt * taugb.dot(r1) + dt * taugb[0],
                     mu_s * dt * gb[1] + mu_s * dt * dt * gb.dot(r2) +
                         dt * dt * taugb.dot(r2) + dt * taugb[1]};
    }

    // printed (K^s)_{bm} entries land at (row m, col b); K21 = K12^T as stated
    for (int b = 0; b < 3; ++b)
      for (int m = 0; m < 3; ++m)
      {
        const Vec2 & gm = geo.grad[m];
        const double k11 = area * (2.0 * wvec[b][0] * gm[0] + wvec[b][1] * gm[1]);
        const double k22 = area * (2.0 * wvec[b][1] * gm[1] + wvec[b][0] * gm[0]);
        const double k12 = area * (wvec[b][0] * gm[1]);
        trips.emplace_back(t[m], t[b], k11);
        trips.emplace_back(ns + t[m], ns + t[b], k22);
        trips.emplace_back(t[m], ns + t[b], k12);
        trips.emplace_back(ns + t[b], t[m], k12);
      }
  }
  return from_triplets(2 * ns, 2 * ns, trips, false);
}

Vector assemble_body_force(const FluidMesh & mesh,
                           const std::function<Vec2(const Vec2 &)> & force)
{
  const auto bases = level_bases(mesh);
  const int nvr = mesh.n_v_reduced;
  Vector f = Vector::Zero(2 * nvr);
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const auto & cell = mesh.cells[c];
    const QuadBasis & qb = bases[cell.level];
    const BilinearCell geo = mesh.cell_geometry(c);
    for (int q = 0; q < qb.rule.size(); ++q)
    {
      const Vec2 x = geo.map(qb.rule.points[q]);
      const Vec2 fx = force(x);
      if (fx[0] == 0.0 && fx[1] == 0.0)
        continue;
      const double w = qb.w_detj[q];
      for (int a = 0; a < 9; ++a)
      {
        const double v = w * qb.phi[q][a];
        for (const auto & [ra, wa]: mesh.v_expand[cell.vnode[a]])
        {
          f[ra] += v * wa * fx[0];
          f[nvr + ra] += v * wa * fx[1];
        }
      }
    }
  }
  return f;
}

Vector assemble_neumann(const FluidMesh & mesh,
                        const std::function<Vec2(const Vec2 &, int)> & traction)
{
  const int nvr = mesh.n_v_reduced;
  Vector f = Vector::Zero(2 * nvr);
  if (!traction)
    return f;
  std::vector<double> qp, qw;
  gauss_segment(3, qp, qw);
  for (const auto & face: mesh.boundary_faces)
  {
    const auto nodes = mesh.face_vnodes(face.cell, face.side);
    const Vec2 & a = mesh.vnode_coord[nodes[0]];
    const Vec2 & b = mesh.vnode_coord[nodes[2]];
    const double half_len = 0.5 * (b - a).norm();
    for (size_t q = 0; q < qp.size(); ++q)
    {
      const double s = 0.5 * (qp[q] + 1.0); // in [0,1]
      const Vec2 x = a + s * (b - a);
      const Vec2 h = traction(x, face.tag);
      if (h[0] == 0.0 && h[1] == 0.0)
        continue;
      const auto tr = quadratic_edge_weights(s);
      const double w = qw[q] * half_len;
      for (int k = 0; k < 3; ++k)
        for (const auto & [rk, wk]: mesh.v_expand[nodes[k]])
        {
          f[rk] += w * tr[k] * wk * h[0];
          f[nvr + rk] += w * tr[k] * wk * h[1];
        }
    }
  }
  return f;
}

Vector assemble_solid_load(const SolidMesh & solid, const SolidStressField & stress,
                           double rho_s, double rho_f, const Vec2 & g, double mu_s,
                           double dt)
{
  const int ns = solid.n_nodes();
  const double contrast = rho_s - rho_f;
  Vector fs = Vector::Zero(2 * ns);
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const TriangleGeometry geo(solid.current(t[0]), solid.current(t[1]),
                               solid.current(t[2]));
    const double area = geo.area;
    const Mat2 & G = stress.grad_u[e];
    const Mat2 & tau = stress.tau[e];
    const Mat2 T = mu_s * dt * dt * G * G.transpose() +
                   dt * dt * G * tau * G.transpose() - tau;
    for (int m = 0; m < 3; ++m)
    {
      const Vec2 & gm = geo.grad[m];
      const Vec2 Tg = T * gm;
      fs[t[m]] += contrast * g[0] * area / 3.0 + area * Tg[0];
      fs[ns + t[m]] += contrast * g[1] * area / 3.0 + area * Tg[1];
    }
  }
  return fs;
}

std::pair<Vector, Vector> assemble_loads(
    const FluidMesh & mesh, const SolidMesh & solid, const SolidStressField & stress,
    const Vec2 & g, const std::function<Vec2(const Vec2 &, int)> & traction,
    double rho_f, double rho_s, double mu_s, double dt)
{
  Vector f;
  if (g[0] == 0.0 && g[1] == 0.0)
    f = Vector::Zero(2 * mesh.n_v_reduced);
  else
    f = assemble_body_force(mesh, [&](const Vec2 &) { return Vec2(rho_f * g); });
  if (traction)
    f += assemble_neumann(mesh, traction);
  Vector fs = assemble_solid_load(solid, stress, rho_s, rho_f, g, mu_s, dt);
  return {std::move(f), std::move(fs)};
}

Vector gather_velocity(const FluidMesh & mesh, const Vector & full)
{
  const int nv = mesh.n_vnodes();
  const int nvr = mesh.n_v_reduced;
  check(full.size() == 2 * nv, "assembly", "full velocity dimension mismatch");
  Vector red(2 * nvr);
  for (int n = 0; n < nv; ++n)
  {
    const int r = mesh.v_reduced[n];
    if (r >= 0)
    {
      red[r] = full[n];
      red[nvr + r] = full[nv + n];
    }
  }
  return red;
}

Vector expand_velocity(const FluidMesh & mesh, const Vector & reduced)
{
  const int nv = mesh.n_vnodes();
  const int nvr = mesh.n_v_reduced;
  check(reduced.size() == 2 * nvr, "assembly", "reduced velocity dimension mismatch");
  Vector full(2 * nv);
  for (int n = 0; n < nv; ++n)
  {
    double vx = 0.0, vy = 0.0;
    for (const auto & [r, w]: mesh.v_expand[n])
    {
      vx += w * reduced[r];
      vy += w * reduced[nvr + r];
    }
    full[n] = vx;
    full[nv + n] = vy;
  }
  return full;
}

Vector gather_pressure(const FluidMesh & mesh, const Vector & full)
{
  const int np = mesh.n_pnodes();
  check(full.size() == np, "assembly", "full pressure dimension mismatch");
  Vector red(mesh.n_p_reduced);
  for (int n = 0; n < np; ++n)
    if (mesh.p_reduced[n] >= 0)
      red[mesh.p_reduced[n]] = full[n];
  return red;
}

Vector expand_pressure(const FluidMesh & mesh, const Vector & reduced)
{
  const int np = mesh.n_pnodes();
  check(reduced.size() == mesh.n_p_reduced, "assembly",
        "reduced pressure dimension mismatch");
  Vector full(np);
  for (int n = 0; n < np; ++n)
  {
    double v = 0.0;
    for (const auto & [r, w]: mesh.p_expand[n])
      v += w * reduced[r];
    full[n] = v;
  }
  return full;
}

} // namespace fsi
