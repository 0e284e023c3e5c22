#include "oracles/dense_appendix.hpp"

#include <cmath>

namespace oracle
{

namespace
{

// Explicit biquadratic Lagrange basis, tensor node order (idx = 3j+i over
// xi values {-1,0,1}); written out by hand rather than via 1D products.
double q2_phi(int node, double xi, double eta)
{
  const int i = node % 3, j = node / 3;
  const double xs = (i == 0) ? -1.0 : (i == 2 ? 1.0 : 0.0);
  const double ys = (j == 0) ? -1.0 : (j == 2 ? 1.0 : 0.0);
  const double fx = (i == 1) ? (1.0 - xi * xi) : 0.5 * xi * (xi + xs);
  const double fy = (j == 1) ? (1.0 - eta * eta) : 0.5 * eta * (eta + ys);
  return fx * fy;
}

Vec2 q2_dphi(int node, double xi, double eta)
{
  const int i = node % 3, j = node / 3;
  const double xs = (i == 0) ? -1.0 : (i == 2 ? 1.0 : 0.0);
  const double ys = (j == 0) ? -1.0 : (j == 2 ? 1.0 : 0.0);
  const double fx = (i == 1) ? (1.0 - xi * xi) : 0.5 * xi * (xi + xs);
  const double fy = (j == 1) ? (1.0 - eta * eta) : 0.5 * eta * (eta + ys);
  const double dfx = (i == 1) ? -2.0 * xi : xi + 0.5 * xs;
  const double dfy = (j == 1) ? -2.0 * eta : eta + 0.5 * ys;
  return Vec2{dfx * fy, fx * dfy};
}

double q1_psi(int node, double xi, double eta)
{
  const double xs = (node % 2 == 0) ? -1.0 : 1.0;
  const double ys = (node / 2 == 0) ? -1.0 : 1.0;
  return 0.25 * (1.0 + xs * xi) * (1.0 + ys * eta);
}

// 5-point Gauss-Legendre on [-1,1]
const double gp5[5] = {-0.906179845938663992797626878299,
                       -0.538469310105683091036314420700, 0.0,
                       0.538469310105683091036314420700,
                       0.906179845938663992797626878299};
const double gw5[5] = {0.236926885056189087514264040720,
                       0.478628670499366468041291514836,
                       0.568888888888888888888888888889,
                       0.478628670499366468041291514836,
                       0.236926885056189087514264040720};

struct QuadPoint
{
  double w; // weight * det J
  std::array<double, 9> phi;
  std::array<Vec2, 9> dphi; // physical gradients
  std::array<double, 4> psi;
  Vec2 x;
};

std::vector<QuadPoint> quad_points(const std::array<Vec2, 4> & c)
{
  std::vector<QuadPoint> pts;
  pts.reserve(25);
  for (int qj = 0; qj < 5; ++qj)
    for (int qi = 0; qi < 5; ++qi)
    {
      const double xi = gp5[qi], eta = gp5[qj];
      const Vec2 x = 0.25 * ((1 - xi) * (1 - eta) * c[0] + (1 + xi) * (1 - eta) * c[1] +
                             (1 - xi) * (1 + eta) * c[2] + (1 + xi) * (1 + eta) * c[3]);
      const Vec2 dx_dxi = 0.25 * (-(1 - eta) * c[0] + (1 - eta) * c[1] -
                                  (1 + eta) * c[2] + (1 + eta) * c[3]);
      const Vec2 dx_deta = 0.25 * (-(1 - xi) * c[0] - (1 + xi) * c[1] +
                                   (1 - xi) * c[2] + (1 + xi) * c[3]);
      const double detj = dx_dxi[0] * dx_deta[1] - dx_dxi[1] * dx_deta[0];
      QuadPoint qp;
      qp.w = gw5[qi] * gw5[qj] * detj;
      qp.x = x;
      for (int k = 0; k < 9; ++k)
      {
        qp.phi[k] = q2_phi(k, xi, eta);
        const Vec2 g = q2_dphi(k, xi, eta);
        qp.dphi[k] = Vec2{(dx_deta[1] * g[0] - dx_dxi[1] * g[1]) / detj,
                          (-dx_deta[0] * g[0] + dx_dxi[0] * g[1]) / detj};
      }
      for (int k = 0; k < 4; ++k)
        qp.psi[k] = q1_psi(k, xi, eta);
      pts.push_back(qp);
    }
  return pts;
}

// Dunavant degree-4 rule on the unit triangle (6 points, weights sum 1/2)
struct TriPoint
{
  double w;
  double lambda[3];
};

std::vector<TriPoint> tri_points()
{
  const double a1 = 0.108103018168070, b1 = 0.445948490915965,
               w1 = 0.223381589678011;
  const double a2 = 0.816847572980459, b2 = 0.091576213509771,
               w2 = 0.109951743655322;
  std::vector<TriPoint> pts;
  auto add = [&](double l1, double l2, double w) {
    TriPoint p;
    p.lambda[0] = 1.0 - l1 - l2;
    p.lambda[1] = l1;
    p.lambda[2] = l2;
    p.w = 0.5 * w;
    pts.push_back(p);
  };
  add(b1, b1, w1);
  add(a1, b1, w1);
  add(b1, a1, w1);
  add(b2, b2, w2);
  add(a2, b2, w2);
  add(b2, a2, w2);
  return pts;
}

struct TriGeom
{
  double area;
  Vec2 grad[3];

  explicit TriGeom(const std::array<Vec2, 3> & v)
  {
    area = 0.5 * ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
                  (v[1][1] - v[0][1]) * (v[2][0] - v[0][0]));
    grad[0] = Vec2{v[1][1] - v[2][1], v[2][0] - v[1][0]} / (2.0 * area);
    grad[1] = Vec2{v[2][1] - v[0][1], v[0][0] - v[2][0]} / (2.0 * area);
    grad[2] = Vec2{v[0][1] - v[1][1], v[1][0] - v[0][0]} / (2.0 * area);
  }
};

} // namespace

Dense quad_mass(const std::array<Vec2, 4> & corners, double rho)
{
  Dense m = Dense::Zero(9, 9);
  for (const auto & qp: quad_points(corners))
    for (int k = 0; k < 9; ++k)
      for (int l = 0; l < 9; ++l)
        m(k, l) += rho * qp.w * qp.phi[k] * qp.phi[l];
  return m;
}

Dense quad_stiffness(const std::array<Vec2, 4> & corners, double mu)
{
  Dense k11 = Dense::Zero(9, 9), k22 = Dense::Zero(9, 9), k12 = Dense::Zero(9, 9);
  for (const auto & qp: quad_points(corners))
    for (int k = 0; k < 9; ++k)
      for (int m = 0; m < 9; ++m)
      {
        k11(k, m) += mu * qp.w * (2.0 * qp.dphi[k][0] * qp.dphi[m][0] +
                                  qp.dphi[k][1] * qp.dphi[m][1]);
        k22(k, m) += mu * qp.w * (2.0 * qp.dphi[k][1] * qp.dphi[m][1] +
                                  qp.dphi[k][0] * qp.dphi[m][0]);
        k12(k, m) += mu * qp.w * qp.dphi[k][0] * qp.dphi[m][1];
      }
  // subscript convention as in the printed B definition: the second index is
  // the row (test function), so the printed (K12)_km lands at (row m, col k)
  Dense full = Dense::Zero(18, 18);
  full.block(0, 0, 9, 9) = k11;
  full.block(9, 9, 9, 9) = k22;
  full.block(0, 9, 9, 9) = k12.transpose();
  full.block(9, 0, 9, 9) = k12; // (K21)_km = (K12)_mk
  return full;
}

Dense quad_divergence(const std::array<Vec2, 4> & corners)
{
  Dense b = Dense::Zero(18, 4);
  for (const auto & qp: quad_points(corners))
    for (int m = 0; m < 9; ++m)
      for (int k = 0; k < 4; ++k)
      {
        b(m, k) -= qp.w * qp.psi[k] * qp.dphi[m][0];
        b(9 + m, k) -= qp.w * qp.psi[k] * qp.dphi[m][1];
      }
  return b;
}

DenseV quad_gravity(const std::array<Vec2, 4> & corners, double rho, const Vec2 & g)
{
  DenseV f = DenseV::Zero(18);
  for (const auto & qp: quad_points(corners))
    for (int m = 0; m < 9; ++m)
    {
      f(m) += rho * qp.w * g[0] * qp.phi[m];
      f(9 + m) += rho * qp.w * g[1] * qp.phi[m];
    }
  return f;
}

Dense tri_mass(const std::array<Vec2, 3> & verts, double contrast)
{
  const TriGeom geo(verts);
  Dense m = Dense::Zero(3, 3);
  for (const auto & qp: tri_points())
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        m(k, l) += contrast * qp.w * 2.0 * geo.area * qp.lambda[k] * qp.lambda[l];
  return m;
}

Dense tri_solid_tangent(const std::array<Vec2, 3> & verts, const Mat2 & G,
                        const Mat2 & tau, double mu_s, double dt)
{
  const TriGeom geo(verts);
  const double A = geo.area;
  Dense k11 = Dense::Zero(3, 3), k22 = Dense::Zero(3, 3), k12 = Dense::Zero(3, 3);

  auto du = [&](int i, int k) { return G(i, k); }; // d u_i^n / d x_k

  for (int b = 0; b < 3; ++b)
    for (int m = 0; m < 3; ++m)
    {
      const Vec2 & gb = geo.grad[b];
      const Vec2 & gm = geo.grad[m];

      // K11: the eight printed terms, one by one
      double v = 0.0;
      v += mu_s * dt * 2.0 * gb[0] * gm[0];
      v += mu_s * dt * gb[1] * gm[1];
      {
        double s1 = 0.0, s2 = 0.0;
        for (int k = 0; k < 2; ++k)
        {
          s1 += gb[k] * du(0, k);
          s2 += gb[k] * du(1, k);
        }
        v += 2.0 * mu_s * dt * dt * s1 * gm[0];
        v += mu_s * dt * dt * s2 * gm[1];
      }
      {
        double s1 = 0.0, s2 = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
          {
            s1 += gb[k] * tau(k, l) * du(0, l);
            s2 += gb[k] * tau(k, l) * du(1, l);
          }
        v += 2.0 * dt * dt * s1 * gm[0];
        v += dt * dt * s2 * gm[1];
      }
      {
        double s1 = 0.0, s2 = 0.0;
        for (int k = 0; k < 2; ++k)
        {
          s1 += gb[k] * tau(k, 0);
          s2 += gb[k] * tau(k, 1);
        }
        v += 2.0 * dt * s1 * gm[0];
        v += dt * s2 * gm[1];
      }
      k11(b, m) = A * v;

      // K22: subscripts 1 <-> 2
      v = 0.0;
      v += mu_s * dt * 2.0 * gb[1] * gm[1];
      v += mu_s * dt * gb[0] * gm[0];
      {
        double s1 = 0.0, s2 = 0.0;
        for (int k = 0; k < 2; ++k)
        {
          s1 += gb[k] * du(1, k);
          s2 += gb[k] * du(0, k);
        }
        v += 2.0 * mu_s * dt * dt * s1 * gm[1];
        v += mu_s * dt * dt * s2 * gm[0];
      }
      {
        double s1 = 0.0, s2 = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
          {
            s1 += gb[k] * tau(k, l) * du(1, l);
            s2 += gb[k] * tau(k, l) * du(0, l);
          }
        v += 2.0 * dt * dt * s1 * gm[1];
        v += dt * dt * s2 * gm[0];
      }
      {
        double s1 = 0.0, s2 = 0.0;
        for (int k = 0; k < 2; ++k)
        {
          s1 += gb[k] * tau(k, 1);
          s2 += gb[k] * tau(k, 0);
        }
        v += 2.0 * dt * s1 * gm[1];
        v += dt * s2 * gm[0];
      }
      k22(b, m) = A * v;

      // K12: the four printed terms
      v = 0.0;
      v += mu_s * dt * gb[0] * gm[1];
      {
        double s = 0.0;
        for (int k = 0; k < 2; ++k)
          s += du(0, k) * gb[k];
        v += mu_s * dt * dt * s * gm[1];
      }
      {
        double s = 0.0;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            s += du(0, k) * tau(k, l) * gb[l];
        v += dt * dt * s * gm[1];
      }
      {
        double s = 0.0;
        for (int k = 0; k < 2; ++k)
          s += tau(0, k) * gb[k];
        v += dt * s * gm[1];
      }
      k12(b, m) = A * v;
    }

  // second printed subscript = row, as for the fluid blocks
  Dense full = Dense::Zero(6, 6);
  full.block(0, 0, 3, 3) = k11.transpose();
  full.block(3, 3, 3, 3) = k22.transpose();
  full.block(0, 3, 3, 3) = k12.transpose();
  full.block(3, 0, 3, 3) = k12; // (K21)_bm = (K12)_mb
  return full;
}

DenseV tri_solid_load(const std::array<Vec2, 3> & verts, const Mat2 & G,
                      const Mat2 & tau, double rho_s, double rho_f, const Vec2 & g,
                      double mu_s, double dt)
{
  const TriGeom geo(verts);
  DenseV f = DenseV::Zero(6);
  for (const auto & qp: tri_points())
    for (int m = 0; m < 3; ++m)
    {
      f(m) += (rho_s - rho_f) * qp.w * 2.0 * geo.area * g[0] * qp.lambda[m];
      f(3 + m) += (rho_s - rho_f) * qp.w * 2.0 * geo.area * g[1] * qp.lambda[m];
    }
  // (mu_s dt^2 du_i/dx_k du_j/dx_k + dt^2 du_i/dx_k tau_kl du_j/dx_l
  //  - tau_ij, d phi_m / d x_j)
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
      {
        double T = -tau(i, j);
        for (int k = 0; k < 2; ++k)
          T += mu_s * dt * dt * G(i, k) * G(j, k);
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            T += dt * dt * G(i, k) * tau(k, l) * G(j, l);
        f(3 * i + m) += T * geo.grad[m][j] * geo.area;
      }
  return f;
}

namespace
{

std::array<Vec2, 4> cell_corners(const fsi::FluidMesh & mesh, int c)
{
  const auto & cell = mesh.cells[c];
  return {cell.lo, Vec2{cell.hi[0], cell.lo[1]}, Vec2{cell.lo[0], cell.hi[1]},
          cell.hi};
}

void require_conforming(const fsi::FluidMesh & mesh)
{
  for (const auto & cons: mesh.v_constraint)
    if (!cons.empty())
      throw std::runtime_error("oracle global assembly expects no hanging nodes");
}

} // namespace

Dense global_fluid_mass(const fsi::FluidMesh & mesh, double rho)
{
  require_conforming(mesh);
  const int nv = mesh.n_vnodes();
  Dense m = Dense::Zero(2 * nv, 2 * nv);
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const Dense lm = quad_mass(cell_corners(mesh, c), rho);
    const auto & nodes = mesh.cells[c].vnode;
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
      {
        m(nodes[a], nodes[b]) += lm(a, b);
        m(nv + nodes[a], nv + nodes[b]) += lm(a, b);
      }
  }
  return m;
}

Dense global_fluid_stiffness(const fsi::FluidMesh & mesh, double mu)
{
  require_conforming(mesh);
  const int nv = mesh.n_vnodes();
  Dense m = Dense::Zero(2 * nv, 2 * nv);
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const Dense lk = quad_stiffness(cell_corners(mesh, c), mu);
    const auto & nodes = mesh.cells[c].vnode;
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b)
        for (int ca = 0; ca < 2; ++ca)
          for (int cb = 0; cb < 2; ++cb)
            m(ca * nv + nodes[a], cb * nv + nodes[b]) += lk(ca * 9 + a, cb * 9 + b);
  }
  return m;
}

Dense global_divergence(const fsi::FluidMesh & mesh)
{
  require_conforming(mesh);
  const int nv = mesh.n_vnodes();
  const int np = mesh.n_pnodes();
  Dense m = Dense::Zero(2 * nv, np);
  for (int c = 0; c < mesh.n_cells(); ++c)
  {
    const Dense lb = quad_divergence(cell_corners(mesh, c));
    const auto & vn = mesh.cells[c].vnode;
    const auto & pn = mesh.cells[c].pnode;
    for (int a = 0; a < 9; ++a)
      for (int k = 0; k < 4; ++k)
      {
        m(vn[a], pn[k]) += lb(a, k);
        m(nv + vn[a], pn[k]) += lb(9 + a, k);
      }
  }
  return m;
}

Dense global_solid_mass(const fsi::SolidMesh & solid, double rho_s, double rho_f)
{
  const int ns = solid.n_nodes();
  Dense m = Dense::Zero(2 * ns, 2 * ns);
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const Dense lm = tri_mass(
        {solid.current(t[0]), solid.current(t[1]), solid.current(t[2])}, rho_s - rho_f);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
      {
        m(t[a], t[b]) += lm(a, b);
        m(ns + t[a], ns + t[b]) += lm(a, b);
      }
  }
  return m;
}

Dense global_solid_tangent(const fsi::SolidMesh & solid,
                           const std::vector<Mat2> & grad_u,
                           const std::vector<Mat2> & tau, double mu_s, double dt)
{
  const int ns = solid.n_nodes();
  Dense m = Dense::Zero(2 * ns, 2 * ns);
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const Dense lk = tri_solid_tangent(
        {solid.current(t[0]), solid.current(t[1]), solid.current(t[2])}, grad_u[e],
        tau[e], mu_s, dt);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int ca = 0; ca < 2; ++ca)
          for (int cb = 0; cb < 2; ++cb)
            m(ca * ns + t[a], cb * ns + t[b]) += lk(ca * 3 + a, cb * 3 + b);
  }
  return m;
}

DenseV global_solid_load(const fsi::SolidMesh & solid, const std::vector<Mat2> & grad_u,
                         const std::vector<Mat2> & tau, double rho_s, double rho_f,
                         const Vec2 & g, double mu_s, double dt)
{
  const int ns = solid.n_nodes();
  DenseV f = DenseV::Zero(2 * ns);
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const DenseV lf = tri_solid_load(
        {solid.current(t[0]), solid.current(t[1]), solid.current(t[2])}, grad_u[e],
        tau[e], rho_s, rho_f, g, mu_s, dt);
    for (int a = 0; a < 3; ++a)
    {
      f(t[a]) += lf(a);
      f(ns + t[a]) += lf(3 + a);
    }
  }
  return f;
}

Mat2 stress_update_fd_form(const Mat2 & tau_n, const Mat2 & grad_u, double mu_s,
                           double dt)
{
  const Mat2 fd = Mat2::Identity() + dt * grad_u;
  return mu_s * (fd * fd.transpose() - Mat2::Identity()) + fd * tau_n * fd.transpose();
}

} // namespace oracle
