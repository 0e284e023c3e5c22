#pragma once

#include "fluid_mesh.hpp"
#include "quadrature.hpp"
#include "shape.hpp"

#include <array>
#include <vector>

namespace fsi
{

/// Physical-space basis data per quadrature point for one cell size; all
/// cells of a level are congruent rectangles, so this is cached per level.
struct QuadBasis
{
  QuadratureRule rule;
  std::vector<std::array<double, 9>> phi;
  std::vector<std::array<Vec2, 9>> dphi; // physical gradients
  std::vector<std::array<double, 4>> psi; // pressure basis
  std::vector<double> w_detj;

  QuadBasis() = default;

  QuadBasis(double hx, double hy, int n_gauss)
  {
    rule = gauss_quad(n_gauss);
    const double jx = 2.0 / hx, jy = 2.0 / hy;
    const double detj = hx * hy / 4.0;
    const int nq = rule.size();
    phi.resize(nq);
    dphi.resize(nq);
    psi.resize(nq);
    w_detj.resize(nq);
    for (int q = 0; q < nq; ++q)
    {
      phi[q] = q2_values(rule.points[q]);
      psi[q] = q1_values(rule.points[q]);
      const auto g = q2_gradients(rule.points[q]);
      for (int k = 0; k < 9; ++k)
        dphi[q][k] = Vec2{g[k][0] * jx, g[k][1] * jy};
      w_detj[q] = rule.weights[q] * detj;
    }
  }
};

inline std::vector<QuadBasis> level_bases(const FluidMesh & mesh, int n_gauss = 3)
{
  std::vector<QuadBasis> bases(mesh.max_level + 1);
  const double hbx = mesh.domain.Lx / mesh.domain.nx;
  const double hby = mesh.domain.Ly / mesh.domain.ny;
  for (int l = 0; l <= mesh.max_level; ++l)
    bases[l] = QuadBasis(hbx / (1L << l), hby / (1L << l), n_gauss);
  return bases;
}

} // namespace fsi
