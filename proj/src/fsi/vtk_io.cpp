#include "vtk_io.hpp"

#include "shape.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace fsi
{

namespace
{

// tensor-order -> VTK biquadratic-quad order
constexpr int vtk_q2_order[9] = {0, 2, 8, 6, 1, 5, 7, 3, 4};

} // namespace

void write_fluid_vtk(const FluidMesh & mesh, const Vector & u, const Vector & p,
                     const std::string & path)
{
  std::FILE * f = std::fopen(path.c_str(), "w");
  check(f != nullptr, "io", "cannot open " + path);
  const int nv = mesh.n_vnodes();
  const int nc = mesh.n_cells();

  std::fprintf(f, "# vtk DataFile Version 3.0\nfluid\nASCII\nDATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f, "POINTS %d double\n", nv);
  for (int n = 0; n < nv; ++n)
    std::fprintf(f, "%.17g %.17g 0\n", mesh.vnode_coord[n][0], mesh.vnode_coord[n][1]);

  std::fprintf(f, "CELLS %d %d\n", nc, nc * 10);
  for (int c = 0; c < nc; ++c)
  {
    std::fprintf(f, "9");
    for (int k = 0; k < 9; ++k)
      std::fprintf(f, " %d", mesh.cells[c].vnode[vtk_q2_order[k]]);
    std::fprintf(f, "\n");
  }
  std::fprintf(f, "CELL_TYPES %d\n", nc);
  for (int c = 0; c < nc; ++c)
    std::fprintf(f, "28\n");

  // pressure sampled at every velocity node through the Q1 interpolant
  Vector p_at_vnode = Vector::Zero(nv);
  for (int c = 0; c < nc; ++c)
  {
    const auto & nodes = mesh.cells[c].vnode;
    for (int k = 0; k < 9; ++k)
      p_at_vnode[nodes[k]] = mesh.eval_q1(p, c, q2_node_coords()[k]);
  }

  std::fprintf(f, "POINT_DATA %d\n", nv);
  std::fprintf(f, "VECTORS velocity double\n");
  for (int n = 0; n < nv; ++n)
    std::fprintf(f, "%.17g %.17g 0\n", u[n], u[nv + n]);
  std::fprintf(f, "SCALARS pressure double 1\nLOOKUP_TABLE default\n");
  for (int n = 0; n < nv; ++n)
    std::fprintf(f, "%.17g\n", p_at_vnode[n]);
  std::fprintf(f, "SCALARS cell_level double 1\nLOOKUP_TABLE default\n");
  {
    std::vector<double> lvl(nv, 0.0);
    for (int c = 0; c < nc; ++c)
      for (int k = 0; k < 9; ++k)
        lvl[mesh.cells[c].vnode[k]] = mesh.cells[c].level;
    for (int n = 0; n < nv; ++n)
      std::fprintf(f, "%g\n", lvl[n]);
  }
  std::fclose(f);
}

void write_solid_vtk(const SolidMesh & solid, const Vector & us,
                     const std::vector<Mat2> & deformation, const std::string & path)
{
  std::FILE * f = std::fopen(path.c_str(), "w");
  check(f != nullptr, "io", "cannot open " + path);
  const int ns = solid.n_nodes();
  const int ne = solid.n_elements();

  std::fprintf(f, "# vtk DataFile Version 3.0\nsolid\nASCII\nDATASET UNSTRUCTURED_GRID\n");
  std::fprintf(f, "POINTS %d double\n", ns);
  for (int n = 0; n < ns; ++n)
    std::fprintf(f, "%.17g %.17g 0\n", solid.current(n)[0], solid.current(n)[1]);
  std::fprintf(f, "CELLS %d %d\n", ne, ne * 4);
  for (int e = 0; e < ne; ++e)
    std::fprintf(f, "3 %d %d %d\n", solid.element(e)[0], solid.element(e)[1],
                 solid.element(e)[2]);
  std::fprintf(f, "CELL_TYPES %d\n", ne);
  for (int e = 0; e < ne; ++e)
    std::fprintf(f, "5\n");

  std::fprintf(f, "POINT_DATA %d\n", ns);
  std::fprintf(f, "VECTORS displacement double\n");
  for (int n = 0; n < ns; ++n)
    std::fprintf(f, "%.17g %.17g 0\n", solid.current(n)[0] - solid.reference(n)[0],
                 solid.current(n)[1] - solid.reference(n)[1]);
  if (us.size() == 2 * ns)
  {
    std::fprintf(f, "VECTORS velocity double\n");
    for (int n = 0; n < ns; ++n)
      std::fprintf(f, "%.17g %.17g 0\n", us[n], us[ns + n]);
  }

  std::fprintf(f, "CELL_DATA %d\n", ne);
  std::fprintf(f, "SCALARS tau_xx double 1\nLOOKUP_TABLE default\n");
  for (int e = 0; e < ne; ++e)
    std::fprintf(f, "%.17g\n", solid.tau[e](0, 0));
  std::fprintf(f, "SCALARS tau_yy double 1\nLOOKUP_TABLE default\n");
  for (int e = 0; e < ne; ++e)
    std::fprintf(f, "%.17g\n", solid.tau[e](1, 1));
  std::fprintf(f, "SCALARS tau_xy double 1\nLOOKUP_TABLE default\n");
  for (int e = 0; e < ne; ++e)
    std::fprintf(f, "%.17g\n", solid.tau[e](0, 1));
  if (static_cast<int>(deformation.size()) == ne)
  {
    std::fprintf(f, "SCALARS det_F double 1\nLOOKUP_TABLE default\n");
    for (int e = 0; e < ne; ++e)
      std::fprintf(f, "%.17g\n", deformation[e].determinant());
  }
  std::fclose(f);
}

SolidMesh read_solid_vtk(const std::string & path)
{
  std::ifstream in(path);
  check(in.good(), "io", "cannot open " + path);
  std::string token;
  int n_points = 0;
  std::vector<Vec2> pts;
  std::vector<std::array<int, 3>> tris;
  while (in >> token)
  {
    if (token == "POINTS")
    {
      std::string type;
      in >> n_points >> type;
      pts.resize(n_points);
      for (int i = 0; i < n_points; ++i)
      {
        double x, y, z;
        in >> x >> y >> z;
        pts[i] = Vec2{x, y};
      }
    }
    else if (token == "CELLS")
    {
      int ncells = 0, total = 0;
      in >> ncells >> total;
      for (int c = 0; c < ncells; ++c)
      {
        int count = 0;
        in >> count;
        std::vector<int> ids(count);
        for (int & id: ids)
          in >> id;
        if (count == 3)
          tris.push_back({ids[0], ids[1], ids[2]});
      }
    }
  }
  check(!pts.empty() && !tris.empty(), "io", "no triangle mesh found in " + path);
  return SolidMesh(std::move(pts), std::move(tris));
}

} // namespace fsi
