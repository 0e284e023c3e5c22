#include "coupling.hpp"

#include "sparse.hpp"

#include <algorithm>
#include <map>

namespace fsi
{

SparseMat CouplingMatrix::d_matrix() const
{
  const int nvr = fluid_dim();
  const int ns = solid_dim();
  std::vector<Triplet> trips;
  trips.reserve(2 * P.nonZeros());
  for (int j = 0; j < P.outerSize(); ++j)
    for (SparseMat::InnerIterator it(P, j); it; ++it)
    {
      trips.emplace_back(j, it.row(), it.value());
      trips.emplace_back(ns + j, nvr + it.row(), it.value());
    }
  SparseMat d(2 * ns, 2 * nvr);
  d.setFromTriplets(trips.begin(), trips.end());
  return d;
}

CouplingMatrix build_coupling(const FluidMesh & mesh, const SolidMesh & solid,
                              const CouplingMatrix * prev)
{
  const int ns = solid.n_nodes();
  CouplingMatrix c;
  c.host.resize(ns);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(ns) * 12);
  for (int j = 0; j < ns; ++j)
  {
    const Vec2 & x = solid.current(j);
    FluidMesh::Locate loc;
    bool located = false;
    // warm start: only when strictly inside the cached cell, where a fresh
    // tree walk would return the same cell (keeps rebuilds bitwise stable)
    if (prev && j < static_cast<int>(prev->host.size()))
    {
      const int cand = prev->host[j].cell;
      if (cand >= 0 && cand < mesh.n_cells())
      {
        const auto & cell = mesh.cells[cand];
        const double margin = 1e-9 * (cell.hi[0] - cell.lo[0]);
        if (x[0] > cell.lo[0] + margin && x[0] < cell.hi[0] - margin &&
            x[1] > cell.lo[1] + margin && x[1] < cell.hi[1] - margin)
        {
          Vec2 xi;
          if (mesh.cell_geometry(cand).invert(x, xi))
          {
            loc = {cand, Vec2{std::clamp(xi[0], -1.0, 1.0), std::clamp(xi[1], -1.0, 1.0)}};
            located = true;
          }
        }
      }
    }
    if (!located)
      loc = mesh.locate(x); // throws if the solid escaped the fluid domain
    c.host[j] = loc;

    const auto phi = q2_values(loc.xi);
    const auto & nodes = mesh.cells[loc.cell].vnode;
    std::map<int, double> column; // reduced row -> value, folded constraints
    for (int k = 0; k < 9; ++k)
    {
      if (phi[k] == 0.0)
        continue;
      for (const auto & [red, w]: mesh.v_expand[nodes[k]])
        column[red] += phi[k] * w;
    }
    for (const auto & [row, v]: column)
      trips.emplace_back(row, j, v);
  }

  c.P.resize(mesh.n_v_reduced, ns);
  c.P.setFromTriplets(trips.begin(), trips.end());
  return c;
}

Vector interpolate_to_solid(const CouplingMatrix & c, const Vector & u_reduced)
{
  const int nvr = c.fluid_dim();
  const int ns = c.solid_dim();
  check(u_reduced.size() == 2 * nvr, "coupling", "fluid vector dimension mismatch");
  Vector us(2 * ns);
  us.head(ns) = c.P.transpose() * u_reduced.head(nvr);
  us.tail(ns) = c.P.transpose() * u_reduced.tail(nvr);
  return us;
}

Vector sandwich_apply(const CouplingMatrix & c, const SparseMat & As,
                      const Vector & u_reduced)
{
  const int nvr = c.fluid_dim();
  const int ns = c.solid_dim();
  check(As.rows() == 2 * ns && As.cols() == 2 * ns, "coupling",
        "solid operator dimension mismatch");
  const Vector w = interpolate_to_solid(c, u_reduced);
  const Vector y = As * w;
  Vector z(2 * nvr);
  z.head(nvr) = c.P * y.head(ns);
  z.tail(nvr) = c.P * y.tail(ns);
  return z;
}

SparseMat sandwich_matrix(const CouplingMatrix & c, const SparseMat & As)
{
  const SparseMat d = c.d_matrix();
  SparseMat tmp = As * d;
  SparseMat result = d.transpose() * tmp;
  return result;
}

void dump_coupling(const CouplingMatrix & c, const std::string & path)
{
  write_matrix_market(c.P, path);
}

} // namespace fsi
