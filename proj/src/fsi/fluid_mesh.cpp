#include "fluid_mesh.hpp"

#include "solid_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <unordered_set>

namespace fsi
{

namespace
{

constexpr int max_refine_level = 12;

uint64_t pack_cell(int level, long ix, long iy)
{
  return (static_cast<uint64_t>(level) << 58) | (static_cast<uint64_t>(ix) << 29) |
         static_cast<uint64_t>(iy);
}

uint64_t pack_node(long gx, long gy)
{
  return (static_cast<uint64_t>(gx) << 32) | static_cast<uint64_t>(gy);
}

/// Euclidean distance from an axis-aligned box to a point.
double box_point_distance(const Vec2 & lo, const Vec2 & hi, const Vec2 & p)
{
  const double dx = std::max({lo[0] - p[0], 0.0, p[0] - hi[0]});
  const double dy = std::max({lo[1] - p[1], 0.0, p[1] - hi[1]});
  return std::hypot(dx, dy);
}

struct Builder
{
  const DomainSpec & dom;
  std::function<int(const Vec2 &, const Vec2 &)> target;
  std::vector<char> base_active;
  std::unordered_set<uint64_t> leaves;
  int max_level = 0;
  double hbx, hby;

  Builder(const DomainSpec & d, std::function<int(const Vec2 &, const Vec2 &)> t):
      dom(d),
      target(std::move(t))
  {
    check(dom.nx >= 1 && dom.ny >= 1, "mesh", "grid counts must be >= 1");
    check(dom.Lx > 0.0 && dom.Ly > 0.0, "mesh", "domain extents must be positive");
    hbx = dom.Lx / dom.nx;
    hby = dom.Ly / dom.ny;
    base_active.assign(static_cast<size_t>(dom.nx) * dom.ny, 1);
    if (dom.hole)
    {
      const auto & h = *dom.hole;
      const double ri0 = (h[0] - dom.x0) / hbx;
      const double rj0 = (h[1] - dom.y0) / hby;
      const double ri1 = (h[2] - dom.x0) / hbx;
      const double rj1 = (h[3] - dom.y0) / hby;
      const long i0 = std::lround(ri0), j0 = std::lround(rj0);
      const long i1 = std::lround(ri1), j1 = std::lround(rj1);
      check(std::abs(ri0 - i0) < 1e-9 && std::abs(rj0 - j0) < 1e-9 &&
                std::abs(ri1 - i1) < 1e-9 && std::abs(rj1 - j1) < 1e-9,
            "mesh", "hole rectangle must align with base cells");
      check(i0 >= 0 && j0 >= 0 && i1 <= dom.nx && j1 <= dom.ny && i0 < i1 && j0 < j1,
            "mesh", "hole rectangle outside domain");
      for (long j = j0; j < j1; ++j)
        for (long i = i0; i < i1; ++i)
          base_active[j * dom.nx + i] = 0;
    }
  }

  bool in_domain(int level, long ix, long iy) const
  {
    if (ix < 0 || iy < 0 || ix >= (static_cast<long>(dom.nx) << level) ||
        iy >= (static_cast<long>(dom.ny) << level))
      return false;
    return base_active[(iy >> level) * dom.nx + (ix >> level)] != 0;
  }

  bool is_leaf(int level, long ix, long iy) const
  {
    return leaves.count(pack_cell(level, ix, iy)) > 0;
  }

  struct Key
  {
    int level;
    long ix, iy;
  };

  std::optional<Key> covering(int level, long ix, long iy) const
  {
    int l = level;
    long cx = ix, cy = iy;
    while (l >= 0)
    {
      if (is_leaf(l, cx, cy))
        return Key{l, cx, cy};
      --l;
      cx >>= 1;
      cy >>= 1;
    }
    return std::nullopt;
  }

  void ensure_neighbor(int level, long nix, long niy)
  {
    if (!in_domain(level, nix, niy))
      return;
    for (;;)
    {
      const auto cover = covering(level, nix, niy);
      if (!cover || cover->level >= level)
        return;
      split(cover->level, cover->ix, cover->iy);
    }
  }

  void split(int level, long ix, long iy)
  {
    ensure_neighbor(level, ix - 1, iy);
    ensure_neighbor(level, ix + 1, iy);
    ensure_neighbor(level, ix, iy - 1);
    ensure_neighbor(level, ix, iy + 1);
    leaves.erase(pack_cell(level, ix, iy));
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < 2; ++a)
        leaves.insert(pack_cell(level + 1, 2 * ix + a, 2 * iy + b));
    max_level = std::max(max_level, level + 1);
  }

  Vec2 cell_lo(int level, long ix, long iy) const
  {
    return Vec2{dom.x0 + ix * (hbx / (1L << level)), dom.y0 + iy * (hby / (1L << level))};
  }

  Vec2 cell_hi(int level, long ix, long iy) const
  {
    return Vec2{dom.x0 + (ix + 1) * (hbx / (1L << level)),
                dom.y0 + (iy + 1) * (hby / (1L << level))};
  }

  void run()
  {
    for (long j = 0; j < dom.ny; ++j)
      for (long i = 0; i < dom.nx; ++i)
        if (base_active[j * dom.nx + i])
          leaves.insert(pack_cell(0, i, j));

    for (;;)
    {
      std::vector<Key> snapshot;
      snapshot.reserve(leaves.size());
      for (uint64_t key: leaves)
        snapshot.push_back(Key{static_cast<int>(key >> 58),
                               static_cast<long>((key >> 29) & ((1L << 29) - 1)),
                               static_cast<long>(key & ((1L << 29) - 1))});
      std::sort(snapshot.begin(), snapshot.end(), [](const Key & a, const Key & b) {
        return std::tie(a.level, a.iy, a.ix) < std::tie(b.level, b.iy, b.ix);
      });
      bool changed = false;
      for (const Key & k: snapshot)
      {
        if (!is_leaf(k.level, k.ix, k.iy))
          continue;
        const int want =
            std::min(max_refine_level, target(cell_lo(k.level, k.ix, k.iy),
                                              cell_hi(k.level, k.ix, k.iy)));
        if (k.level < want)
        {
          split(k.level, k.ix, k.iy);
          changed = true;
        }
      }
      if (!changed)
        break;
    }
  }
};

void close_constraints(std::vector<FluidMesh::Weights> & table)
{
  for (int pass = 0; pass < 16; ++pass)
  {
    bool changed = false;
    for (auto & cons: table)
    {
      if (cons.empty())
        continue;
      bool chained = false;
      for (const auto & [m, w]: cons)
        if (!table[m].empty())
          chained = true;
      if (!chained)
        continue;
      changed = true;
      std::map<int, double> merged;
      for (const auto & [m, w]: cons)
      {
        if (table[m].empty())
          merged[m] += w;
        else
          for (const auto & [mm, ww]: table[m])
            merged[mm] += w * ww;
      }
      cons.assign(merged.begin(), merged.end());
    }
    if (!changed)
      return;
  }
  throw SimError("mesh", "hanging-node constraint chains did not close");
}

void build_reduced(const std::vector<FluidMesh::Weights> & constraint,
                   std::vector<int> & reduced, int & n_reduced,
                   std::vector<FluidMesh::Weights> & expand)
{
  const int n = static_cast<int>(constraint.size());
  reduced.assign(n, -1);
  n_reduced = 0;
  for (int i = 0; i < n; ++i)
    if (constraint[i].empty())
      reduced[i] = n_reduced++;
  expand.assign(n, {});
  for (int i = 0; i < n; ++i)
  {
    if (constraint[i].empty())
      expand[i] = {{reduced[i], 1.0}};
    else
    {
      expand[i].reserve(constraint[i].size());
      for (const auto & [m, w]: constraint[i])
      {
        check(reduced[m] >= 0, "mesh", "constraint master is itself constrained");
        expand[i].emplace_back(reduced[m], w);
      }
    }
  }
}

} // namespace

BilinearCell FluidMesh::cell_geometry(int c) const
{
  const Cell & cell = cells[c];
  return BilinearCell{{cell.lo, Vec2{cell.hi[0], cell.lo[1]}, Vec2{cell.lo[0], cell.hi[1]},
                       cell.hi}};
}

double FluidMesh::cell_area(int c) const
{
  const Cell & cell = cells[c];
  return (cell.hi[0] - cell.lo[0]) * (cell.hi[1] - cell.lo[1]);
}

std::array<int, 3> FluidMesh::face_vnodes(int cell, int side) const
{
  const auto & v = cells[cell].vnode;
  switch (side)
  {
  case 0: return {v[0], v[3], v[6]};
  case 1: return {v[2], v[5], v[8]};
  case 2: return {v[0], v[1], v[2]};
  default: return {v[6], v[7], v[8]};
  }
}

int FluidMesh::leaf_at(int level, long ix, long iy) const
{
  const auto it = leaf_index_.find(pack_cell(level, ix, iy));
  return it == leaf_index_.end() ? -1 : it->second;
}

FluidMesh::Locate FluidMesh::locate(const Vec2 & x) const
{
  const double diam = std::hypot(domain.Lx, domain.Ly);
  const double tol = 1e-10 * diam;
  const double hbx = domain.Lx / domain.nx;
  const double hby = domain.Ly / domain.ny;
  if (x[0] < domain.x0 - tol || x[0] > domain.x0 + domain.Lx + tol ||
      x[1] < domain.y0 - tol || x[1] > domain.y0 + domain.Ly + tol)
    throw SimError("locate", "point (" + std::to_string(x[0]) + ", " +
                                 std::to_string(x[1]) + ") outside fluid domain");
  Vec2 q{std::clamp(x[0], domain.x0, domain.x0 + domain.Lx),
         std::clamp(x[1], domain.y0, domain.y0 + domain.Ly)};

  long bi = std::clamp(static_cast<long>(std::floor((q[0] - domain.x0) / hbx)), 0L,
                       static_cast<long>(domain.nx - 1));
  long bj = std::clamp(static_cast<long>(std::floor((q[1] - domain.y0) / hby)), 0L,
                       static_cast<long>(domain.ny - 1));

  // walk off an obstacle cell onto the nearest active neighbor within tolerance
  auto active = [&](long i, long j) {
    return i >= 0 && j >= 0 && i < domain.nx && j < domain.ny && base_cell_active(i, j);
  };
  if (!active(bi, bj))
  {
    bool found = false;
    for (long dj = -1; dj <= 1 && !found; ++dj)
      for (long di = -1; di <= 1 && !found; ++di)
      {
        const long ci = bi + di, cj = bj + dj;
        if (!active(ci, cj))
          continue;
        const Vec2 lo{domain.x0 + ci * hbx, domain.y0 + cj * hby};
        const Vec2 hi{lo[0] + hbx, lo[1] + hby};
        if (box_point_distance(lo, hi, q) <= tol)
        {
          bi = ci;
          bj = cj;
          q[0] = std::clamp(q[0], lo[0], hi[0]);
          q[1] = std::clamp(q[1], lo[1], hi[1]);
          found = true;
        }
      }
    if (!found)
      throw SimError("locate", "point (" + std::to_string(x[0]) + ", " +
                                   std::to_string(x[1]) +
                                   ") lies inside an obstacle region");
  }

  int level = 0;
  long ix = bi, iy = bj;
  int cell = leaf_at(level, ix, iy);
  while (cell < 0)
  {
    check(level <= max_level, "locate", "leaf walk failed (corrupt mesh)");
    const double hx = hbx / (1L << level);
    const double hy = hby / (1L << level);
    const double cx = domain.x0 + (ix + 0.5) * hx;
    const double cy = domain.y0 + (iy + 0.5) * hy;
    ++level;
    ix = 2 * ix + (q[0] >= cx ? 1 : 0);
    iy = 2 * iy + (q[1] >= cy ? 1 : 0);
    cell = leaf_at(level, ix, iy);
  }

  Vec2 xi;
  const bool ok = cell_geometry(cell).invert(q, xi);
  check(ok, "locate", "inverse bilinear map did not converge");
  xi[0] = std::clamp(xi[0], -1.0, 1.0);
  xi[1] = std::clamp(xi[1], -1.0, 1.0);
  return Locate{cell, xi};
}

bool FluidMesh::base_cell_active(long bi, long bj) const
{
  if (base_active_.empty())
    return true;
  return base_active_[bj * domain.nx + bi] != 0;
}

double FluidMesh::eval_q2(const Vector & field, int cell, const Vec2 & xi) const
{
  const auto v = q2_values(xi);
  const auto & nodes = cells[cell].vnode;
  double s = 0.0;
  for (int k = 0; k < 9; ++k)
    s += v[k] * field[nodes[k]];
  return s;
}

double FluidMesh::eval_q1(const Vector & field, int cell, const Vec2 & xi) const
{
  const auto v = q1_values(xi);
  const auto & nodes = cells[cell].pnode;
  double s = 0.0;
  for (int k = 0; k < 4; ++k)
    s += v[k] * field[nodes[k]];
  return s;
}

void FluidMesh::apply_v_constraints(Vector & field) const
{
  for (int n = 0; n < n_vnodes(); ++n)
    if (!v_constraint[n].empty())
    {
      double s = 0.0;
      for (const auto & [m, w]: v_constraint[n])
        s += w * field[m];
      field[n] = s;
    }
}

void FluidMesh::apply_p_constraints(Vector & field) const
{
  for (int n = 0; n < n_pnodes(); ++n)
    if (!p_constraint[n].empty())
    {
      double s = 0.0;
      for (const auto & [m, w]: p_constraint[n])
        s += w * field[m];
      field[n] = s;
    }
}

void FluidMesh::finalize()
{
  const int SH = max_level + 1;
  const double ux = (domain.Lx / domain.nx) / (1L << SH);
  const double uy = (domain.Ly / domain.ny) / (1L << SH);

  std::unordered_map<uint64_t, int> vmap, pmap;
  vnode_coord.clear();
  pnode_coord.clear();
  pnode_vnode.clear();

  auto vnode_id = [&](long gx, long gy) {
    const uint64_t key = pack_node(gx, gy);
    const auto it = vmap.find(key);
    if (it != vmap.end())
      return it->second;
    const int id = static_cast<int>(vnode_coord.size());
    vmap.emplace(key, id);
    vnode_coord.emplace_back(domain.x0 + gx * ux, domain.y0 + gy * uy);
    return id;
  };
  auto pnode_id = [&](long gx, long gy, int vid) {
    const uint64_t key = pack_node(gx, gy);
    const auto it = pmap.find(key);
    if (it != pmap.end())
      return it->second;
    const int id = static_cast<int>(pnode_coord.size());
    pmap.emplace(key, id);
    pnode_coord.emplace_back(domain.x0 + gx * ux, domain.y0 + gy * uy);
    pnode_vnode.push_back(vid);
    return id;
  };

  leaf_index_.clear();
  for (int c = 0; c < n_cells(); ++c)
  {
    Cell & cell = cells[c];
    leaf_index_.emplace(pack_cell(cell.level, cell.ix, cell.iy), c);
    const long W = 1L << (SH - cell.level);
    const long half = W >> 1;
    const long gx0 = cell.ix * W;
    const long gy0 = cell.iy * W;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        cell.vnode[3 * j + i] = vnode_id(gx0 + i * half, gy0 + j * half);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i)
        cell.pnode[2 * j + i] =
            pnode_id(gx0 + i * W, gy0 + j * W, cell.vnode[3 * (2 * j) + 2 * i]);
  }

  // hanging-node constraints and boundary faces
  v_constraint.assign(n_vnodes(), {});
  p_constraint.assign(n_pnodes(), {});
  boundary_faces.clear();

  // side -> neighbor offset
  const long dx[4] = {-1, 1, 0, 0};
  const long dy[4] = {0, 0, -1, 1};

  auto in_domain = [&](int level, long ix, long iy) {
    if (ix < 0 || iy < 0 || ix >= (static_cast<long>(domain.nx) << level) ||
        iy >= (static_cast<long>(domain.ny) << level))
      return false;
    return base_active_[(iy >> level) * domain.nx + (ix >> level)] != 0;
  };

  for (int c = 0; c < n_cells(); ++c)
  {
    const Cell & cell = cells[c];
    const long W = 1L << (SH - cell.level);
    const long half = W >> 1;
    const long gx0 = cell.ix * W;
    const long gy0 = cell.iy * W;

    for (int side = 0; side < 4; ++side)
    {
      const long nix = cell.ix + dx[side];
      const long niy = cell.iy + dy[side];
      if (!in_domain(cell.level, nix, niy))
      {
        int t;
        if (nix < 0)
          t = tag::left;
        else if (nix >= (static_cast<long>(domain.nx) << cell.level))
          t = tag::right;
        else if (niy < 0)
          t = tag::bottom;
        else if (niy >= (static_cast<long>(domain.ny) << cell.level))
          t = tag::top;
        else
          t = tag::hole;
        boundary_faces.push_back({c, side, t});
        continue;
      }
      if (leaf_at(cell.level, nix, niy) >= 0)
        continue; // conforming
      if (cell.level >= 1 && leaf_at(cell.level - 1, nix >> 1, niy >> 1) >= 0)
      {
        // this cell is the fine side of a split edge; build constraints
        // lattice endpoints of the coarse edge (A -> B) and its midpoint M
        long ax, ay, bx, by;
        bool lower_half;
        if (side == 0 || side == 1) // vertical edge
        {
          const long ex = (side == 0) ? gx0 : gx0 + W;
          ay = (cell.iy & ~1L) * W;
          ax = bx = ex;
          by = ay + 2 * W;
          lower_half = (cell.iy % 2 == 0);
        }
        else // horizontal edge
        {
          const long ey = (side == 2) ? gy0 : gy0 + W;
          ax = (cell.ix & ~1L) * W;
          ay = by = ey;
          bx = ax + 2 * W;
          lower_half = (cell.ix % 2 == 0);
        }
        const long mx = (ax + bx) / 2, my = (ay + by) / 2;
        const int vA = vmap.at(pack_node(ax, ay));
        const int vM = vmap.at(pack_node(mx, my));
        const int vB = vmap.at(pack_node(bx, by));

        // velocity: this cell's edge midpoint hangs at s = 1/4 or 3/4
        long hx_, hy_;
        if (side == 0 || side == 1)
        {
          hx_ = ax;
          hy_ = gy0 + half;
        }
        else
        {
          hx_ = gx0 + half;
          hy_ = ay;
        }
        const int hang = vmap.at(pack_node(hx_, hy_));
        const auto w = quadratic_edge_weights(lower_half ? 0.25 : 0.75);
        v_constraint[hang] = {{vA, w[0]}, {vM, w[1]}, {vB, w[2]}};

        // pressure: the vertex at M hangs with weights 1/2, 1/2
        const int pM = pmap.at(pack_node(mx, my));
        if (p_constraint[pM].empty())
        {
          const int pA = pmap.at(pack_node(ax, ay));
          const int pB = pmap.at(pack_node(bx, by));
          p_constraint[pM] = {{pA, 0.5}, {pB, 0.5}};
        }
      }
      // else: neighbor side is finer; the finer cells own the constraints
    }
  }

  close_constraints(v_constraint);
  close_constraints(p_constraint);
  build_reduced(v_constraint, v_reduced, n_v_reduced, v_expand);
  build_reduced(p_constraint, p_reduced, n_p_reduced, p_expand);
}

FluidMesh build_refined(const DomainSpec & domain,
                        const std::function<int(const Vec2 &, const Vec2 &)> & target_level)
{
  Builder b(domain, target_level);
  b.run();

  FluidMesh mesh;
  mesh.domain = domain;
  mesh.max_level = b.max_level;
  mesh.base_active_ = std::vector<char>(b.base_active.begin(), b.base_active.end());

  // canonical leaf order: base cells row-major, children depth-first SW SE NW NE
  std::function<void(int, long, long)> visit = [&](int level, long ix, long iy) {
    if (b.is_leaf(level, ix, iy))
    {
      FluidMesh::Cell cell;
      cell.level = level;
      cell.ix = ix;
      cell.iy = iy;
      cell.lo = b.cell_lo(level, ix, iy);
      cell.hi = b.cell_hi(level, ix, iy);
      mesh.cells.push_back(cell);
      return;
    }
    visit(level + 1, 2 * ix, 2 * iy);
    visit(level + 1, 2 * ix + 1, 2 * iy);
    visit(level + 1, 2 * ix, 2 * iy + 1);
    visit(level + 1, 2 * ix + 1, 2 * iy + 1);
  };
  for (long j = 0; j < domain.ny; ++j)
    for (long i = 0; i < domain.nx; ++i)
      if (b.base_active[j * domain.nx + i])
        visit(0, i, j);

  mesh.finalize();
  return mesh;
}

FluidMesh build_structured_fluid_mesh(const DomainSpec & domain)
{
  return build_refined(domain, [](const Vec2 &, const Vec2 &) { return 0; });
}

std::function<int(const Vec2 &, const Vec2 &)> refine_target_near_points(
    const DomainSpec & domain, std::vector<Vec2> points, int levels, double halo)
{
  struct Buckets
  {
    std::vector<Vec2> pts;
    std::vector<std::vector<int>> cells;
    double x0, y0, size;
    int gx, gy;
    double halo;
    int levels;
  };
  auto b = std::make_shared<Buckets>();
  b->pts = std::move(points);
  b->halo = halo;
  b->levels = levels;
  b->x0 = domain.x0;
  b->y0 = domain.y0;
  b->size = std::max(halo, std::max(domain.Lx / domain.nx, domain.Ly / domain.ny));
  b->gx = std::max(1, static_cast<int>(std::ceil(domain.Lx / b->size)));
  b->gy = std::max(1, static_cast<int>(std::ceil(domain.Ly / b->size)));
  b->cells.resize(static_cast<size_t>(b->gx) * b->gy);
  for (size_t k = 0; k < b->pts.size(); ++k)
  {
    const int i =
        std::clamp(static_cast<int>((b->pts[k][0] - b->x0) / b->size), 0, b->gx - 1);
    const int j =
        std::clamp(static_cast<int>((b->pts[k][1] - b->y0) / b->size), 0, b->gy - 1);
    b->cells[static_cast<size_t>(j) * b->gx + i].push_back(static_cast<int>(k));
  }

  return [b](const Vec2 & lo, const Vec2 & hi) -> int {
    const int i0 =
        std::clamp(static_cast<int>((lo[0] - b->halo - b->x0) / b->size), 0, b->gx - 1);
    const int i1 =
        std::clamp(static_cast<int>((hi[0] + b->halo - b->x0) / b->size), 0, b->gx - 1);
    const int j0 =
        std::clamp(static_cast<int>((lo[1] - b->halo - b->y0) / b->size), 0, b->gy - 1);
    const int j1 =
        std::clamp(static_cast<int>((hi[1] + b->halo - b->y0) / b->size), 0, b->gy - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i)
        for (int k: b->cells[static_cast<size_t>(j) * b->gx + i])
          if (box_point_distance(lo, hi, b->pts[k]) <= b->halo)
            return b->levels;
    return 0;
  };
}

FluidMesh refine_near_solid(const FluidMesh & mesh, const SolidMesh & solid, int levels,
                            double halo)
{
  check(levels >= 0, "mesh", "refinement levels must be >= 0");
  check(halo >= 0.0, "mesh", "halo must be >= 0");
  if (levels == 0)
    return mesh;

  const auto & bnodes = solid.boundary_nodes();
  std::vector<Vec2> pts;
  pts.reserve(bnodes.size());
  for (int n: bnodes)
    pts.push_back(solid.current(n));
  return build_refined(mesh.domain,
                       refine_target_near_points(mesh.domain, std::move(pts), levels, halo));
}

FluidMesh FluidMesh::renumbered(const std::vector<int> & perm_v,
                                const std::vector<int> & perm_p) const
{
  check(static_cast<int>(perm_v.size()) == n_vnodes() &&
            static_cast<int>(perm_p.size()) == n_pnodes(),
        "mesh", "permutation size mismatch");
  FluidMesh m = *this;
  for (int i = 0; i < n_vnodes(); ++i)
    m.vnode_coord[perm_v[i]] = vnode_coord[i];
  for (int i = 0; i < n_pnodes(); ++i)
  {
    m.pnode_coord[perm_p[i]] = pnode_coord[i];
    m.pnode_vnode[perm_p[i]] = perm_v[pnode_vnode[i]];
  }
  for (auto & cell: m.cells)
  {
    for (auto & v: cell.vnode)
      v = perm_v[v];
    for (auto & p: cell.pnode)
      p = perm_p[p];
  }
  for (int i = 0; i < n_vnodes(); ++i)
  {
    Weights w = v_constraint[i];
    for (auto & [mast, ww]: w)
      mast = perm_v[mast];
    std::sort(w.begin(), w.end());
    m.v_constraint[perm_v[i]] = w;
  }
  for (int i = 0; i < n_pnodes(); ++i)
  {
    Weights w = p_constraint[i];
    for (auto & [mast, ww]: w)
      mast = perm_p[mast];
    std::sort(w.begin(), w.end());
    m.p_constraint[perm_p[i]] = w;
  }
  build_reduced(m.v_constraint, m.v_reduced, m.n_v_reduced, m.v_expand);
  build_reduced(m.p_constraint, m.p_reduced, m.n_p_reduced, m.p_expand);
  return m;
}

} // namespace fsi
