#pragma once

#include "shape.hpp"
#include "types.hpp"

#include <array>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace fsi
{

class SolidMesh;

/// Boundary tags of the rectangular domain (plus an optional rectangular
/// hole whose faces model an internal rigid obstacle).
namespace tag
{
constexpr int left = 0;
constexpr int right = 1;
constexpr int bottom = 2;
constexpr int top = 3;
constexpr int hole = 4;
constexpr int count = 5;
} // namespace tag

struct DomainSpec
{
  double x0 = 0.0, y0 = 0.0;
  double Lx = 1.0, Ly = 1.0;
  int nx = 1, ny = 1;
  /// optional rectangular hole, must align with base-cell boundaries
  std::optional<std::array<double, 4>> hole; // {hx0, hy0, hx1, hy1}
};

/// Fixed Eulerian Q2/Q1 quadrilateral mesh. Cells are axis-aligned leaves of
/// a quadtree over a structured base grid; adjacent leaves differ by at most
/// one level (one-irregular rule) and the resulting hanging nodes carry
/// interpolation constraints that reproduce the coarse-edge polynomial.
///
/// Instances are immutable snapshots: refinement produces a new mesh.
class FluidMesh
{
public:
  struct Cell
  {
    int level;
    long ix, iy;            // integer cell coords at this level
    Vec2 lo, hi;            // axis-aligned bounding box (exact geometry)
    std::array<int, 9> vnode; // Q2 nodes, tensor order (idx = 3j+i)
    std::array<int, 4> pnode; // Q1 corners (idx = 2j+i)
  };

  struct BoundaryFace
  {
    int cell;
    int side; // 0=W 1=E 2=S 3=N
    int tag;
  };

  struct Locate
  {
    int cell;
    Vec2 xi;
  };

  using Weights = std::vector<std::pair<int, double>>; // (node, weight)

  DomainSpec domain;
  int max_level = 0;

  std::vector<Cell> cells;
  std::vector<Vec2> vnode_coord;
  std::vector<Vec2> pnode_coord;
  std::vector<int> pnode_vnode; // pressure node -> velocity node at same location

  // hanging-node constraint tables (closed over chains); empty entry = regular
  std::vector<Weights> v_constraint;
  std::vector<Weights> p_constraint;

  // reduced (unconstrained) numbering and per-node expansions into it
  std::vector<int> v_reduced; // -1 for constrained nodes
  std::vector<int> p_reduced;
  int n_v_reduced = 0;
  int n_p_reduced = 0;
  std::vector<Weights> v_expand; // node -> [(reduced id, weight)]
  std::vector<Weights> p_expand;

  std::vector<BoundaryFace> boundary_faces;

  int n_vnodes() const { return static_cast<int>(vnode_coord.size()); }
  int n_pnodes() const { return static_cast<int>(pnode_coord.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }

  BilinearCell cell_geometry(int c) const;
  double cell_area(int c) const;

  /// 3 velocity nodes of a cell face, ordered along the face.
  std::array<int, 3> face_vnodes(int cell, int side) const;

  /// Locate the host cell and local coordinates of a point.
  /// Throws SimError("locate", ...) for points outside the fluid domain.
  Locate locate(const Vec2 & x) const;

  /// Evaluate a Q2 nodal field (length n_vnodes) inside a cell.
  double eval_q2(const Vector & field, int cell, const Vec2 & xi) const;
  /// Evaluate a Q1 nodal field (length n_pnodes) inside a cell.
  double eval_q1(const Vector & field, int cell, const Vec2 & xi) const;

  /// Fill constrained entries of a full velocity-node field from its masters.
  void apply_v_constraints(Vector & field) const;
  void apply_p_constraints(Vector & field) const;

  /// Copy with permuted node numbering (testing hook for renumbering
  /// invariance). perm_v[i] is the new id of velocity node i.
  FluidMesh renumbered(const std::vector<int> & perm_v,
                       const std::vector<int> & perm_p) const;

private:
  friend FluidMesh build_refined(const DomainSpec & domain,
                                 const std::function<int(const Vec2 &, const Vec2 &)> & target_level);

  std::unordered_map<uint64_t, int> leaf_index_; // packed (level,ix,iy) -> cell
  std::vector<char> base_active_;                // 0 for hole (obstacle) base cells
  void finalize();
  int leaf_at(int level, long ix, long iy) const; // -1 if absent
  bool base_cell_active(long bi, long bj) const;
};

FluidMesh build_structured_fluid_mesh(const DomainSpec & domain);

/// Rebuild from the base grid with a per-region minimum refinement level.
/// `target_level(lo, hi)` is queried on candidate cell boxes; the
/// one-irregular rule is enforced by cascading refinement.
FluidMesh build_refined(const DomainSpec & domain,
                        const std::function<int(const Vec2 &, const Vec2 &)> & target_level);

/// Refine every cell whose bounding box lies within `halo` of a solid
/// boundary node to `levels`; identity when levels == 0.
FluidMesh refine_near_solid(const FluidMesh & mesh, const SolidMesh & solid, int levels,
                            double halo);

/// Target-level functor: `levels` within `halo` (Euclidean box distance) of
/// any of the given points, else 0. Composable with other targets.
std::function<int(const Vec2 &, const Vec2 &)> refine_target_near_points(
    const DomainSpec & domain, std::vector<Vec2> points, int levels, double halo);

} // namespace fsi
