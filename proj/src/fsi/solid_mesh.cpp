#include "solid_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fsi
{

namespace
{

double tri_area(const Vec2 & a, const Vec2 & b, const Vec2 & c)
{
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

} // namespace

SolidMesh::SolidMesh(std::vector<Vec2> ref_coords, std::vector<std::array<int, 3>> triangles):
    ref_(std::move(ref_coords)),
    tri_(std::move(triangles))
{
  init_from_reference();
}

void SolidMesh::init_from_reference()
{
  cur_ = ref_;
  ref_area_.resize(tri_.size());
  for (size_t e = 0; e < tri_.size(); ++e)
  {
    ref_area_[e] = tri_area(ref_[tri_[e][0]], ref_[tri_[e][1]], ref_[tri_[e][2]]);
    check(ref_area_[e] > 0.0, "solid",
          "reference element " + std::to_string(e) + " has non-positive area");
  }
  tau.assign(tri_.size(), Mat2::Zero());

  // boundary nodes: endpoints of edges incident to exactly one triangle
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto & t: tri_)
    for (int k = 0; k < 3; ++k)
    {
      const int a = t[k], b = t[(k + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}] += 1;
    }
  std::vector<char> on_boundary(ref_.size(), 0);
  for (const auto & [edge, cnt]: edge_count)
    if (cnt == 1)
    {
      on_boundary[edge.first] = 1;
      on_boundary[edge.second] = 1;
    }
  boundary_.clear();
  for (int n = 0; n < n_nodes(); ++n)
    if (on_boundary[n])
      boundary_.push_back(n);
}

SolidMesh SolidMesh::disc(const Vec2 & center, double radius, int boundary_count,
                          double grading)
{
  check(boundary_count >= 6, "solid", "disc needs at least 6 boundary nodes");
  check(radius > 0.0, "solid", "disc radius must be positive");
  check(grading >= 1.0, "solid", "disc grading must be >= 1");
  const double s_boundary = 2.0 * M_PI * radius / boundary_count;

  // ring radii from the boundary inward, spacing growing by `grading`
  std::vector<double> radii = {radius};
  std::vector<double> spacings = {s_boundary};
  {
    double r = radius;
    double s = s_boundary;
    for (;;)
    {
      r -= s;
      s = std::min(s * grading, radius / 3.0);
      if (r < 0.7 * s)
        break;
      radii.push_back(r);
      spacings.push_back(s);
    }
  }
  const int rings = static_cast<int>(radii.size());

  std::vector<Vec2> pts;
  pts.push_back(center);
  std::vector<std::vector<int>> ring_ids(rings + 1);
  ring_ids[0] = {0};
  for (int k = 1; k <= rings; ++k)
  {
    const double rk = radii[rings - k];       // inner rings first
    const double sk = spacings[rings - k];
    int nk = (k == rings)
                 ? boundary_count
                 : std::max<int>(6, static_cast<int>(std::lround(2.0 * M_PI * rk / sk)));
    ring_ids[k].reserve(nk);
    for (int i = 0; i < nk; ++i)
    {
      const double th = 2.0 * M_PI * i / nk;
      ring_ids[k].push_back(static_cast<int>(pts.size()));
      pts.emplace_back(center[0] + rk * std::cos(th), center[1] + rk * std::sin(th));
    }
  }

  std::vector<std::array<int, 3>> tris;
  // fan from the center to ring 1
  {
    const auto & r1 = ring_ids[1];
    const int n1 = static_cast<int>(r1.size());
    for (int i = 0; i < n1; ++i)
      tris.push_back({0, r1[i], r1[(i + 1) % n1]});
  }
  // annulus bands, two-pointer walk by fractional angle
  for (int k = 1; k < rings; ++k)
  {
    const auto & inner = ring_ids[k];
    const auto & outer = ring_ids[k + 1];
    const int a = static_cast<int>(inner.size());
    const int b = static_cast<int>(outer.size());
    int i = 0, j = 0;
    while (i < a || j < b)
    {
      const bool advance_inner =
          (i < a) && (j >= b || (double(i + 1) / a) <= (double(j + 1) / b));
      if (advance_inner)
      {
        tris.push_back({inner[i % a], outer[j % b], inner[(i + 1) % a]});
        ++i;
      }
      else
      {
        tris.push_back({outer[j % b], outer[(j + 1) % b], inner[i % a]});
        ++j;
      }
    }
  }

  SolidMesh mesh(std::move(pts), std::move(tris));
  mesh.set_probe_node(0);
  return mesh;
}

SolidMesh SolidMesh::rectangle(const Vec2 & lo, double width, double height, int nx,
                               int ny)
{
  check(nx >= 1 && ny >= 1, "solid", "rectangle subdivisions must be >= 1");
  check(width > 0.0 && height > 0.0, "solid", "rectangle extents must be positive");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      pts.emplace_back(lo[0] + width * i / nx, lo[1] + height * j / ny);

  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<std::array<int, 3>> tris;
  tris.reserve(static_cast<size_t>(2 * nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
    {
      const int n00 = id(i, j), n10 = id(i + 1, j), n01 = id(i, j + 1),
                n11 = id(i + 1, j + 1);
      if ((i + j) % 2 == 0)
      {
        tris.push_back({n00, n10, n11});
        tris.push_back({n00, n11, n01});
      }
      else
      {
        tris.push_back({n00, n10, n01});
        tris.push_back({n10, n11, n01});
      }
    }

  SolidMesh mesh(std::move(pts), std::move(tris));
  mesh.set_probe_node(id(nx, ny));
  return mesh;
}

double SolidMesh::current_area(int e) const
{
  return tri_area(cur_[tri_[e][0]], cur_[tri_[e][1]], cur_[tri_[e][2]]);
}

double SolidMesh::total_current_area() const
{
  double s = 0.0;
  for (int e = 0; e < n_elements(); ++e)
    s += current_area(e);
  return s;
}

double SolidMesh::mean_current_area() const
{
  return n_elements() > 0 ? total_current_area() / n_elements() : 0.0;
}

SolidMesh SolidMesh::updated(const Vector & us, double dt) const
{
  check(us.size() == 2 * n_nodes(), "solid", "solid velocity dimension mismatch");
  SolidMesh next = *this;
  const int ns = n_nodes();
  for (int n = 0; n < ns; ++n)
  {
    next.cur_[n][0] = cur_[n][0] + dt * us[n];
    next.cur_[n][1] = cur_[n][1] + dt * us[ns + n];
  }
  next.validate_areas();
  return next;
}

void SolidMesh::set_current_coords(std::vector<Vec2> coords)
{
  check(coords.size() == ref_.size(), "solid", "current coordinate count mismatch");
  cur_ = std::move(coords);
  validate_areas();
}

void SolidMesh::validate_areas() const
{
  for (int e = 0; e < n_elements(); ++e)
    check(current_area(e) > 0.0, "solid",
          "element " + std::to_string(e) + " inverted (non-positive area)");
}

SolidMesh update_solid_coordinates(const SolidMesh & solid, const Vector & us, double dt)
{
  return solid.updated(us, dt);
}

} // namespace fsi
