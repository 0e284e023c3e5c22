#include "shape.hpp"

namespace fsi
{

namespace
{

inline std::array<double, 3> lag3(double x)
{
  return {0.5 * x * (x - 1.0), 1.0 - x * x, 0.5 * x * (x + 1.0)};
}

inline std::array<double, 3> lag3_d(double x) { return {x - 0.5, -2.0 * x, x + 0.5}; }

inline std::array<double, 2> lag2(double x) { return {0.5 * (1.0 - x), 0.5 * (1.0 + x)}; }

} // namespace

std::array<double, 9> q2_values(const Vec2 & xi)
{
  const auto lx = lag3(xi[0]);
  const auto ly = lag3(xi[1]);
  std::array<double, 9> v;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      v[3 * j + i] = lx[i] * ly[j];
  return v;
}

std::array<Vec2, 9> q2_gradients(const Vec2 & xi)
{
  const auto lx = lag3(xi[0]);
  const auto ly = lag3(xi[1]);
  const auto dx = lag3_d(xi[0]);
  const auto dy = lag3_d(xi[1]);
  std::array<Vec2, 9> g;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i)
      g[3 * j + i] = Vec2{dx[i] * ly[j], lx[i] * dy[j]};
  return g;
}

std::array<double, 4> q1_values(const Vec2 & xi)
{
  const auto lx = lag2(xi[0]);
  const auto ly = lag2(xi[1]);
  return {lx[0] * ly[0], lx[1] * ly[0], lx[0] * ly[1], lx[1] * ly[1]};
}

std::array<Vec2, 4> q1_gradients(const Vec2 & xi)
{
  const auto lx = lag2(xi[0]);
  const auto ly = lag2(xi[1]);
  return {Vec2{-0.5 * ly[0], -0.5 * lx[0]}, Vec2{0.5 * ly[0], -0.5 * lx[1]},
          Vec2{-0.5 * ly[1], 0.5 * lx[0]}, Vec2{0.5 * ly[1], 0.5 * lx[1]}};
}

const std::array<Vec2, 9> & q2_node_coords()
{
  static const std::array<Vec2, 9> coords = [] {
    std::array<Vec2, 9> c;
    const double p[3] = {-1.0, 0.0, 1.0};
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i)
        c[3 * j + i] = Vec2{p[i], p[j]};
    return c;
  }();
  return coords;
}

std::array<double, 3> quadratic_edge_weights(double s)
{
  return {(1.0 - s) * (1.0 - 2.0 * s), 4.0 * s * (1.0 - s), s * (2.0 * s - 1.0)};
}

Vec2 BilinearCell::map(const Vec2 & xi) const
{
  const auto n = q1_values(xi);
  Vec2 x = Vec2::Zero();
  for (int k = 0; k < 4; ++k)
    x += n[k] * corners[k];
  return x;
}

Mat2 BilinearCell::jacobian(const Vec2 & xi) const
{
  const auto g = q1_gradients(xi);
  // J(i,j) = d x_i / d xi_j
  Mat2 J = Mat2::Zero();
  for (int k = 0; k < 4; ++k)
  {
    J.col(0) += corners[k] * g[k][0];
    J.col(1) += corners[k] * g[k][1];
  }
  return J;
}

bool BilinearCell::invert(const Vec2 & x, Vec2 & xi, double tol, int max_iter) const
{
  const double diam = (corners[3] - corners[0]).norm();
  xi = Vec2::Zero();
  for (int it = 0; it < max_iter; ++it)
  {
    const Vec2 r = map(xi) - x;
    if (r.norm() <= tol * std::max(1.0, diam))
      return true;
    const Mat2 J = jacobian(xi);
    xi -= J.inverse() * r;
  }
  return (map(xi) - x).norm() <= tol * std::max(1.0, diam);
}

TriangleGeometry::TriangleGeometry(const Vec2 & a, const Vec2 & b, const Vec2 & c)
{
  const Vec2 ab = b - a;
  const Vec2 ac = c - a;
  area = 0.5 * (ab[0] * ac[1] - ab[1] * ac[0]);
  const double inv2A = 1.0 / (2.0 * area);
  grad[0] = Vec2{b[1] - c[1], c[0] - b[0]} * inv2A;
  grad[1] = Vec2{c[1] - a[1], a[0] - c[0]} * inv2A;
  grad[2] = Vec2{a[1] - b[1], b[0] - a[0]} * inv2A;
}

} // namespace fsi
