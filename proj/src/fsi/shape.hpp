#pragma once

#include "types.hpp"

#include <array>

namespace fsi
{

// Local node layout on the reference quad [-1,1]^2, tensor order (idx = 3j+i):
//
//   6--7--8        velocity (Q2, 9 nodes)      2-----3
//   3--4--5                                    |     |   pressure (Q1, idx = 2j+i)
//   0--1--2                                    0-----1

/// Biquadratic basis values at (xi, eta).
std::array<double, 9> q2_values(const Vec2 & xi);

/// Biquadratic basis gradients w.r.t. reference coordinates.
std::array<Vec2, 9> q2_gradients(const Vec2 & xi);

/// Bilinear basis values at (xi, eta).
std::array<double, 4> q1_values(const Vec2 & xi);

std::array<Vec2, 4> q1_gradients(const Vec2 & xi);

/// Reference coordinates of the 9 Q2 nodes.
const std::array<Vec2, 9> & q2_node_coords();

/// 1D quadratic Lagrange weights on nodes {0, 1/2, 1} evaluated at s in [0,1].
std::array<double, 3> quadratic_edge_weights(double s);

/// Bilinear geometry map from 4 corner coordinates (Q1 corner order).
struct BilinearCell
{
  std::array<Vec2, 4> corners;

  Vec2 map(const Vec2 & xi) const;
  Mat2 jacobian(const Vec2 & xi) const;

  /// Inverse of the geometry map via Newton iteration.
  /// Returns true on convergence; xi holds the result.
  bool invert(const Vec2 & x, Vec2 & xi, double tol = 1e-13, int max_iter = 20) const;
};

/// Gradients of P1 basis on a triangle (a,b,c) and the signed area.
struct TriangleGeometry
{
  double area; // signed
  std::array<Vec2, 3> grad;

  TriangleGeometry(const Vec2 & a, const Vec2 & b, const Vec2 & c);
};

} // namespace fsi
