#pragma once

#include "types.hpp"

#include <vector>

namespace fsi
{

/// Quadrature rule on a reference element (bi-unit quad or unit triangle).
struct QuadratureRule
{
  std::vector<Vec2> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
  double total_weight() const;
};

/// Tensor-product Gauss rule with n points per direction on [-1,1]^2.
QuadratureRule gauss_quad(int n);

/// Degree-2 three-point rule on the unit triangle (weights sum to 1/2).
QuadratureRule triangle_deg2();

/// Gauss rule with n points on the reference segment [-1,1].
void gauss_segment(int n, std::vector<double> & points, std::vector<double> & weights);

} // namespace fsi
