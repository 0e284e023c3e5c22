#include "quadrature.hpp"

#include <cmath>

namespace fsi
{

double QuadratureRule::total_weight() const
{
  double s = 0.0;
  for (double w: weights)
    s += w;
  return s;
}

void gauss_segment(int n, std::vector<double> & points, std::vector<double> & weights)
{
  points.resize(n);
  weights.resize(n);
  // Newton on Legendre polynomials; nodes symmetric about 0.
  for (int i = 0; i < n; ++i)
  {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k)
    {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    points[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // ascending order for reproducibility
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (points[j] < points[i])
      {
        std::swap(points[i], points[j]);
        std::swap(weights[i], weights[j]);
      }
}

QuadratureRule gauss_quad(int n)
{
  std::vector<double> p, w;
  gauss_segment(n, p, w);
  QuadratureRule rule;
  rule.points.reserve(n * n);
  rule.weights.reserve(n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
    {
      rule.points.emplace_back(p[i], p[j]);
      rule.weights.push_back(w[i] * w[j]);
    }
  return rule;
}

QuadratureRule triangle_deg2()
{
  QuadratureRule rule;
  rule.points = {Vec2{1.0 / 6.0, 1.0 / 6.0}, Vec2{2.0 / 3.0, 1.0 / 6.0},
                 Vec2{1.0 / 6.0, 2.0 / 3.0}};
  rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  return rule;
}

} // namespace fsi
