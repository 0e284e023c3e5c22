#include "fsi/quadrature.hpp"
#include "fsi/shape.hpp"

#include <doctest.h>

#include <random>

using namespace fsi;

TEST_CASE("quadrature weights sum to the reference measure")
{
  CHECK(gauss_quad(3).total_weight() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(gauss_quad(5).total_weight() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(triangle_deg2().total_weight() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("gauss rules integrate polynomials exactly")
{
  std::vector<double> p, w;
  gauss_segment(3, p, w);
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i)
    s += w[i] * std::pow(p[i], 4);
  CHECK(s == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("Q2 basis: Kronecker property and partition of unity")
{
  const auto & nodes = q2_node_coords();
  for (int i = 0; i < 9; ++i)
  {
    const auto v = q2_values(nodes[i]);
    for (int j = 0; j < 9; ++j)
      CHECK(v[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
  }
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial)
  {
    const Vec2 xi{dist(rng), dist(rng)};
    const auto v = q2_values(xi);
    const auto g = q2_gradients(xi);
    double sum = 0.0;
    Vec2 gsum = Vec2::Zero();
    for (int j = 0; j < 9; ++j)
    {
      sum += v[j];
      gsum += g[j];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gsum.norm() < 1e-13);
  }
}

TEST_CASE("quadratic edge weights reproduce the coarse-edge interpolant")
{
  const auto w = quadratic_edge_weights(0.25);
  CHECK(w[0] == doctest::Approx(3.0 / 8.0));
  CHECK(w[1] == doctest::Approx(3.0 / 4.0));
  CHECK(w[2] == doctest::Approx(-1.0 / 8.0));
  auto q = [](double s) { return 3.0 * s * s - 2.0 * s + 0.5; };
  CHECK(w[0] * q(0.0) + w[1] * q(0.5) + w[2] * q(1.0) ==
        doctest::Approx(q(0.25)).epsilon(1e-14));
}

TEST_CASE("inverse bilinear map on a distorted quad matches a multi-start Newton oracle")
{
  const BilinearCell cell{{Vec2{0.1, -0.05}, Vec2{1.3, 0.2}, Vec2{-0.2, 1.1},
                           Vec2{1.0, 1.4}}};
  const double diam = (cell.corners[3] - cell.corners[0]).norm();
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-0.95, 0.95);
  for (int trial = 0; trial < 200; ++trial)
  {
    const Vec2 xi_ref{dist(rng), dist(rng)};
    const Vec2 x = cell.map(xi_ref);

    Vec2 xi;
    REQUIRE(cell.invert(x, xi));
    CHECK((cell.map(xi) - x).norm() <= 1e-12 * diam);
    CHECK((xi - xi_ref).norm() < 1e-10);

    // independent oracle: dense Newton iteration from the four corner starts
    Vec2 best = Vec2::Zero();
    double best_res = 1e300;
    for (const Vec2 start: {Vec2{-0.9, -0.9}, Vec2{0.9, -0.9}, Vec2{-0.9, 0.9},
                            Vec2{0.9, 0.9}})
    {
      Vec2 z = start;
      for (int it = 0; it < 50; ++it)
      {
        const Vec2 r = cell.map(z) - x;
        if (r.norm() < 1e-15 * diam)
          break;
        z -= cell.jacobian(z).inverse() * r;
      }
      const double res = (cell.map(z) - x).norm();
      if (res < best_res)
      {
        best_res = res;
        best = z;
      }
    }
    CHECK((xi - best).norm() < 1e-9);
  }
}

TEST_CASE("triangle geometry: P1 gradients are exact for affine fields")
{
  const Vec2 a{0.2, 0.1}, b{1.1, 0.3}, c{0.4, 0.9};
  const TriangleGeometry geo(a, b, c);
  CHECK(geo.area > 0.0);
  auto f = [](const Vec2 & p) { return 2.0 * p[0] + 3.0 * p[1] + 1.0; };
  Vec2 grad = f(a) * geo.grad[0] + f(b) * geo.grad[1] + f(c) * geo.grad[2];
  CHECK(grad[0] == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(grad[1] == doctest::Approx(3.0).epsilon(1e-13));
}
