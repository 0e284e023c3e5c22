#include "solid_state.hpp"

#include "shape.hpp"

namespace fsi
{

Mat2 update_stress(const Mat2 & tau_n, const Mat2 & grad_u, double mu_s, double dt)
{
  const double scale = 1.0 + tau_n.cwiseAbs().maxCoeff();
  check(std::abs(tau_n(0, 1) - tau_n(1, 0)) <= 1e-10 * scale, "solid_state",
        "asymmetric stress history");

  const Mat2 & G = grad_u;
  Mat2 t = mu_s * dt * (G + G.transpose() + dt * G * G.transpose()) + tau_n +
           dt * dt * G * tau_n * G.transpose() + dt * G * tau_n +
           dt * tau_n * G.transpose();
  const double off = 0.5 * (t(0, 1) + t(1, 0));
  t(0, 1) = off;
  t(1, 0) = off;
  return t;
}

std::vector<Mat2> element_velocity_gradient(const SolidMesh & solid, const Vector & us)
{
  const int ns = solid.n_nodes();
  check(us.size() == 2 * ns, "solid_state", "solid velocity dimension mismatch");
  std::vector<Mat2> grads(solid.n_elements());
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const TriangleGeometry geo(solid.current(t[0]), solid.current(t[1]),
                               solid.current(t[2]));
    check(geo.area > 0.0, "solid_state",
          "element " + std::to_string(e) + " degenerate in current configuration");
    Mat2 G = Mat2::Zero();
    for (int a = 0; a < 3; ++a)
    {
      const Vec2 ua{us[t[a]], us[ns + t[a]]};
      G += ua * geo.grad[a].transpose();
    }
    grads[e] = G;
  }
  return grads;
}

std::vector<Mat2> accumulate_deformation(const SolidMesh & solid)
{
  std::vector<Mat2> defo(solid.n_elements());
  for (int e = 0; e < solid.n_elements(); ++e)
  {
    const auto & t = solid.element(e);
    const TriangleGeometry ref(solid.reference(t[0]), solid.reference(t[1]),
                               solid.reference(t[2]));
    check(ref.area > 0.0, "solid_state",
          "element " + std::to_string(e) + " degenerate in reference configuration");
    Mat2 F = Mat2::Zero();
    for (int a = 0; a < 3; ++a)
      F += solid.current(t[a]) * ref.grad[a].transpose();
    defo[e] = F;
  }
  return defo;
}

SolidStressField build_stress_field(const SolidMesh & solid, const Vector & us_n)
{
  SolidStressField field;
  field.tau = solid.tau;
  field.grad_u = element_velocity_gradient(solid, us_n);
  return field;
}

} // namespace fsi
