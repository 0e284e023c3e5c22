#include "monolithic.hpp"

#include "log.hpp"

#include <Eigen/SparseLU>

#include <cstdio>

namespace fsi
{

namespace
{

void append_scaled(const SparseMat & m, double scale, std::vector<Triplet> & out)
{
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it)
      if (it.value() != 0.0)
        out.emplace_back(it.row(), it.col(), scale * it.value());
}

/// Assemble the constrained saddle matrix from velocity-block triplets and B,
/// with identity rows at Dirichlet dofs and the pressure pin.
SparseMat assemble_constrained(int nu, int np, const std::vector<Triplet> & vel,
                               const SparseMat & B, const std::vector<char> & mask,
                               int pin)
{
  std::vector<Triplet> trips;
  trips.reserve(vel.size() + 2 * B.nonZeros() + nu + 1);
  for (const auto & t: vel)
  {
    if (mask[t.row()] || mask[t.col()])
      continue;
    trips.emplace_back(t.row(), t.col(), t.value());
  }
  for (int k = 0; k < B.outerSize(); ++k)
    for (SparseMat::InnerIterator it(B, k); it; ++it)
    {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (!mask[r] && c != pin)
        trips.emplace_back(r, nu + c, it.value());
      if (!mask[r] && c != pin)
        trips.emplace_back(nu + c, r, it.value());
    }
  for (int d = 0; d < nu; ++d)
    if (mask[d])
      trips.emplace_back(d, d, 1.0);
  if (pin >= 0)
    trips.emplace_back(nu + pin, nu + pin, 1.0);
  SparseMat A(nu + np, nu + np);
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

/// Right-preconditioned GMRES with restarts. Returns iterations or -1.
int fgmres(const std::function<Vector(const Vector &)> & matvec,
           const std::function<Vector(const Vector &)> & precond, const Vector & b,
           Vector & x, double tol, int max_iters, std::vector<double> * history)
{
  const int n = static_cast<int>(b.size());
  const double b_norm = b.norm();
  if (b_norm == 0.0)
  {
    x = Vector::Zero(n);
    return 0;
  }
  if (x.size() != n)
    x = Vector::Zero(n);
  const int restart = std::min(200, max_iters);
  int total = 0;
  for (;;)
  {
    Vector r = b - matvec(x);
    double beta = r.norm();
    if (history)
      history->push_back(beta / b_norm);
    if (beta <= tol * b_norm)
      return total;
    if (total >= max_iters)
      return -1;

    std::vector<Vector> V, Z;
    V.push_back(r / beta);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(restart + 1, restart);
    Vector g = Vector::Zero(restart + 1);
    g[0] = beta;
    std::vector<double> cs(restart), sn(restart);
    int m = 0;
    for (int j = 0; j < restart && total < max_iters; ++j, ++total)
    {
      Z.push_back(precond(V[j]));
      Vector w = matvec(Z[j]);
      for (int i = 0; i <= j; ++i)
      {
        H(i, j) = w.dot(V[i]);
        w -= H(i, j) * V[i];
      }
      H(j + 1, j) = w.norm();
      if (H(j + 1, j) > 0.0)
        V.push_back(w / H(j + 1, j));
      else
        V.push_back(Vector::Zero(n));
      // Givens rotations
      for (int i = 0; i < j; ++i)
      {
        const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      const double denom = std::hypot(H(j, j), H(j + 1, j));
      cs[j] = H(j, j) / denom;
      sn[j] = H(j + 1, j) / denom;
      H(j, j) = denom;
      H(j + 1, j) = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      m = j + 1;
      if (history)
        history->push_back(std::abs(g[j + 1]) / b_norm);
      if (std::abs(g[j + 1]) <= tol * b_norm)
        break;
    }
    // back substitution
    Vector y = Vector::Zero(m);
    for (int i = m - 1; i >= 0; --i)
    {
      double s = g[i];
      for (int k = i + 1; k < m; ++k)
        s -= H(i, k) * y[k];
      y[i] = s / H(i, i);
    }
    for (int i = 0; i < m; ++i)
      x += y[i] * Z[i];
  }
}

} // namespace

MonolithicSystem build_monolithic(const MonolithicInputs & in)
{
  check(in.M && in.K && in.B, "monolithic", "missing fluid operators");
  check(in.dt > 0.0, "monolithic", "dt must be positive");
  MonolithicSystem sys;
  sys.nu = static_cast<int>(in.M->rows());
  sys.np = static_cast<int>(in.B->cols());
  check(in.K->rows() == sys.nu && in.B->rows() == sys.nu, "monolithic",
        "operator dimensions inconsistent");

  append_scaled(*in.M, 1.0 / in.dt, sys.vel_triplets);
  append_scaled(*in.K, 1.0, sys.vel_triplets);
  sys.fluid_vel_triplets = sys.vel_triplets;
  sys.B = *in.B;

  sys.rhs_u = Vector::Zero(sys.nu);
  sys.rhs_p = Vector::Zero(sys.np);
  if (in.f)
    sys.rhs_u += *in.f;
  if (in.u_star)
  {
    check(in.u_star->size() == sys.nu, "monolithic", "u* dimension mismatch");
    sys.rhs_u += (*in.M) * (*in.u_star) / in.dt;
  }

  if (in.Ms && in.Ks && in.coupling)
  {
    sys.has_solid = true;
    sys.coupling = in.coupling;
    check(2 * in.coupling->fluid_dim() == sys.nu, "monolithic",
          "stale coupling (fluid dimension mismatch)");
    sys.solid_block = (*in.Ms) / in.dt + (*in.Ks);
    if (in.explicit_sandwich)
    {
      const SparseMat sandwich = sandwich_matrix(*in.coupling, sys.solid_block);
      append_scaled(sandwich, 1.0, sys.vel_triplets);
    }
    const int ns = in.coupling->solid_dim();
    const int nvr = in.coupling->fluid_dim();
    Vector y = Vector::Zero(2 * ns);
    if (in.fs)
      y += *in.fs;
    if (in.us_n)
    {
      check(in.us_n->size() == 2 * ns, "monolithic", "u^s_n dimension mismatch");
      y += (*in.Ms) * (*in.us_n) / in.dt;
    }
    sys.rhs_u.head(nvr) += in.coupling->P * y.head(ns);
    sys.rhs_u.tail(nvr) += in.coupling->P * y.tail(ns);
  }
  return sys;
}

void apply_boundary_conditions(MonolithicSystem & sys, const DirichletValues & bc,
                               int pressure_pin)
{
  sys.dirichlet_mask.assign(sys.nu, 0);
  sys.dirichlet_value = Vector::Zero(sys.nu);
  for (size_t k = 0; k < bc.dof.size(); ++k)
  {
    const int d = bc.dof[k];
    check(d >= 0 && d < sys.nu, "monolithic", "Dirichlet dof out of range");
    sys.dirichlet_mask[d] = 1;
    sys.dirichlet_value[d] = bc.value[k];
  }
  sys.pressure_pin = pressure_pin;

  Vector b_u = sys.rhs_u;
  Vector b_p = sys.rhs_p;

  // column lift from the assembled velocity block
  for (const auto & t: sys.vel_triplets)
    if (!sys.dirichlet_mask[t.row()] && sys.dirichlet_mask[t.col()])
      b_u[t.row()] -= t.value() * sys.dirichlet_value[t.col()];

  // when the sandwich is matrix-free, its columns still need the lift
  if (sys.has_solid && sys.coupling)
  {
    bool assembled_sandwich = false;
    // explicit assembly leaves its entries in vel_triplets (more triplets
    // than the fluid-only list)
    assembled_sandwich = sys.vel_triplets.size() != sys.fluid_vel_triplets.size();
    if (!assembled_sandwich)
    {
      Vector g = Vector::Zero(sys.nu);
      for (int d = 0; d < sys.nu; ++d)
        if (sys.dirichlet_mask[d])
          g[d] = sys.dirichlet_value[d];
      const Vector sv = sandwich_apply(*sys.coupling, sys.solid_block, g);
      for (int r = 0; r < sys.nu; ++r)
        if (!sys.dirichlet_mask[r])
          b_u[r] -= sv[r];
    }
  }

  // continuity rows: lift of Dirichlet columns of B^T
  for (int k = 0; k < sys.B.outerSize(); ++k)
    for (SparseMat::InnerIterator it(sys.B, k); it; ++it)
      if (sys.dirichlet_mask[it.row()])
        b_p[it.col()] -= it.value() * sys.dirichlet_value[it.row()];

  for (int d = 0; d < sys.nu; ++d)
    if (sys.dirichlet_mask[d])
      b_u[d] = sys.dirichlet_value[d];
  if (pressure_pin >= 0)
    b_p[pressure_pin] = 0.0;

  sys.A = assemble_constrained(sys.nu, sys.np, sys.vel_triplets, sys.B,
                               sys.dirichlet_mask, pressure_pin);
  sys.b = Vector(sys.nu + sys.np);
  sys.b.head(sys.nu) = b_u;
  sys.b.tail(sys.np) = b_p;
  sys.constrained = true;
}

SolveReport solve(const MonolithicSystem & sys, Vector & u_reduced, Vector & p_reduced,
                  const SolverOptions & opts)
{
  check(sys.constrained, "solve", "boundary conditions not applied");
  const int n = sys.nu + sys.np;
  const double b_norm = std::max(sys.b.norm(), 1e-300);
  Vector x(n);
  SolveReport report;

  if (opts.kind == SolverKind::direct)
  {
    Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(sys.A);
    check(lu.info() == Eigen::Success, "solve", "sparse LU factorization failed");
    x = lu.solve(sys.b);
    check(lu.info() == Eigen::Success, "solve", "sparse LU back substitution failed");
    report.rel_residual = (sys.A * x - sys.b).norm() / b_norm;
  }
  else
  {
    // fluid-only saddle preconditioner; the solid sandwich is applied
    // matrix-free (staged products) inside the operator
    const SparseMat A0 = assemble_constrained(sys.nu, sys.np, sys.fluid_vel_triplets,
                                              sys.B, sys.dirichlet_mask,
                                              sys.pressure_pin);
    Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu0;
    lu0.compute(A0);
    check(lu0.info() == Eigen::Success, "solve", "preconditioner factorization failed");

    const bool sandwich_assembled =
        sys.vel_triplets.size() != sys.fluid_vel_triplets.size();

    auto matvec = [&, sandwich_assembled](const Vector & v) -> Vector {
      if (sandwich_assembled)
        return sys.A * v;
      Vector y = A0 * v;
      if (sys.has_solid)
      {
        Vector vu = v.head(sys.nu);
        for (int d = 0; d < sys.nu; ++d)
          if (sys.dirichlet_mask[d])
            vu[d] = 0.0;
        Vector s = sandwich_apply(*sys.coupling, sys.solid_block, vu);
        for (int d = 0; d < sys.nu; ++d)
          if (sys.dirichlet_mask[d])
            s[d] = 0.0;
        y.head(sys.nu) += s;
      }
      return y;
    };
    auto precond = [&](const Vector & v) -> Vector { return lu0.solve(v); };

    std::vector<double> history;
    const int its = fgmres(matvec, precond, sys.b, x, opts.krylov_tol, opts.max_iters,
                           opts.residual_history_csv.empty() ? nullptr : &history);
    if (!opts.residual_history_csv.empty())
    {
      std::FILE * f = std::fopen(opts.residual_history_csv.c_str(), "w");
      if (f)
      {
        std::fprintf(f, "iteration,rel_residual\n");
        for (size_t i = 0; i < history.size(); ++i)
          std::fprintf(f, "%zu,%.17g\n", i, history[i]);
        std::fclose(f);
      }
    }
    check(its >= 0, "solve", "Krylov solver did not converge in " +
                                 std::to_string(opts.max_iters) + " iterations");
    report.iterations = its;
    report.rel_residual = (sys.b - matvec(x)).norm() / b_norm;
  }

  check(report.rel_residual <= 1e-9, "solve",
        "linear solve residual " + std::to_string(report.rel_residual) +
            " exceeds tolerance");

  u_reduced = x.head(sys.nu);
  p_reduced = x.tail(sys.np);

  Vector div = sys.B.transpose() * u_reduced;
  if (sys.pressure_pin >= 0)
    div[sys.pressure_pin] = 0.0;
  report.divergence = div.norm();
  if (report.divergence > 1e-8 * std::max(1.0, u_reduced.norm()))
    log::warn("discrete divergence %.3e above target", report.divergence);
  return report;
}

} // namespace fsi
