#include "sparse.hpp"

#include <cstdio>
#include <functional>
#include <thread>

namespace fsi
{

double SparseOperator::asymmetry() const
{
  double worst = 0.0;
  SparseMat diff = SparseMat(mat.transpose()) - mat;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMat::InnerIterator it(diff, k); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

SparseOperator from_triplets(int rows, int cols, const std::vector<Triplet> & trips,
                             bool symmetric_hint)
{
  SparseOperator op;
  op.mat.resize(rows, cols);
  op.mat.setFromTriplets(trips.begin(), trips.end());
  op.symmetric_hint = symmetric_hint;
  return op;
}

void write_matrix_market(const SparseMat & m, const std::string & path)
{
  std::FILE * f = std::fopen(path.c_str(), "w");
  check(f != nullptr, "io", "cannot open " + path);
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(f, "%ld %ld %ld\n", static_cast<long>(m.rows()),
               static_cast<long>(m.cols()), static_cast<long>(m.nonZeros()));
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMat::InnerIterator it(m, k); it; ++it)
      std::fprintf(f, "%ld %ld %.17g\n", static_cast<long>(it.row() + 1),
                   static_cast<long>(it.col() + 1), it.value());
  std::fclose(f);
}

int solve_cg(const SparseMat & A, const Vector & b, Vector & x, double rel_tol,
             int max_iter)
{
  const int n = static_cast<int>(A.rows());
  Vector inv_diag(n);
  for (int i = 0; i < n; ++i)
  {
    const double d = A.coeff(i, i);
    inv_diag[i] = d != 0.0 ? 1.0 / d : 1.0;
  }
  if (x.size() != n)
    x = Vector::Zero(n);
  Vector r = b - A * x;
  const double b_norm = b.norm();
  if (b_norm == 0.0)
  {
    x.setZero();
    return 0;
  }
  Vector z = inv_diag.asDiagonal() * r;
  Vector p = z;
  double rz = r.dot(z);
  for (int it = 0; it < max_iter; ++it)
  {
    if (r.norm() <= rel_tol * b_norm)
      return it;
    Vector Ap = A * p;
    const double alpha = rz / p.dot(Ap);
    x += alpha * p;
    r -= alpha * Ap;
    z = inv_diag.asDiagonal() * r;
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  return r.norm() <= rel_tol * b_norm ? max_iter : -1;
}

void chunked_for(int n, int num_chunks, const std::function<void(int, int, int)> & body)
{
  num_chunks = std::max(1, std::min(num_chunks, n));
  const int chunk = (n + num_chunks - 1) / std::max(1, num_chunks);
  if (num_chunks <= 1)
  {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(num_chunks);
  for (int c = 0; c < num_chunks; ++c)
  {
    const int begin = c * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end)
      break;
    workers.emplace_back([&body, begin, end, c] { body(begin, end, c); });
  }
  for (auto & w: workers)
    w.join();
}

} // namespace fsi
