#pragma once

#include "types.hpp"

#include <string>
#include <vector>

namespace fsi
{

/// Sparse matrix with provenance metadata. Duplicate (row,col) triplet
/// contributions are summed on compression in insertion order, which keeps
/// assembly bitwise deterministic for a fixed element order.
struct SparseOperator
{
  SparseMat mat;
  bool symmetric_hint = false;

  int rows() const { return static_cast<int>(mat.rows()); }
  int cols() const { return static_cast<int>(mat.cols()); }

  /// max |A_ij - A_ji| over stored entries.
  double asymmetry() const;
};

SparseOperator from_triplets(int rows, int cols, const std::vector<Triplet> & trips,
                             bool symmetric_hint = false);

/// MatrixMarket coordinate-format dump (1-based indices).
void write_matrix_market(const SparseMat & m, const std::string & path);

/// Jacobi-preconditioned conjugate gradient for SPD systems.
/// Returns the iteration count, or -1 on non-convergence.
int solve_cg(const SparseMat & A, const Vector & b, Vector & x, double rel_tol,
             int max_iter);

/// Deterministic chunked element loop: `body(begin, end, chunk_index)` runs on
/// contiguous ranges; chunk results must be merged by the caller in chunk order.
void chunked_for(int n, int num_chunks, const std::function<void(int, int, int)> & body);

} // namespace fsi
