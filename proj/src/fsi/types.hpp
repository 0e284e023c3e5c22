#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fsi
{

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vector = Eigen::VectorXd;
using SparseMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// Fatal simulation error carrying the pipeline stage it originated from.
struct SimError: std::runtime_error
{
  SimError(std::string stage_, const std::string & what_):
      std::runtime_error("[" + stage_ + "] " + what_),
      stage(std::move(stage_))
  {}

  std::string stage;
};

inline void check(bool ok, const std::string & stage, const std::string & msg)
{
  if (!ok)
    throw SimError(stage, msg);
}

} // namespace fsi
