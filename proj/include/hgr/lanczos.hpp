#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace hgr {

/// y = A x for a symmetric operator A. `y` arrives sized and must be overwritten.
using SymmetricOperator = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

struct LanczosOptions {
  std::size_t num_values = 1;
  bool largest = true;
  /// Work in the orthogonal complement of the all-ones vector.
  bool deflate_ones = false;
  /// Absolute residual target ||A y - theta y||.
  double tolerance = 1e-7;
  std::size_t max_basis = 64;
  std::size_t max_iterations = 20000;
  std::uint64_t seed = 1;
};

struct LanczosResult {
  std::vector<double> values;  // ordered from the requested end inwards
  std::vector<Eigen::VectorXd> vectors;
  std::vector<double> residuals;
  std::size_t iterations = 0;
  std::size_t restarts = 0;
};

/// Thick-restart Lanczos with full reorthogonalisation. Throws
/// ConvergenceFailure when the residual target is not met within
/// max_iterations operator applications.
LanczosResult lanczos_extremal(const SymmetricOperator& op, std::size_t n,
                               const LanczosOptions& options);

}  // namespace hgr
