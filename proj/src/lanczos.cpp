#include "hgr/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgr/errors.hpp"
#include "hgr/rng.hpp"

namespace hgr {

namespace {

void project_out_ones(Eigen::VectorXd& x) {
  if (x.size() > 0) x.array() -= x.mean();
}

// Orthogonalise x against the first `cols` columns of V twice; returns the
// remaining norm.
double orthogonalize(const Eigen::MatrixXd& v, std::size_t cols, Eigen::VectorXd& x, bool ones) {
  for (int pass = 0; pass < 2; ++pass) {
    if (ones) project_out_ones(x);
    if (cols > 0) {
      const auto basis = v.leftCols(static_cast<Eigen::Index>(cols));
      const Eigen::VectorXd coeff = basis.transpose() * x;
      x.noalias() -= basis * coeff;
    }
  }
  return x.norm();
}

}  // namespace

LanczosResult lanczos_extremal(const SymmetricOperator& op, std::size_t n,
                               const LanczosOptions& options) {
  const std::size_t effective_n = options.deflate_ones ? n - std::min<std::size_t>(n, 1) : n;
  if (options.num_values == 0 || options.num_values > effective_n) {
    throw InvalidParams("cannot request " + std::to_string(options.num_values) +
                        " eigenvalues of an operator of dimension " + std::to_string(effective_n));
  }
  const std::size_t max_basis = std::min(effective_n, std::max(options.max_basis, 2 * options.num_values + 8));
  const std::size_t keep = std::min(max_basis - 1, std::max(options.num_values + 4, max_basis / 2));
  const auto N = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd V(N, static_cast<Eigen::Index>(max_basis));
  Eigen::MatrixXd W(N, static_cast<Eigen::Index>(max_basis));
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(max_basis),
                                            static_cast<Eigen::Index>(max_basis));
  Rng rng(options.seed);
  auto random_vector = [&] {
    Eigen::VectorXd x(N);
    for (Eigen::Index i = 0; i < N; ++i) x(i) = rng.uniform01() - 0.5;
    return x;
  };

  LanczosResult result;
  std::size_t cols = 0;
  Eigen::VectorXd next = random_vector();
  Eigen::VectorXd y(N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;

  while (true) {
    double norm = orthogonalize(V, cols, next, options.deflate_ones);
    for (int attempt = 0; norm < 1e-10 && attempt < 10; ++attempt) {
      next = random_vector();
      norm = orthogonalize(V, cols, next, options.deflate_ones);
    }
    if (norm < 1e-10) break;  // the basis spans an invariant subspace
    const auto c = static_cast<Eigen::Index>(cols);
    V.col(c) = next / norm;
    y.setZero();
    op(V.col(c), y);
    if (options.deflate_ones) project_out_ones(y);
    W.col(c) = y;
    ++result.iterations;
    const Eigen::VectorXd h = V.leftCols(c + 1).transpose() * y;
    H.block(0, c, c + 1, 1) = h;
    H.block(c, 0, 1, c + 1) = h.transpose();
    ++cols;

    const auto m = static_cast<Eigen::Index>(cols);
    small.compute(H.topLeftCorner(m, m));
    // Order Ritz pairs so that the wanted end comes first.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = options.largest ? m - 1 - i : i;

    const std::size_t wanted = std::min<std::size_t>(options.num_values, cols);
    std::size_t first_unconverged = wanted;
    std::vector<Eigen::VectorXd> residual_vectors;
    for (std::size_t i = 0; i < wanted; ++i) {
      const Eigen::VectorXd yi = small.eigenvectors().col(order[i]);
      const double theta = small.eigenvalues()(order[i]);
      Eigen::VectorXd r = W.leftCols(m) * yi - theta * (V.leftCols(m) * yi);
      if (r.norm() > options.tolerance && first_unconverged == wanted) first_unconverged = i;
      residual_vectors.push_back(std::move(r));
    }
    const bool converged = wanted == options.num_values && first_unconverged == wanted;
    if (converged || cols == effective_n) {
      result.values.clear();
      result.vectors.clear();
      result.residuals.clear();
      for (std::size_t i = 0; i < options.num_values; ++i) {
        const Eigen::VectorXd yi = small.eigenvectors().col(order[i]);
        result.values.push_back(small.eigenvalues()(order[i]));
        result.vectors.push_back(V.leftCols(m) * yi);
        result.residuals.push_back(residual_vectors[i].norm());
      }
      if (!converged && *std::max_element(result.residuals.begin(), result.residuals.end()) > options.tolerance) {
        break;
      }
      return result;
    }
    if (result.iterations >= options.max_iterations) break;

    next = residual_vectors[first_unconverged];
    if (cols == max_basis) {
      const auto k = static_cast<Eigen::Index>(keep);
      Eigen::MatrixXd Y(m, k);
      Eigen::VectorXd theta(k);
      for (Eigen::Index i = 0; i < k; ++i) {
        Y.col(i) = small.eigenvectors().col(order[static_cast<std::size_t>(i)]);
        theta(i) = small.eigenvalues()(order[static_cast<std::size_t>(i)]);
      }
      V.leftCols(k) = V.leftCols(m) * Y;
      W.leftCols(k) = W.leftCols(m) * Y;
      H.setZero();
      H.topLeftCorner(k, k) = theta.asDiagonal();
      cols = keep;
      ++result.restarts;
    }
  }

  std::ostringstream msg;
  msg << "Lanczos did not reach residual " << options.tolerance << " after " << result.iterations
      << " iterations and " << result.restarts << " restarts";
  throw ConvergenceFailure(msg.str());
}

}  // namespace hgr
