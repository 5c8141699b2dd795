#pragma once

#include <Eigen/Dense>
#include <queue>
#include <sstream>
#include <vector>

#include "dsoc/errors.hpp"

namespace dsoc {

/// Undirected weighted communication topology. Immutable after construction;
/// construction rejects asymmetric weights, nonzero diagonals, negative
/// weights and disconnected graphs.
template <typename Scalar = double>
class CommGraph {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit CommGraph(Matrix weights) : weights_(std::move(weights)) {
    const Eigen::Index n = weights_.rows();
    if (n == 0 || weights_.cols() != n)
      throw ConfigError("graph.weights: must be a nonempty square matrix");
    const Scalar scale = weights_.cwiseAbs().maxCoeff();
    const Scalar tol = Scalar(1e-12) * std::max(scale, Scalar(1));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(weights_(i, i)) > Scalar(0))
        throw ConfigError("graph.weights: diagonal must be zero");
      for (Eigen::Index j = 0; j < n; ++j) {
        if (weights_(i, j) < Scalar(0))
          throw ConfigError("graph.weights: weights must be nonnegative");
        if (std::abs(weights_(i, j) - weights_(j, i)) > tol)
          throw ConfigError("graph.weights: matrix must be symmetric");
      }
    }
    if (!connected(weights_))
      throw ConfigError("graph: communication graph must be connected");
  }

  /// Build from an edge list with 0-based endpoints.
  static CommGraph from_edges(
      int n_agents, const std::vector<std::tuple<int, int, Scalar>>& edges) {
    if (n_agents <= 0) throw ConfigError("graph.n: must be positive");
    Matrix w = Matrix::Zero(n_agents, n_agents);
    for (const auto& [i, j, a] : edges) {
      if (i < 0 || j < 0 || i >= n_agents || j >= n_agents)
        throw ConfigError("graph.edges: endpoint out of range");
      if (i == j) throw ConfigError("graph.edges: self-loops not allowed");
      if (a < Scalar(0))
        throw ConfigError("graph.edges: weight must be nonnegative");
      w(i, j) = a;
      w(j, i) = a;
    }
    return CommGraph(std::move(w));
  }

  int size() const { return static_cast<int>(weights_.rows()); }
  const Matrix& weights() const { return weights_; }

  /// Breadth-first reachability on nonzero weights; a single node counts as
  /// connected.
  static bool connected(const Matrix& w) {
    const Eigen::Index n = w.rows();
    if (n <= 1) return true;
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::queue<Eigen::Index> q;
    q.push(0);
    seen[0] = 1;
    Eigen::Index count = 1;
    while (!q.empty()) {
      const Eigen::Index u = q.front();
      q.pop();
      for (Eigen::Index v = 0; v < n; ++v) {
        if (!seen[static_cast<size_t>(v)] && w(u, v) > Scalar(0)) {
          seen[static_cast<size_t>(v)] = 1;
          ++count;
          q.push(v);
        }
      }
    }
    return count == n;
  }

 private:
  Matrix weights_;
};

template <typename Scalar>
bool is_connected(const CommGraph<Scalar>& g) {
  return CommGraph<Scalar>::connected(g.weights());
}

/// L = D - A; symmetric positive semidefinite with zero row sums.
template <typename Scalar>
typename CommGraph<Scalar>::Matrix laplacian(const CommGraph<Scalar>& g) {
  const auto& w = g.weights();
  typename CommGraph<Scalar>::Matrix lap = -w;
  lap.diagonal() = w.rowwise().sum();
  return lap;
}

/// Eigenvalues of the Laplacian in ascending order.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> spectrum(const CommGraph<Scalar>& g) {
  using Matrix = typename CommGraph<Scalar>::Matrix;
  const Matrix lap = laplacian(g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(lap, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    std::ostringstream oss;
    oss << "laplacian eigensolver did not converge (n=" << g.size()
        << ", max weight " << g.weights().maxCoeff() << ")";
    throw NumericalError(oss.str());
  }
  return es.eigenvalues();
}

template <typename Scalar>
Scalar algebraic_connectivity(const CommGraph<Scalar>& g) {
  return g.size() > 1 ? spectrum(g)(1) : Scalar(0);
}

using CommGraphd = CommGraph<double>;

}  // namespace dsoc
