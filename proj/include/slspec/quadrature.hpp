#pragma once

#include <Eigen/Dense>

namespace slspec {

/// Gauss-Legendre rule on [-1, 1] with the matrices a cellwise Nyström
/// scheme needs. With L_j the Lagrange basis on the nodes ξ_j:
///   left_integral(i, j)  = ∫_{-1}^{ξ_i} L_j(s) ds
///   right_integral(i, j) = ∫_{ξ_i}^{1}  L_j(s) ds
///   derivative(i, j)     = L_j'(ξ_i)
struct GaussLegendre {
  explicit GaussLegendre(int n);

  int size() const noexcept { return static_cast<int>(nodes.size()); }

  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Eigen::MatrixXd left_integral;
  Eigen::MatrixXd right_integral;
  Eigen::MatrixXd derivative;
};

/// Process-wide cached rule; n in [1, 32].
const GaussLegendre& gauss_legendre(int n);

}  // namespace slspec
