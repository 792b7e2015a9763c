#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace ccpp {

/// Inverse-Hessian approximation for the quasi-Newton training direction.
class BfgsState {
 public:
  explicit BfgsState(std::size_t dimension);

  std::size_t dimension() const { return static_cast<std::size_t>(inverse_hessian_.rows()); }
  const Eigen::MatrixXd& inverse_hessian() const { return inverse_hessian_; }
  const Eigen::VectorXd& previous_gradient() const { return previous_gradient_; }
  const Eigen::VectorXd& previous_step() const { return previous_step_; }

  /// Rank-two update with step s and gradient change y. Skipped, returning
  /// false, when s'y <= 1e-10 |s| |y|.
  bool update(const Eigen::VectorXd& step, const Eigen::VectorXd& gradient_change);

  void remember(const Eigen::VectorXd& gradient, const Eigen::VectorXd& step);

  /// Back to the identity.
  void reset();

 private:
  Eigen::MatrixXd inverse_hessian_;
  Eigen::VectorXd previous_gradient_;
  Eigen::VectorXd previous_step_;
};

inline constexpr double kCurvatureGuard = 1e-10;

/// d = -H g
Eigen::VectorXd bfgs_direction(const BfgsState& state, const Eigen::VectorXd& gradient);

}  // namespace ccpp
