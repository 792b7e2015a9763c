#include "ccpp/bfgs.hpp"

#include "ccpp/error.hpp"

namespace ccpp {

BfgsState::BfgsState(std::size_t dimension)
    : inverse_hessian_(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dimension),
                                                 static_cast<Eigen::Index>(dimension))),
      previous_gradient_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension))),
      previous_step_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension))) {}

bool BfgsState::update(const Eigen::VectorXd& s, const Eigen::VectorXd& y) {
  if (s.size() != inverse_hessian_.rows() || y.size() != inverse_hessian_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "BFGS update vectors do not match the state");
  }
  const double sy = s.dot(y);
  if (!(sy > kCurvatureGuard * s.norm() * y.norm())) return false;

  // H+ = (I - rho s y') H (I - rho y s') + rho s s', expanded.
  const double rho = 1.0 / sy;
  const Eigen::VectorXd hy = inverse_hessian_ * y;
  const double yhy = y.dot(hy);
  inverse_hessian_ += (rho * rho * yhy + rho) * (s * s.transpose()) -
                      rho * (hy * s.transpose() + s * hy.transpose());
  // Remove rounding asymmetry.
  inverse_hessian_ = 0.5 * (inverse_hessian_ + inverse_hessian_.transpose()).eval();
  return true;
}

void BfgsState::remember(const Eigen::VectorXd& gradient, const Eigen::VectorXd& step) {
  previous_gradient_ = gradient;
  previous_step_ = step;
}

void BfgsState::reset() { inverse_hessian_.setIdentity(); }

Eigen::VectorXd bfgs_direction(const BfgsState& state, const Eigen::VectorXd& gradient) {
  if (static_cast<std::size_t>(gradient.size()) != state.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "gradient length does not match the BFGS state");
  }
  return -(state.inverse_hessian() * gradient);
}

}  // namespace ccpp
