#include "viscycle/robustness.hpp"

#include <cmath>
#include <string>

#include "viscycle/errors.hpp"
#include "viscycle/inequalities.hpp"

namespace viscycle {

NoiseModel::NoiseModel(double eta) : eta_(eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw DomainError("efficiency eta = " + std::to_string(eta) + " outside (0, 1]");
  }
}

VisibilityMatrix apply_noise(const VisibilityMatrix& v, const NoiseModel& m) {
  return VisibilityMatrix(m.eta() * v.matrix());
}

VisibilityMatrix apply_noise(const VisibilityMatrix& v, const Eigen::MatrixXd& eta) {
  if (eta.rows() != v.matrix().rows() || eta.cols() != v.matrix().cols()) {
    throw SizeError("per-pair efficiency matrix does not match the visibility matrix");
  }
  for (Eigen::Index i = 0; i < eta.rows(); ++i) {
    for (Eigen::Index j = 0; j < eta.cols(); ++j) {
      if (i == j) continue;
      if (!(eta(i, j) > 0.0 && eta(i, j) <= 1.0) || eta(i, j) != eta(j, i)) {
        throw DomainError("per-pair efficiencies must be symmetric and in (0, 1]");
      }
    }
  }
  return VisibilityMatrix(v.matrix().cwiseProduct(eta));
}

double eta_min(std::size_t n) {
  return std::sqrt(classical_bound(n) / quantum_max(n));
}

NoisyViolation violation_after_noise(std::size_t n, double eta) {
  const NoiseModel model(eta);
  const double noisy = model.eta() * model.eta() * quantum_max(n);
  return {noisy, noisy > classical_bound(n) + kInequalityTolerance};
}

}  // namespace viscycle
