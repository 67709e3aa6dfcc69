#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "viscycle/interferometer.hpp"

namespace viscycle {

/// Uniform visibility reduction V_exp = eta * V, 0 < eta <= 1.
class NoiseModel {
 public:
  explicit NoiseModel(double eta = 1.0);

  double eta() const { return eta_; }

 private:
  double eta_;
};

/// Labels every noise-dependent verdict in reports.
inline constexpr const char* kNoiseAssumption = "uniform visibility reduction (single eta)";

struct NoisyViolation {
  double noisy_s_max;  // eta^2 * quantum_max(n)
  bool violates;       // noisy_s_max > classical_bound(n) + 1e-12
};

/// Scales every visibility by eta.
VisibilityMatrix apply_noise(const VisibilityMatrix& v, const NoiseModel& m);

/// Per-pair reduction factors eta_ij (symmetric, each in (0, 1]). Thresholds
/// are only reported for the uniform model.
VisibilityMatrix apply_noise(const VisibilityMatrix& v, const Eigen::MatrixXd& eta);

/// sqrt((n - 2) / quantum_max(n)): the smallest uniform eta at which the
/// optimal qubit configuration still beats the classical bound.
double eta_min(std::size_t n);

NoisyViolation violation_after_noise(std::size_t n, double eta);

}  // namespace viscycle
