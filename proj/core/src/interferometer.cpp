#include "viscycle/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "viscycle/errors.hpp"

namespace viscycle {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_pair(const InterferometerSpec& spec, std::size_t i, std::size_t j) {
  if (i >= spec.size() || j >= spec.size()) {
    throw IndexError("path index out of range");
  }
  if (i == j) {
    throw IndexError("visibility needs two distinct paths");
  }
}

}  // namespace

InterferometerSpec::InterferometerSpec(std::vector<std::complex<double>> amplitudes,
                                       std::vector<PureQubit> detectors)
    : amplitudes_(std::move(amplitudes)), detectors_(std::move(detectors)) {
  if (amplitudes_.size() != detectors_.size()) {
    throw InvalidSpecError("need exactly one detector state per path amplitude");
  }
  if (detectors_.size() < 2) {
    throw SizeError("an interferometer needs at least 2 paths");
  }
  double total = 0.0;
  for (const auto& c : amplitudes_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidSpecError("non-finite path amplitude");
    }
    if (std::abs(c) == 0.0) {
      throw InvalidSpecError("path amplitudes must be nonzero");
    }
    total += std::norm(c);
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidSpecError("path amplitudes are not normalized (sum |c|^2 = " +
                           std::to_string(total) + ")");
  }
}

InterferometerSpec InterferometerSpec::symmetric(std::vector<PureQubit> detectors) {
  const double c = 1.0 / std::sqrt(static_cast<double>(detectors.size()));
  std::vector<std::complex<double>> amplitudes(detectors.size(), {c, 0.0});
  return InterferometerSpec(std::move(amplitudes), std::move(detectors));
}

InterferometerSpec InterferometerSpec::from_path_probabilities(
    const std::vector<double>& p, std::vector<PureQubit> detectors) {
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (!(total > 0.0) || std::any_of(p.begin(), p.end(), [](double x) { return !(x > 0.0); })) {
    throw InvalidSpecError("path probabilities must be positive");
  }
  std::vector<std::complex<double>> amplitudes;
  amplitudes.reserve(p.size());
  for (double x : p) amplitudes.emplace_back(std::sqrt(x / total), 0.0);
  return InterferometerSpec(std::move(amplitudes), std::move(detectors));
}

bool InterferometerSpec::is_symmetric() const {
  const double target = 1.0 / static_cast<double>(size());
  return std::all_of(amplitudes_.begin(), amplitudes_.end(), [&](const auto& c) {
    return std::abs(std::norm(c) - target) <= kNormTolerance;
  });
}

VisibilityMatrix::VisibilityMatrix(Eigen::MatrixXd v) : v_(std::move(v)) {
  if (v_.rows() != v_.cols() || v_.rows() < 2) {
    throw SizeError("visibility matrix must be square with n >= 2");
  }
  if (!v_.allFinite()) {
    throw DomainError("visibility matrix has non-finite entries");
  }
  for (Eigen::Index i = 0; i < v_.rows(); ++i) {
    for (Eigen::Index j = 0; j < v_.cols(); ++j) {
      if (v_(i, j) < -kNormTolerance || v_(i, j) > 1.0 + kNormTolerance) {
        throw DomainError("visibility outside [0, 1]");
      }
      if (std::abs(v_(i, j) - v_(j, i)) > kNormTolerance) {
        throw DomainError("visibility matrix is not symmetric");
      }
    }
  }
  v_ = (0.5 * (v_ + v_.transpose())).cwiseMax(0.0).cwiseMin(1.0);
  v_.diagonal().setZero();
}

DensityMatrix2 reduced_detector_state(const InterferometerSpec& spec) {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    rho += std::norm(spec.amplitudes()[i]) *
           DensityMatrix2::projector(spec.detectors()[i]).entries();
  }
  return DensityMatrix2(rho);
}

double visibility_weight(std::complex<double> ci, std::complex<double> cj) {
  const double pi = std::norm(ci);
  const double pj = std::norm(cj);
  if (pi == 0.0 || pj == 0.0) {
    throw InvalidSpecError("visibility weight undefined for a zero amplitude");
  }
  return (pi + pj) * (pi + pj) / (4.0 * pi * pj);
}

double pairwise_visibility(const InterferometerSpec& spec, std::size_t i, std::size_t j) {
  check_pair(spec, i, j);
  const double ai = std::abs(spec.amplitudes()[i]);
  const double aj = std::abs(spec.amplitudes()[j]);
  const double balance = 2.0 * ai * aj / (ai * ai + aj * aj);
  const double modulus = std::sqrt(overlap(spec.detectors()[i], spec.detectors()[j]));
  return std::clamp(balance * modulus, 0.0, 1.0);
}

VisibilityMatrix visibility_matrix(const InterferometerSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v(i, j) = v(j, i) = pairwise_visibility(spec, static_cast<std::size_t>(i),
                                              static_cast<std::size_t>(j));
    }
  }
  return VisibilityMatrix(std::move(v));
}

double symmetric_visibility_identity_check(const InterferometerSpec& spec) {
  if (!spec.is_symmetric()) {
    throw PreconditionError("visibility/overlap identity requires |c_i|^2 = 1/n");
  }
  const VisibilityMatrix v = visibility_matrix(spec);
  const OverlapMatrix r = overlap_matrix(spec.detectors());
  double worst = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.size(); ++j) {
      worst = std::max(worst, std::abs(v(i, j) * v(i, j) - r(i, j)));
    }
  }
  return worst;
}

double hs_coherence(const InterferometerSpec& spec) {
  if (!spec.is_symmetric()) {
    throw PreconditionError("Hilbert-Schmidt coherence relation requires |c_i|^2 = 1/n");
  }
  const VisibilityMatrix v = visibility_matrix(spec);
  const double n = static_cast<double>(spec.size());
  // Diagonal is zero, so the full squared norm is the off-diagonal sum.
  return v.matrix().squaredNorm() / (n * n);
}

}  // namespace viscycle
