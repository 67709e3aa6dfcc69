#include "viscycle/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viscycle/errors.hpp"

namespace viscycle {

namespace {

constexpr double kMatrixTolerance = 1e-12;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

Eigen::Vector3d normalize(const Eigen::Vector3d& v) {
  const double norm = v.norm();
  if (!std::isfinite(norm) || norm == 0.0) {
    throw InvalidStateError("cannot normalize a zero or non-finite Bloch vector");
  }
  return v / norm;
}

PureQubit::PureQubit(const Eigen::Vector3d& bloch) {
  const double norm = bloch.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kUnitNormAcceptance) {
    throw InvalidStateError("Bloch vector norm " + std::to_string(norm) +
                            " is not 1 (pure states only)");
  }
  bloch_ = bloch / norm;
}

PureQubit PureQubit::from_polar(double theta, double phi) {
  return PureQubit(Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                                   std::sin(theta) * std::sin(phi),
                                   std::cos(theta)));
}

PureQubit PureQubit::from_amplitudes(std::complex<double> alpha,
                                     std::complex<double> beta) {
  const double norm2 = std::norm(alpha) + std::norm(beta);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kUnitNormAcceptance) {
    throw InvalidStateError("state amplitudes are not normalized");
  }
  const std::complex<double> coherence = std::conj(alpha) * beta;
  return PureQubit(Eigen::Vector3d(2.0 * coherence.real(), 2.0 * coherence.imag(),
                                   std::norm(alpha) - std::norm(beta)));
}

PureQubit PureQubit::linear_polarization(double angle) {
  return PureQubit(Eigen::Vector3d(std::sin(2.0 * angle), 0.0, std::cos(2.0 * angle)));
}

Eigen::Vector2cd PureQubit::ket() const {
  const double theta = std::acos(clamp_unit(bloch_.z()));
  const double phi = std::atan2(bloch_.y(), bloch_.x());
  return {std::complex<double>(std::cos(theta / 2.0), 0.0),
          std::polar(std::sin(theta / 2.0), phi)};
}

DensityMatrix2::DensityMatrix2(const Eigen::Matrix2cd& entries) : entries_(entries) {
  if (!entries.allFinite()) {
    throw InvalidStateError("density matrix has non-finite entries");
  }
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kMatrixTolerance) {
    throw InvalidStateError("density matrix is not Hermitian");
  }
  const std::complex<double> trace = entries.trace();
  if (std::abs(trace - 1.0) > kMatrixTolerance) {
    throw InvalidStateError("density matrix trace is not 1");
  }
  if (eigenvalues().minCoeff() < -kMatrixTolerance) {
    throw InvalidStateError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix2 DensityMatrix2::from_bloch(const Eigen::Vector3d& r) {
  using C = std::complex<double>;
  Eigen::Matrix2cd m;
  m << C(1.0 + r.z(), 0.0), C(r.x(), -r.y()),
       C(r.x(), r.y()), C(1.0 - r.z(), 0.0);
  return DensityMatrix2(0.5 * m);
}

DensityMatrix2 DensityMatrix2::maximally_mixed() {
  return DensityMatrix2(0.5 * Eigen::Matrix2cd::Identity());
}

DensityMatrix2 DensityMatrix2::projector(const PureQubit& d) {
  return from_bloch(d.bloch());
}

Eigen::Vector3d DensityMatrix2::bloch() const {
  // rho = (I + r.sigma)/2  =>  r = (2 Re rho10, 2 Im rho10, rho00 - rho11)
  return {2.0 * entries_(1, 0).real(), 2.0 * entries_(1, 0).imag(),
          (entries_(0, 0) - entries_(1, 1)).real()};
}

Eigen::Vector2d DensityMatrix2::eigenvalues() const {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(
      entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityMatrix2::distance(const DensityMatrix2& other) const {
  return (entries_ - other.entries_).cwiseAbs().maxCoeff();
}

OverlapMatrix::OverlapMatrix(Eigen::MatrixXd r) : r_(std::move(r)) {
  if (r_.rows() != r_.cols() || r_.rows() < 1) {
    throw SizeError("overlap matrix must be square and nonempty");
  }
  if (!r_.allFinite()) {
    throw DomainError("overlap matrix has non-finite entries");
  }
  const Eigen::Index n = r_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(r_(i, i) - 1.0) > kMatrixTolerance) {
      throw DomainError("overlap matrix diagonal must be 1");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = r_(i, j);
      if (v < -kMatrixTolerance || v > 1.0 + kMatrixTolerance) {
        throw DomainError("overlap " + std::to_string(v) + " outside [0, 1]");
      }
      if (std::abs(v - r_(j, i)) > kMatrixTolerance) {
        throw DomainError("overlap matrix is not symmetric");
      }
    }
  }
  r_ = (0.5 * (r_ + r_.transpose())).cwiseMax(0.0).cwiseMin(1.0);
  r_.diagonal().setOnes();
}

OverlapMatrix OverlapMatrix::triple(double r12, double r23, double r13) {
  Eigen::Matrix3d m;
  m << 1.0, r12, r13,
       r12, 1.0, r23,
       r13, r23, 1.0;
  return OverlapMatrix(m);
}

double overlap(const PureQubit& a, const PureQubit& b) {
  return std::clamp(0.5 * (1.0 + a.bloch().dot(b.bloch())), 0.0, 1.0);
}

double geodesic_angle(const PureQubit& a, const PureQubit& b) {
  return std::acos(clamp_unit(a.bloch().dot(b.bloch())));
}

OverlapMatrix overlap_matrix(std::span<const PureQubit> states) {
  if (states.size() < 2) {
    throw SizeError("overlap matrix needs at least 2 states");
  }
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd r = Eigen::MatrixXd::Ones(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      r(i, j) = r(j, i) = overlap(states[static_cast<std::size_t>(i)],
                                  states[static_cast<std::size_t>(j)]);
    }
  }
  return OverlapMatrix(std::move(r));
}

DensityMatrix2 equal_mixture_with_antipode(const PureQubit& d) {
  const Eigen::Matrix2cd mix = 0.5 * DensityMatrix2::projector(d).entries() +
                               0.5 * DensityMatrix2::projector(d.antipode()).entries();
  return DensityMatrix2(mix);
}

}  // namespace viscycle
