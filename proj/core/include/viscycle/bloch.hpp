#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace viscycle {

/// Tolerance for the unit-norm invariant of stored Bloch vectors.
inline constexpr double kUnitNormTolerance = 1e-12;
/// Inputs further than this from unit norm are rejected instead of renormalized.
inline constexpr double kUnitNormAcceptance = 1e-6;

/// Returns v / |v|. Throws InvalidStateError for a zero or non-finite vector.
Eigen::Vector3d normalize(const Eigen::Vector3d& v);

/// A pure qubit state stored as its unit Bloch vector.
///
/// Construction accepts vectors within 1e-6 of unit norm and renormalizes
/// them; anything further away is treated as a caller bug and rejected.
class PureQubit {
 public:
  explicit PureQubit(const Eigen::Vector3d& bloch);

  /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, polar angle theta and
  /// azimuth phi in radians.
  static PureQubit from_polar(double theta, double phi);

  /// alpha|0> + beta|1>. The pair must be normalized within 1e-6.
  static PureQubit from_amplitudes(std::complex<double> alpha,
                                   std::complex<double> beta);

  /// Linear polarization at `angle` radians from horizontal,
  /// cos(angle)|H> + sin(angle)|V>, with |H> = |0>.
  static PureQubit linear_polarization(double angle);

  static PureQubit plus_z() { return PureQubit(Eigen::Vector3d::UnitZ()); }
  static PureQubit minus_z() { return PureQubit(-Eigen::Vector3d::UnitZ()); }

  const Eigen::Vector3d& bloch() const { return bloch_; }

  /// The antipodal (orthogonal) state.
  PureQubit antipode() const { return PureQubit(-bloch_); }

  /// State-vector representative with a real, nonnegative |0> amplitude.
  Eigen::Vector2cd ket() const;

 private:
  Eigen::Vector3d bloch_;
};

/// 2x2 density matrix. Hermitian, unit trace, positive semidefinite
/// (each within 1e-12), checked on construction.
class DensityMatrix2 {
 public:
  explicit DensityMatrix2(const Eigen::Matrix2cd& entries);

  /// (I + r.sigma)/2 for a Bloch vector with |r| <= 1.
  static DensityMatrix2 from_bloch(const Eigen::Vector3d& r);
  static DensityMatrix2 maximally_mixed();
  static DensityMatrix2 projector(const PureQubit& d);

  const Eigen::Matrix2cd& entries() const { return entries_; }
  Eigen::Vector3d bloch() const;
  /// Eigenvalues in ascending order.
  Eigen::Vector2d eigenvalues() const;
  /// Max-abs entry difference.
  double distance(const DensityMatrix2& other) const;

 private:
  Eigen::Matrix2cd entries_;
};

/// Symmetric matrix of squared overlaps r_ij = |<d_i|d_j>|^2 with unit
/// diagonal and entries in [0, 1].
class OverlapMatrix {
 public:
  explicit OverlapMatrix(Eigen::MatrixXd r);

  /// Three-state matrix from (r12, r23, r13).
  static OverlapMatrix triple(double r12, double r23, double r13);

  std::size_t size() const { return static_cast<std::size_t>(r_.rows()); }
  /// Zero-based indices.
  double operator()(std::size_t i, std::size_t j) const {
    return r_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const { return r_; }

 private:
  Eigen::MatrixXd r_;
};

/// |<a|b>|^2 = (1 + a.b)/2.
double overlap(const PureQubit& a, const PureQubit& b);

/// Geodesic angle between Bloch vectors, arccos(a.b) in [0, pi].
double geodesic_angle(const PureQubit& a, const PureQubit& b);

/// Pairwise overlaps. Throws SizeError for fewer than two states.
OverlapMatrix overlap_matrix(std::span<const PureQubit> states);

/// (1/2)|d><d| + (1/2)|-d><-d|, which is I/2 for every pure d.
DensityMatrix2 equal_mixture_with_antipode(const PureQubit& d);

}  // namespace viscycle
