#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "viscycle/bloch.hpp"

namespace viscycle {

/// An n-path interferometer: one complex amplitude and one pure which-path
/// detector state per path. Path kets are implicit (orthonormal); only the
/// amplitude moduli and detector states enter any observable. Amplitude
/// phases are kept but have no effect on visibilities.
class InterferometerSpec {
 public:
  /// Throws InvalidSpecError unless sum |c_i|^2 = 1 (within 1e-12), every
  /// |c_i| > 0, and there is one detector per amplitude; SizeError for n < 2.
  InterferometerSpec(std::vector<std::complex<double>> amplitudes,
                     std::vector<PureQubit> detectors);

  /// Balanced paths, |c_i|^2 = 1/n.
  static InterferometerSpec symmetric(std::vector<PureQubit> detectors);

  /// Amplitudes sqrt(p_i) from path probabilities; p is normalized first.
  static InterferometerSpec from_path_probabilities(const std::vector<double>& p,
                                                    std::vector<PureQubit> detectors);

  std::size_t size() const { return detectors_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
  const std::vector<PureQubit>& detectors() const { return detectors_; }

  /// |c_i|^2 = 1/n for all i, within 1e-12.
  bool is_symmetric() const;

 private:
  std::vector<std::complex<double>> amplitudes_;
  std::vector<PureQubit> detectors_;
};

/// Symmetric matrix of two-path visibilities, zero diagonal, entries in [0, 1].
class VisibilityMatrix {
 public:
  explicit VisibilityMatrix(Eigen::MatrixXd v);

  std::size_t size() const { return static_cast<std::size_t>(v_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return v_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const { return v_; }

 private:
  Eigen::MatrixXd v_;
};

/// rho_D = sum_i |c_i|^2 |d_i><d_i|.
DensityMatrix2 reduced_detector_state(const InterferometerSpec& spec);

/// Fringe visibility when only paths i and j (zero-based) are open:
///   V_ij = 2|c_i c_j| / (|c_i|^2 + |c_j|^2) * |<d_i|d_j>|.
double pairwise_visibility(const InterferometerSpec& spec, std::size_t i, std::size_t j);

VisibilityMatrix visibility_matrix(const InterferometerSpec& spec);

/// max over pairs of |V_ij^2 - r_ij| for a balanced interferometer.
/// Throws PreconditionError if the amplitudes are not balanced.
double symmetric_visibility_identity_check(const InterferometerSpec& spec);

/// Hilbert-Schmidt coherence of the detector state for balanced paths,
/// (1/n^2) sum_{i != j} V_ij^2. Throws PreconditionError otherwise.
double hs_coherence(const InterferometerSpec& spec);

/// (|c_i|^2 + |c_j|^2)^2 / (4 |c_i c_j|^2): the factor converting a squared
/// visibility into the overlap r_ij. Equal to 1 for balanced paths.
double visibility_weight(std::complex<double> ci, std::complex<double> cj);

}  // namespace viscycle
