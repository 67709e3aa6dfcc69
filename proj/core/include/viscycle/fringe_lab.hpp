#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "viscycle/inequalities.hpp"
#include "viscycle/interferometer.hpp"
#include "viscycle/robustness.hpp"

namespace viscycle {

/// Counts recorded while scanning the relative phase of two open paths.
/// Sampled scans hold integer counts; expected-count scans may be fractional.
class FringeScan {
 public:
  FringeScan(std::vector<double> phases, std::vector<double> counts,
             std::uint64_t shots_per_point);

  const std::vector<double>& phases() const { return phases_; }
  const std::vector<double>& counts() const { return counts_; }
  std::uint64_t shots_per_point() const { return shots_per_point_; }
  std::size_t size() const { return phases_.size(); }

 private:
  std::vector<double> phases_;
  std::vector<double> counts_;
  std::uint64_t shots_per_point_;
};

struct EstimatedVisibility {
  double v_hat;    // in [0, 1]
  double std_err;  // from the fit covariance
};

/// `points` equally spaced phases over [0, 2 pi).
std::vector<double> phase_grid(std::size_t points = 32);

/// I(phi) = 1 + v cos(phi - phase0). Throws DomainError unless 0 <= v <= 1.
std::vector<double> ideal_fringe(double v, double phase0, std::span<const double> phases);

/// Independent Poisson counts with mean shots * I_k / mean(I) at each phase.
/// Deterministic in the seed.
FringeScan sample_counts(std::span<const double> phases, std::span<const double> intensities,
                         std::uint64_t shots_per_point, std::uint64_t seed);

/// Expected counts without noise, shots * I_k / mean(I).
FringeScan expected_counts(std::span<const double> phases, std::span<const double> intensities,
                           std::uint64_t shots_per_point);

/// Least-squares fit of a + b cos(phi) + c sin(phi); v_hat = sqrt(b^2 + c^2)/a
/// clipped to [0, 1]. Needs at least 8 points covering a full period.
/// Throws EstimationError if the fitted offset a is not positive.
EstimatedVisibility estimate_visibility(const FringeScan& scan);

struct PairMeasurement {
  std::size_t i;  // zero-based path indices
  std::size_t j;
  double true_visibility;  // eta * V_ij
  double phase0;
  FringeScan scan;
  EstimatedVisibility estimate;
  double weight;  // converts V^2 to r_ij; 1 for balanced paths
};

struct ExperimentOptions {
  std::uint64_t shots_per_point = 100000;
  std::uint64_t seed = 0;
  std::size_t points = 32;
  /// Accept unbalanced amplitudes and reweight squared visibilities.
  bool allow_asymmetric = false;
  /// Parametric bootstrap resamples for a cross-check of s_std_err (0 = off).
  std::size_t bootstrap = 0;
  /// Standard errors above the classical bound required to certify.
  double certify_sigma = 5.0;
};

struct ExperimentReport {
  std::vector<PairMeasurement> pairs;  // cycle edges (1,2) ... (n-1,n), then (1,n)
  CycleReport cycle;                   // from the estimated visibilities
  double s_true;                       // noiseless-estimator limit, eta^2 S_n
  double s_std_err;                    // first-order propagation
  std::optional<double> bootstrap_std_err;
  double z_score;                      // margin / s_std_err
  bool violation_certified;            // z_score >= certify_sigma
  std::string noise_assumption;
};

/// Simulates one fringe scan per cycle edge, fits each visibility, and
/// assembles S_n with propagated uncertainty. Each edge draws from its own
/// substream of (seed, edge index). Throws PreconditionError for unbalanced
/// amplitudes unless allow_asymmetric is set.
ExperimentReport run_experiment(const InterferometerSpec& spec, const NoiseModel& noise,
                                const ExperimentOptions& options);

}  // namespace viscycle
