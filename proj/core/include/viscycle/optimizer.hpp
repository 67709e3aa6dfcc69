#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "viscycle/bloch.hpp"

namespace viscycle {

/// n >= 3 pure detector states, in cycle label order.
class Configuration {
 public:
  explicit Configuration(std::vector<PureQubit> states);

  std::size_t size() const { return states_.size(); }
  const std::vector<PureQubit>& states() const { return states_; }
  const PureQubit& operator[](std::size_t i) const { return states_[i]; }

 private:
  std::vector<PureQubit> states_;
};

/// States on one great circle given by their angles along it. The first
/// angle is 0 and the sequence is strictly increasing.
class CoplanarConfig {
 public:
  explicit CoplanarConfig(std::vector<double> angles);

  /// Equal spacing pi/n, the maximizer of S_n.
  static CoplanarConfig uniform(std::size_t n);

  const std::vector<double>& angles() const { return angles_; }
  /// Embeds the circle as the xz great circle, angle 0 at +z.
  Configuration to_configuration() const;

 private:
  std::vector<double> angles_;
};

/// S_n of the overlaps of a configuration.
double cycle_value(const Configuration& c);

/// Uniformly random states on the Bloch sphere.
Configuration random_configuration(std::size_t n, std::mt19937_64& rng);

/// H(phi) = (n-2)/2 + [(n-1) cos(phi) - cos((n-1) phi)]/2, the value of the
/// cycle bound when all n-1 step angles equal phi. Domain [0, pi/(n-1)].
double coplanar_H(double phi, std::size_t n);
double coplanar_H_second_derivative(double phi, std::size_t n);

struct StationaryPoint {
  double phi;
  double second_derivative;
  bool is_maximum;
};

/// The stationary points {0, pi/n} of H on its domain, classified.
std::vector<StationaryPoint> h_stationary_points(std::size_t n);

/// g(x) = x cos(pi / x).
double boundary_g(double x);

struct BoundaryComparison {
  double h_interior;  // H(pi/n)
  double h_boundary;  // H(pi/(n-1))
  double delta_g;     // g(n) - g(n-1)
};

BoundaryComparison boundary_comparison(std::size_t n);

struct OptimizerOptions {
  std::size_t restarts = 50;
  std::uint64_t seed = 0;
  /// Restarts are independent; results do not depend on the thread count.
  std::size_t threads = 1;
  std::size_t max_iterations = 10000;
  double fd_step = 1e-6;
  double stall_tolerance = 1e-12;
  std::size_t stall_iterations = 5;
};

struct OptResult {
  Configuration best;
  double s_value;
  std::vector<double> canonical_angles;
  double canonical_residual;
  /// |s_value - quantum_max(n)| <= 1e-6.
  bool matched_closed_form;
  /// Iterations of the winning restart.
  std::size_t iterations;
  std::size_t best_restart;
  std::uint64_t seed;
};

/// Multi-start gradient ascent of S_n over pure-qubit configurations.
/// State 1 is pinned at +z and state 2 to the xz half-plane x >= 0, leaving
/// 2n-3 spherical-coordinate parameters. Deterministic in the seed.
OptResult maximize_cycle(std::size_t n, const OptimizerOptions& options);
OptResult maximize_cycle(std::size_t n, std::size_t restarts, std::uint64_t seed);

struct CanonicalForm {
  /// In-plane angles, first 0, of the chosen representative.
  std::vector<double> angles;
  /// Consecutive counter-clockwise steps angles[i+1] - angles[i].
  std::vector<double> steps;
  /// Largest distance of a Bloch vector from the fitted plane.
  double residual;
  /// Representative: labels read as (shift, shift +/- 1, ...) in direction
  /// `reversed`, plane orientation `mirrored`.
  std::size_t shift;
  bool reversed;
  bool mirrored;
};

/// Projects onto the best-fit great circle (smallest principal axis of the
/// Bloch vectors) and picks, over cyclic shifts, label reversal and plane
/// orientation, the step sequence with the least total counter-clockwise
/// travel, ties broken lexicographically.
CanonicalForm canonicalize(const Configuration& c);

struct ChainReport {
  std::vector<double> step_angles;  // theta_i between states i, i+1
  double total;                     // Theta = sum of step angles
  double closing;                   // theta_1n
  double s_value;
  /// theta_1n <= Theta; checked when Theta <= pi.
  std::optional<bool> triangle_holds;
  /// sum cos(theta_i) <= (n-1) cos(Theta/(n-1)); checked when every theta_i <= pi/2.
  std::optional<bool> jensen_holds;
  /// (n-2)/2 + [sum cos(theta_i) - cos(Theta)]/2, an upper bound on S_n when Theta <= pi.
  std::optional<double> step_bound;
  /// H(Theta/(n-1)) when both checks apply.
  std::optional<double> h_bound;
};

ChainReport verify_step_bound_chain(const Configuration& c);

}  // namespace viscycle
