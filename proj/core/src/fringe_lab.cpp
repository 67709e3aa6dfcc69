#include "viscycle/fringe_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "viscycle/errors.hpp"

namespace viscycle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMinScanPoints = 8;

struct FringeFit {
  Eigen::Vector3d coef;  // a, b, c
  Eigen::Matrix3d covariance;
};

Eigen::MatrixXd design_matrix(const std::vector<double>& phases) {
  const auto rows = static_cast<Eigen::Index>(phases.size());
  Eigen::MatrixXd x(rows, 3);
  for (Eigen::Index k = 0; k < rows; ++k) {
    const double phi = phases[static_cast<std::size_t>(k)];
    x(k, 0) = 1.0;
    x(k, 1) = std::cos(phi);
    x(k, 2) = std::sin(phi);
  }
  return x;
}

// Ordinary least squares for the shape, then one reweighting pass with
// Poisson variances taken from the first fit.
FringeFit fit_fringe(const FringeScan& scan) {
  const Eigen::MatrixXd x = design_matrix(scan.phases());
  const Eigen::Map<const Eigen::VectorXd> y(scan.counts().data(),
                                            static_cast<Eigen::Index>(scan.size()));

  const Eigen::Vector3d ols = x.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd mean = x * ols;
  const Eigen::VectorXd w = mean.cwiseMax(1.0).cwiseInverse();

  const Eigen::Matrix3d normal = x.transpose() * w.asDiagonal() * x;
  const Eigen::LDLT<Eigen::Matrix3d> ldlt(normal);
  if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0)) {
    throw EstimationError("fringe fit is singular (phase grid too sparse)");
  }
  FringeFit fit;
  fit.coef = ldlt.solve(x.transpose() * w.asDiagonal() * y);
  fit.covariance = ldlt.solve(Eigen::Matrix3d::Identity());
  return fit;
}

EstimatedVisibility visibility_from_fit(const FringeFit& fit) {
  const double a = fit.coef(0);
  const double b = fit.coef(1);
  const double c = fit.coef(2);
  if (!(a > 0.0)) {
    throw EstimationError("fitted fringe offset is not positive");
  }
  const double amp = std::hypot(b, c);
  const double v = amp / a;
  // Delta method on v = sqrt(b^2 + c^2)/a.
  double var = 0.0;
  if (amp > 0.0) {
    const Eigen::Vector3d grad(-v / a, b / (a * amp), c / (a * amp));
    var = grad.dot(fit.covariance * grad);
  } else {
    // Gradient undefined at zero amplitude; use the isotropic spread of (b, c).
    var = (fit.covariance(1, 1) + fit.covariance(2, 2)) / (2.0 * a * a);
  }
  return {std::clamp(v, 0.0, 1.0), std::sqrt(std::max(var, 0.0))};
}

void check_grid(const FringeScan& scan) {
  const auto [lo, hi] = std::minmax_element(scan.phases().begin(), scan.phases().end());
  const double n = static_cast<double>(scan.size());
  const double span = (*hi - *lo) * n / (n - 1.0);
  if (span < kTwoPi - 1e-9) {
    throw DomainError("fringe scan must cover a full 2 pi period");
  }
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

std::vector<double> normalized_means(std::span<const double> intensities,
                                     std::uint64_t shots_per_point) {
  if (shots_per_point < 1) {
    throw DomainError("shots_per_point must be at least 1");
  }
  if (intensities.empty()) {
    throw SizeError("no intensities to sample");
  }
  for (double x : intensities) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("intensities must be finite and >= 0");
  }
  const double mean = std::accumulate(intensities.begin(), intensities.end(), 0.0) /
                      static_cast<double>(intensities.size());
  if (!(mean > 0.0)) {
    throw DomainError("fringe intensity is identically zero");
  }
  std::vector<double> mu(intensities.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    mu[k] = static_cast<double>(shots_per_point) * intensities[k] / mean;
  }
  return mu;
}

double draw_poisson(std::mt19937_64& rng, double mean) {
  if (mean <= 0.0) return 0.0;
  std::poisson_distribution<long long> dist(mean);
  return static_cast<double>(dist(rng));
}

}  // namespace

FringeScan::FringeScan(std::vector<double> phases, std::vector<double> counts,
                       std::uint64_t shots_per_point)
    : phases_(std::move(phases)), counts_(std::move(counts)), shots_per_point_(shots_per_point) {
  if (phases_.size() != counts_.size()) {
    throw SizeError("phases and counts differ in length");
  }
  if (phases_.size() < kMinScanPoints) {
    throw SizeError("a fringe scan needs at least 8 phase points");
  }
  if (shots_per_point_ < 1) {
    throw DomainError("shots_per_point must be at least 1");
  }
  for (std::size_t k = 0; k < phases_.size(); ++k) {
    if (!std::isfinite(phases_[k]) || !std::isfinite(counts_[k]) || counts_[k] < 0.0) {
      throw DomainError("fringe scan entries must be finite with counts >= 0");
    }
  }
}

std::vector<double> phase_grid(std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(points);
  }
  return grid;
}

std::vector<double> ideal_fringe(double v, double phase0, std::span<const double> phases) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError("visibility must lie in [0, 1]");
  }
  std::vector<double> out(phases.size());
  std::transform(phases.begin(), phases.end(), out.begin(),
                 [&](double phi) { return 1.0 + v * std::cos(phi - phase0); });
  return out;
}

FringeScan sample_counts(std::span<const double> phases, std::span<const double> intensities,
                         std::uint64_t shots_per_point, std::uint64_t seed) {
  if (phases.size() != intensities.size()) {
    throw SizeError("phases and intensities differ in length");
  }
  const std::vector<double> mu = normalized_means(intensities, shots_per_point);
  std::mt19937_64 rng(seed);
  std::vector<double> counts(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) counts[k] = draw_poisson(rng, mu[k]);
  return FringeScan({phases.begin(), phases.end()}, std::move(counts), shots_per_point);
}

FringeScan expected_counts(std::span<const double> phases, std::span<const double> intensities,
                           std::uint64_t shots_per_point) {
  if (phases.size() != intensities.size()) {
    throw SizeError("phases and intensities differ in length");
  }
  return FringeScan({phases.begin(), phases.end()},
                    normalized_means(intensities, shots_per_point), shots_per_point);
}

EstimatedVisibility estimate_visibility(const FringeScan& scan) {
  check_grid(scan);
  return visibility_from_fit(fit_fringe(scan));
}

ExperimentReport run_experiment(const InterferometerSpec& spec, const NoiseModel& noise,
                                const ExperimentOptions& options) {
  const std::size_t n = spec.size();
  if (n < 3) {
    throw SizeError("a cycle experiment needs at least 3 paths");
  }
  const bool symmetric = spec.is_symmetric();
  if (!symmetric && !options.allow_asymmetric) {
    throw PreconditionError(
        "unbalanced path amplitudes: V^2 = r only holds for |c_i|^2 = 1/n "
        "(enable asymmetric reweighting to proceed)");
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);

  const std::vector<double> grid = phase_grid(options.points);
  ExperimentReport report;
  report.pairs.reserve(n);
  std::vector<FringeFit> fits;
  fits.reserve(n);

  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    auto rng = substream(options.seed, e);
    std::uniform_real_distribution<double> phase_dist(0.0, kTwoPi);
    const double phase0 = phase_dist(rng);
    const double v_true = noise.eta() * pairwise_visibility(spec, i, j);
    const std::vector<double> intensity = ideal_fringe(v_true, phase0, grid);
    FringeScan scan = sample_counts(grid, intensity, options.shots_per_point, rng());
    check_grid(scan);
    FringeFit fit = fit_fringe(scan);
    const EstimatedVisibility est = visibility_from_fit(fit);
    const double w =
        symmetric ? 1.0 : visibility_weight(spec.amplitudes()[i], spec.amplitudes()[j]);
    report.pairs.push_back({i, j, v_true, phase0, std::move(scan), est, w});
    fits.push_back(std::move(fit));
  }

  const auto assemble = [n](const std::vector<double>& v_hat, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t e = 0; e + 1 < n; ++e) s += w[e] * v_hat[e] * v_hat[e];
    return s - w[n - 1] * v_hat[n - 1] * v_hat[n - 1];
  };

  std::vector<double> v_hat(n);
  std::vector<double> weights(n);
  double variance = 0.0;
  for (std::size_t e = 0; e < n; ++e) {
    const auto& p = report.pairs[e];
    v_hat[e] = p.estimate.v_hat;
    weights[e] = p.weight;
    const double dsdv = 2.0 * p.weight * p.estimate.v_hat;
    variance += dsdv * dsdv * p.estimate.std_err * p.estimate.std_err;
  }
  const double s_hat = assemble(v_hat, weights);
  report.cycle = make_cycle_report(s_hat, n);
  report.s_std_err = std::sqrt(variance);
  report.s_true =
      noise.eta() * noise.eta() * cycle_value(overlap_matrix(spec.detectors()));
  report.noise_assumption = kNoiseAssumption;

  if (options.bootstrap > 0) {
    std::vector<double> resampled(options.bootstrap);
    const Eigen::MatrixXd x = design_matrix(grid);
    for (std::size_t b = 0; b < options.bootstrap; ++b) {
      std::vector<double> v_b(n);
      for (std::size_t e = 0; e < n; ++e) {
        auto rng = substream(options.seed, n + e + 1, b + 1);
        const Eigen::VectorXd mean = x * fits[e].coef;
        std::vector<double> counts(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
          counts[k] = draw_poisson(rng, mean(static_cast<Eigen::Index>(k)));
        }
        const FringeScan scan(grid, std::move(counts), options.shots_per_point);
        v_b[e] = visibility_from_fit(fit_fringe(scan)).v_hat;
      }
      resampled[b] = assemble(v_b, weights);
    }
    const double mean = std::accumulate(resampled.begin(), resampled.end(), 0.0) /
                        static_cast<double>(resampled.size());
    double ss = 0.0;
    for (double s : resampled) ss += (s - mean) * (s - mean);
    report.bootstrap_std_err =
        std::sqrt(ss / static_cast<double>(std::max<std::size_t>(resampled.size() - 1, 1)));
  }

  const double margin = report.cycle.margin;
  if (report.s_std_err > 0.0) {
    report.z_score = margin / report.s_std_err;
  } else {
    report.z_score = margin > 0.0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
  }
  report.violation_certified =
      report.cycle.violates_classical && report.z_score >= options.certify_sigma;
  return report;
}

}  // namespace viscycle
