#include "viscycle/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "viscycle/errors.hpp"
#include "viscycle/inequalities.hpp"

namespace viscycle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kChainTolerance = 1e-10;
constexpr double kClosedFormTolerance = 1e-6;

void require_cycle_length(std::size_t n) {
  if (n < 3) throw SizeError("cycle optimization needs n >= 3");
}

// Parameter vector layout: [t2, theta3, phi3, ..., thetan, phin].
// State 1 is +z; state 2 is (sin t2, 0, cos t2).
std::vector<Eigen::Vector3d> unpack(const std::vector<double>& p, std::size_t n) {
  std::vector<Eigen::Vector3d> v(n);
  v[0] = Eigen::Vector3d::UnitZ();
  v[1] = {std::sin(p[0]), 0.0, std::cos(p[0])};
  for (std::size_t k = 2; k < n; ++k) {
    const double theta = p[2 * k - 3];
    const double phi = p[2 * k - 2];
    v[k] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
  return v;
}

double cycle_from_vectors(const std::vector<Eigen::Vector3d>& v) {
  const std::size_t n = v.size();
  double dots = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) dots += v[i].dot(v[i + 1]);
  dots -= v[0].dot(v[n - 1]);
  return 0.5 * static_cast<double>(n - 2) + 0.5 * dots;
}

struct LocalResult {
  std::vector<double> params;
  double s_value;
  std::size_t iterations;
};

LocalResult local_ascent(std::size_t n, std::vector<double> p, const OptimizerOptions& opt) {
  const auto objective = [n](const std::vector<double>& q) {
    return cycle_from_vectors(unpack(q, n));
  };
  double s = objective(p);
  double step = 0.1;
  std::size_t stalled = 0;
  std::size_t iter = 0;
  std::vector<double> grad(p.size());
  std::vector<double> trial(p.size());

  for (; iter < opt.max_iterations && stalled < opt.stall_iterations; ++iter) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double saved = p[k];
      p[k] = saved + opt.fd_step;
      const double up = objective(p);
      p[k] = saved - opt.fd_step;
      const double down = objective(p);
      p[k] = saved;
      grad[k] = (up - down) / (2.0 * opt.fd_step);
    }

    double gain = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
      for (std::size_t k = 0; k < p.size(); ++k) trial[k] = p[k] + step * grad[k];
      const double s_trial = objective(trial);
      if (s_trial > s) {
        gain = s_trial - s;
        p.swap(trial);
        s = s_trial;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (step < 1e-12) step = 1e-12;
    stalled = gain < opt.stall_tolerance ? stalled + 1 : 0;
  }
  return {std::move(p), s, iter};
}

std::vector<double> random_start(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(2 * n - 3);
  p[0] = kPi * unit(rng);
  for (std::size_t k = 2; k < n; ++k) {
    p[2 * k - 3] = std::acos(1.0 - 2.0 * unit(rng));
    p[2 * k - 2] = kTwoPi * unit(rng);
  }
  return p;
}

std::mt19937_64 restart_stream(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

Configuration to_configuration(const std::vector<Eigen::Vector3d>& v) {
  std::vector<PureQubit> states;
  states.reserve(v.size());
  for (const auto& x : v) states.emplace_back(x);
  return Configuration(std::move(states));
}

double wrap_positive(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (kTwoPi - w < 1e-9) w = 0.0;
  return w;
}

// Ordering of step sequences: shorter total travel first (monotone
// traversal of the circle), then lexicographic.
bool canonical_less(const std::vector<double>& a, const std::vector<double>& b) {
  const double travel_a = std::accumulate(a.begin(), a.end(), 0.0);
  const double travel_b = std::accumulate(b.begin(), b.end(), 0.0);
  if (travel_a < travel_b - 1e-6) return true;
  if (travel_a > travel_b + 1e-6) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - 1e-9) return true;
    if (a[i] > b[i] + 1e-9) return false;
  }
  return false;
}

}  // namespace

Configuration::Configuration(std::vector<PureQubit> states) : states_(std::move(states)) {
  require_cycle_length(states_.size());
}

CoplanarConfig::CoplanarConfig(std::vector<double> angles) : angles_(std::move(angles)) {
  require_cycle_length(angles_.size());
  if (angles_.front() != 0.0) {
    throw DomainError("coplanar configuration must start at angle 0");
  }
  for (std::size_t i = 1; i < angles_.size(); ++i) {
    if (!(angles_[i] > angles_[i - 1])) {
      throw DomainError("coplanar angles must be strictly increasing");
    }
  }
}

CoplanarConfig CoplanarConfig::uniform(std::size_t n) {
  require_cycle_length(n);
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    angles[i] = static_cast<double>(i) * kPi / static_cast<double>(n);
  }
  return CoplanarConfig(std::move(angles));
}

Configuration CoplanarConfig::to_configuration() const {
  std::vector<PureQubit> states;
  states.reserve(angles_.size());
  for (double a : angles_) {
    states.emplace_back(Eigen::Vector3d(std::sin(a), 0.0, std::cos(a)));
  }
  return Configuration(std::move(states));
}

double cycle_value(const Configuration& c) {
  return cycle_value(overlap_matrix(c.states()));
}

Configuration random_configuration(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<PureQubit> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
    while (v.norm() < 1e-12) v = {gauss(rng), gauss(rng), gauss(rng)};
    states.emplace_back(normalize(v));
  }
  return Configuration(std::move(states));
}

double coplanar_H(double phi, std::size_t n) {
  require_cycle_length(n);
  const double m = static_cast<double>(n - 1);
  const double upper = kPi / m;
  if (!(phi >= -1e-12 && phi <= upper + 1e-12)) {
    throw DomainError("H(phi) is defined on [0, pi/(n-1)], got phi = " + std::to_string(phi));
  }
  return 0.5 * static_cast<double>(n - 2) + 0.5 * (m * std::cos(phi) - std::cos(m * phi));
}

double coplanar_H_second_derivative(double phi, std::size_t n) {
  require_cycle_length(n);
  const double m = static_cast<double>(n - 1);
  return 0.5 * m * (m * std::cos(m * phi) - std::cos(phi));
}

std::vector<StationaryPoint> h_stationary_points(std::size_t n) {
  require_cycle_length(n);
  std::vector<StationaryPoint> points;
  for (double phi : {0.0, kPi / static_cast<double>(n)}) {
    const double h2 = coplanar_H_second_derivative(phi, n);
    points.push_back({phi, h2, h2 < 0.0});
  }
  return points;
}

double boundary_g(double x) {
  // Long double so that g at small integers rounds to the exact value
  // (g(2) = 0, g(3) = 3/2).
  const long double xl = x;
  return static_cast<double>(xl * std::cos(std::numbers::pi_v<long double> / xl));
}

BoundaryComparison boundary_comparison(std::size_t n) {
  require_cycle_length(n);
  const long double pi = std::numbers::pi_v<long double>;
  const auto g = [pi](long double x) { return x * std::cos(pi / x); };
  const long double nl = static_cast<long double>(n);
  return {coplanar_H(kPi / static_cast<double>(n), n),
          coplanar_H(kPi / static_cast<double>(n - 1), n),
          static_cast<double>(g(nl) - g(nl - 1.0L))};
}

OptResult maximize_cycle(std::size_t n, const OptimizerOptions& options) {
  require_cycle_length(n);
  if (options.restarts < 1) {
    throw DomainError("maximize_cycle needs at least one restart");
  }

  std::vector<LocalResult> results(options.restarts);
  const auto run = [&](std::size_t r) {
    auto rng = restart_stream(options.seed, r);
    results[r] = local_ascent(n, random_start(n, rng), options);
  };

  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, options.restarts);
  if (threads == 1) {
    for (std::size_t r = 0; r < options.restarts; ++r) run(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < options.restarts; r = next++) run(r);
      });
    }
  }

  // Max by value, ties to the lower restart index.
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].s_value > results[best].s_value) best = r;
  }

  Configuration config = to_configuration(unpack(results[best].params, n));
  const CanonicalForm canon = canonicalize(config);
  const double s = results[best].s_value;
  return OptResult{std::move(config),
                   s,
                   canon.angles,
                   canon.residual,
                   std::abs(s - quantum_max(n)) <= kClosedFormTolerance,
                   results[best].iterations,
                   best,
                   options.seed};
}

OptResult maximize_cycle(std::size_t n, std::size_t restarts, std::uint64_t seed) {
  OptimizerOptions options;
  options.restarts = restarts;
  options.seed = seed;
  return maximize_cycle(n, options);
}

CanonicalForm canonicalize(const Configuration& c) {
  const std::size_t n = c.size();

  Eigen::Matrix3d moment = Eigen::Matrix3d::Zero();
  for (const auto& s : c.states()) moment += s.bloch() * s.bloch().transpose();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(moment);
  const Eigen::Vector3d normal = solver.eigenvectors().col(0);

  double residual = 0.0;
  for (const auto& s : c.states()) residual = std::max(residual, std::abs(s.bloch().dot(normal)));

  // In-plane reference axis: first state with a usable projection.
  Eigen::Vector3d e1 = Eigen::Vector3d::Zero();
  for (const auto& s : c.states()) {
    const Eigen::Vector3d proj = s.bloch() - s.bloch().dot(normal) * normal;
    if (proj.norm() > 1e-9) {
      e1 = proj.normalized();
      break;
    }
  }
  if (e1.isZero()) e1 = normal.unitOrthogonal();
  const Eigen::Vector3d e2 = normal.cross(e1);

  std::vector<double> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d& v = c[i].bloch();
    alpha[i] = std::atan2(v.dot(e2), v.dot(e1));
  }

  CanonicalForm best{{}, {}, residual, 0, false, false};
  bool have_best = false;
  std::vector<double> steps(n - 1);
  for (int mirrored = 0; mirrored < 2; ++mirrored) {
    const double orientation = mirrored ? -1.0 : 1.0;
    for (int reversed = 0; reversed < 2; ++reversed) {
      for (std::size_t shift = 0; shift < n; ++shift) {
        const auto label = [&](std::size_t i) {
          return reversed ? (shift + n - i) % n : (shift + i) % n;
        };
        for (std::size_t i = 0; i + 1 < n; ++i) {
          steps[i] = wrap_positive(orientation * (alpha[label(i + 1)] - alpha[label(i)]));
        }
        if (!have_best || canonical_less(steps, best.steps)) {
          best.steps = steps;
          best.shift = shift;
          best.reversed = reversed != 0;
          best.mirrored = mirrored != 0;
          have_best = true;
        }
      }
    }
  }

  best.angles.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) best.angles[i] = best.angles[i - 1] + best.steps[i - 1];
  return best;
}

ChainReport verify_step_bound_chain(const Configuration& c) {
  const std::size_t n = c.size();
  ChainReport report;
  report.step_angles.resize(n - 1);
  double sum_cos = 0.0;
  double total = 0.0;
  bool all_acute = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double theta = geodesic_angle(c[i], c[i + 1]);
    report.step_angles[i] = theta;
    total += theta;
    sum_cos += std::cos(theta);
    all_acute = all_acute && theta <= kPi / 2.0;
  }
  report.total = total;
  report.closing = geodesic_angle(c[0], c[n - 1]);
  report.s_value = cycle_value(c);

  const double m = static_cast<double>(n - 1);
  if (total <= kPi) {
    report.triangle_holds = report.closing <= total + kChainTolerance;
    report.step_bound = 0.5 * static_cast<double>(n - 2) + 0.5 * (sum_cos - std::cos(total));
    if (all_acute) {
      report.jensen_holds = sum_cos <= m * std::cos(total / m) + kChainTolerance;
      report.h_bound = coplanar_H(total / m, n);
    }
  }
  return report;
}

}  // namespace viscycle
