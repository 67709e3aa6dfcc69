#include "viscycle/inequalities.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "viscycle/errors.hpp"

namespace viscycle {

namespace {

void require_triple(const OverlapMatrix& r) {
  if (r.size() != 3) {
    throw SizeError("three-path inequalities need exactly 3 states");
  }
}

void require_cycle_length(std::size_t n) {
  if (n < 3) {
    throw SizeError("cycle inequalities need n >= 3 (S_2 vanishes identically)");
  }
}

// (label, a, b, c) meaning r_a + r_b - r_c with pairs named by their labels.
struct FacetPattern {
  const char* label;
  const char* triangle_label;
  std::array<std::size_t, 2> plus_a;
  std::array<std::size_t, 2> plus_b;
  std::array<std::size_t, 2> minus;
};

constexpr std::array<FacetPattern, 3> kFacets{{
    {"r12+r23-r13", "1-r13 <= (1-r12)+(1-r23)", {0, 1}, {1, 2}, {0, 2}},
    {"r12+r13-r23", "1-r23 <= (1-r12)+(1-r13)", {0, 1}, {0, 2}, {1, 2}},
    {"r13+r23-r12", "1-r12 <= (1-r13)+(1-r23)", {0, 2}, {1, 2}, {0, 1}},
}};

double at(const OverlapMatrix& r, std::array<std::size_t, 2> p) { return r(p[0], p[1]); }

}  // namespace

std::array<FacetCheck, 3> three_path_facets(const OverlapMatrix& r) {
  require_triple(r);
  std::array<FacetCheck, 3> out;
  for (std::size_t k = 0; k < kFacets.size(); ++k) {
    const auto& f = kFacets[k];
    const double lhs = at(r, f.plus_a) + at(r, f.plus_b) - at(r, f.minus);
    out[k] = {f.label, lhs, lhs <= 1.0 + kInequalityTolerance};
  }
  return out;
}

std::array<TriangleCheck, 3> disagreement_triangle(const OverlapMatrix& r) {
  require_triple(r);
  std::array<TriangleCheck, 3> out;
  for (std::size_t k = 0; k < kFacets.size(); ++k) {
    const auto& f = kFacets[k];
    const double lhs = 1.0 - at(r, f.minus);
    const double rhs = (1.0 - at(r, f.plus_a)) + (1.0 - at(r, f.plus_b));
    out[k] = {f.triangle_label, lhs, rhs, lhs <= rhs + kInequalityTolerance};
  }
  return out;
}

double asymmetric_visibility_lhs(std::span<const std::complex<double>, 3> amplitudes,
                                 const VisibilityMatrix& v) {
  if (v.size() != 3) {
    throw SizeError("asymmetric visibility inequality needs a 3x3 visibility matrix");
  }
  const auto term = [&](std::size_t i, std::size_t j) {
    return visibility_weight(amplitudes[i], amplitudes[j]) * v(i, j) * v(i, j);
  };
  return term(0, 1) + term(1, 2) - term(0, 2);
}

double cycle_value(const OverlapMatrix& r, std::size_t n) {
  require_cycle_length(n);
  if (n > r.size()) {
    throw SizeError("cycle longer than the overlap matrix");
  }
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += r(i, i + 1);
  return s - r(0, n - 1);
}

double cycle_value(const OverlapMatrix& r) { return cycle_value(r, r.size()); }

double squared_visibility_cycle(const VisibilityMatrix& v) {
  const std::size_t n = v.size();
  require_cycle_length(n);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) s += v(i, i + 1) * v(i, i + 1);
  return s - v(0, n - 1) * v(0, n - 1);
}

double classical_bound(std::size_t n) {
  require_cycle_length(n);
  return static_cast<double>(n) - 2.0;
}

double quantum_max(std::size_t n) {
  require_cycle_length(n);
  const double c = std::cos(std::numbers::pi / (2.0 * static_cast<double>(n)));
  return static_cast<double>(n) * c * c - 1.0;
}

CycleReport make_cycle_report(double s_value, std::size_t n) {
  const double bound = classical_bound(n);
  const double margin = s_value - bound;
  return {n, s_value, bound, quantum_max(n), margin, margin > kViolationMargin};
}

CycleReport make_cycle_report(const OverlapMatrix& r) {
  return make_cycle_report(cycle_value(r), r.size());
}

AsymptoticGap asymptotic_gap(std::size_t n) {
  require_cycle_length(n);
  const long double nn = static_cast<long double>(n);
  const long double pi = std::numbers::pi_v<long double>;
  // n cos^2(x) - 1 - (n - 2) = 1 - n sin^2(x), avoids cancellation at large n
  const long double s = std::sin(pi / (2.0L * nn));
  const long double exact = 1.0L - nn * s * s;
  const long double first = 1.0L - pi * pi / (4.0L * nn);
  return {static_cast<double>(exact), static_cast<double>(first),
          static_cast<double>(exact - first)};
}

OverlapMatrix classical_polytope_member_sample(std::uint64_t seed) {
  static constexpr std::array<std::array<double, 3>, 5> kVertices{{
      {1.0, 1.0, 1.0},
      {0.0, 0.0, 0.0},
      {1.0, 0.0, 0.0},
      {0.0, 1.0, 0.0},
      {0.0, 0.0, 1.0},
  }};
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::array<double, 5> w{};
  double total = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    total += x;
  }
  std::array<double, 3> r{};
  for (std::size_t k = 0; k < kVertices.size(); ++k) {
    for (std::size_t c = 0; c < 3; ++c) r[c] += (w[k] / total) * kVertices[k][c];
  }
  return OverlapMatrix::triple(r[0], r[1], r[2]);
}

}  // namespace viscycle
