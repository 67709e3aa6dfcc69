#pragma once

// Test-only reference computations. Nothing here calls into the library's
// closed forms; each oracle works from state vectors, determinants, or
// exhaustive scans.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace viscycle::oracle {

inline Eigen::Vector3d random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v = {g(rng), g(rng), g(rng)};
  } while (v.norm() < 1e-9);
  return v.normalized();
}

/// Haar-random proper rotation from a QR decomposition.
inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> from a Bloch direction.
inline Eigen::Vector2cd ket_from_bloch(const Eigen::Vector3d& v) {
  const double theta = std::acos(std::clamp(v.z(), -1.0, 1.0));
  const double phi = std::atan2(v.y(), v.x());
  return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
}

/// |<a|b>|^2 computed from state vectors.
inline double ket_overlap(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  return std::norm(a.dot(b));
}

inline Eigen::Matrix2cd outer(const Eigen::Vector2cd& a) { return a * a.adjoint(); }

/// det of the 3x3 Gram matrix with real <1|2> = sqrt(r12), <2|3> = sqrt(r23)
/// and <1|3> = sqrt(r13) e^{i phi}, by cofactor expansion of the Hermitian
/// matrix [[1, a, c], [a*, 1, b], [c*, b*, 1]]:
///   1 + a b c* + a* b* c - |a|^2 - |b|^2 - |c|^2.
inline double gram_det_cofactor(double r12, double r23, double r13, std::complex<double> phase) {
  const std::complex<double> a = std::sqrt(r12);
  const std::complex<double> b = std::sqrt(r23);
  const std::complex<double> c = std::sqrt(r13) * phase;
  return (1.0 + a * b * std::conj(c) + std::conj(a) * std::conj(b) * c).real() - std::norm(a) -
         std::norm(b) - std::norm(c);
}

/// Smallest r13 on a grid of step dr for which some phase on a grid of step
/// dphi gives det G >= -tol. Returns NaN if none is found.
inline double brute_min_r13(double r12, double r23, double dr = 1e-4, double dphi = 1e-3,
                            double tol = 1e-9) {
  const std::size_t phases = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / dphi));
  // The coupling term below is nonnegative, so the maximum of det over the
  // phase grid is attained where cos is largest; scanning the phase grid once
  // gives the same value as rescanning it for every r13.
  double max_cos = -1.0;
  for (std::size_t k = 0; k < phases; ++k) {
    max_cos = std::max(max_cos, std::cos(dphi * static_cast<double>(k)));
  }
  const double sq = std::sqrt(r12 * r23);
  const std::size_t steps = static_cast<std::size_t>(std::llround(1.0 / dr));
  for (std::size_t m = 0; m <= steps; ++m) {
    const double r13 = static_cast<double>(m) / static_cast<double>(steps);
    // Same expansion as gram_det_cofactor with real a, b.
    const double best = 1.0 - r12 - r23 - r13 + 2.0 * sq * std::sqrt(r13) * max_cos;
    if (best >= -tol) return r13;
  }
  return std::nan("");
}

/// Ascending grid 0, 1/(points-1), ..., 1.
inline std::vector<double> unit_grid(std::size_t points) {
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return g;
}

/// Cell midpoints (i + 1/2)/points, i = 0..points-1.
inline std::vector<double> midpoint_grid(std::size_t points) {
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
  }
  return g;
}

/// S_n from Bloch vectors through state-vector overlaps.
inline double cycle_from_kets(const std::vector<Eigen::Vector3d>& v) {
  std::vector<Eigen::Vector2cd> k;
  for (const auto& x : v) k.push_back(ket_from_bloch(x));
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) s += ket_overlap(k[i], k[i + 1]);
  return s - ket_overlap(k.front(), k.back());
}

}  // namespace viscycle::oracle
