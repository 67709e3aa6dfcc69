#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "viscycle/bloch.hpp"
#include "viscycle/interferometer.hpp"

namespace viscycle {

/// Slack on "<=" comparisons of inequality left-hand sides.
inline constexpr double kInequalityTolerance = 1e-12;
/// A cycle value must beat the classical bound by more than this to count
/// as a violation.
inline constexpr double kViolationMargin = 1e-9;

struct FacetCheck {
  std::string label;  // e.g. "r12+r23-r13"
  double lhs;
  bool satisfied;  // lhs <= 1
};

struct TriangleCheck {
  std::string label;  // e.g. "1-r13 <= (1-r12)+(1-r23)"
  double lhs;
  double rhs;
  bool satisfied;  // lhs <= rhs
};

/// n-cycle evaluation against the classical and qubit bounds.
struct CycleReport {
  std::size_t n;
  double s_value;
  double classical_bound;
  double quantum_max;
  double margin;  // s_value - classical_bound
  bool violates_classical;  // margin > kViolationMargin
};

struct AsymptoticGap {
  double exact_gap;        // quantum_max(n) - (n - 2)
  double first_order_gap;  // 1 - pi^2 / (4n)
  double residual;         // exact - first_order, O(n^-3)
};

/// The three facets r_ij + r_jk - r_ik <= 1 of the three-state classical
/// overlap polytope, one per choice of middle state (2, 1, 3 in that order).
std::array<FacetCheck, 3> three_path_facets(const OverlapMatrix& r);

/// The same facets written as triangle inequalities on disagreement
/// probabilities 1 - r_ij.
std::array<TriangleCheck, 3> disagreement_triangle(const OverlapMatrix& r);

/// Weighted squared-visibility form of r12 + r23 - r13 for arbitrary nonzero
/// amplitudes. Visibility indices are zero-based (0,1), (1,2), (0,2).
double asymmetric_visibility_lhs(std::span<const std::complex<double>, 3> amplitudes,
                                 const VisibilityMatrix& v);

/// S_n = sum_{i=1}^{n-1} r_{i,i+1} - r_{1n} in the given label order, n = r.size().
/// Throws SizeError for n < 3.
double cycle_value(const OverlapMatrix& r);

/// S_n evaluated on the first n labels of a larger overlap matrix.
double cycle_value(const OverlapMatrix& r, std::size_t n);

/// The same cycle sum with V_ij^2 in place of r_ij (balanced interferometers).
double squared_visibility_cycle(const VisibilityMatrix& v);

double classical_bound(std::size_t n);

/// Tight qubit maximum n cos^2(pi / 2n) - 1.
double quantum_max(std::size_t n);

CycleReport make_cycle_report(double s_value, std::size_t n);
CycleReport make_cycle_report(const OverlapMatrix& r);

/// Computed in long double.
AsymptoticGap asymptotic_gap(std::size_t n);

/// Random member of the three-state classical overlap polytope: a
/// Dirichlet-weighted mixture of the five consistent deterministic vertices
/// (1,1,1), (0,0,0), (1,0,0), (0,1,0), (0,0,1) in (r12, r23, r13) order.
OverlapMatrix classical_polytope_member_sample(std::uint64_t seed);

}  // namespace viscycle
