#include "viscycle/gram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viscycle/errors.hpp"

namespace viscycle {

namespace {

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " = " + std::to_string(x) + " outside [0, 1]");
  }
}

struct Roots {
  double lower;
  double upper;
};

// Roots of x^2 - 2 sqrt(r12 r23) x + (r12 + r23 - 1) in x = sqrt(r13).
Roots quadratic_roots(double r12, double r23) {
  const double center = std::sqrt(r12 * r23);
  const double half_width = std::sqrt((1.0 - r12) * (1.0 - r23));
  return {center - half_width, center + half_width};
}

}  // namespace

double gram_det(const GramTriple& t) {
  require_probability(t.r12, "r12");
  require_probability(t.r23, "r23");
  require_probability(t.r13, "r13");
  return 1.0 + 2.0 * std::sqrt(t.r12 * t.r23 * t.r13) * std::cos(t.phase) - t.r12 -
         t.r23 - t.r13;
}

double min_r13(double r12, double r23) {
  require_probability(r12, "r12");
  require_probability(r23, "r23");
  if (r12 + r23 <= 1.0) return 0.0;
  const double x = quadratic_roots(r12, r23).lower;
  return std::clamp(x * x, 0.0, 1.0);
}

double max_r13(double r12, double r23) {
  require_probability(r12, "r12");
  require_probability(r23, "r23");
  const double x = quadratic_roots(r12, r23).upper;
  return std::min(x * x, 1.0);
}

bool feasible(double r12, double r23, double r13) {
  require_probability(r12, "r12");
  require_probability(r23, "r23");
  require_probability(r13, "r13");
  // det G at phase 0 factors as -(x - x_lo)(x - x_hi) with x = sqrt(r13).
  const Roots roots = quadratic_roots(r12, r23);
  const double x = std::sqrt(r13);
  return (x - roots.lower) * (roots.upper - x) >= -kGramTolerance;
}

double max_S_given(double r12, double r23) {
  return r12 + r23 - min_r13(r12, r23);
}

}  // namespace viscycle
