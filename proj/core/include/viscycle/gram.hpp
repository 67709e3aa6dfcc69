#pragma once

namespace viscycle {

/// Overlaps of three pure states after rephasing so that <d1|d2> and
/// <d2|d3> are real and positive; `phase` is the remaining gauge-invariant
/// phase of <d1|d3>.
struct GramTriple {
  double r12;
  double r23;
  double r13;
  double phase = 0.0;
};

/// Boundary tolerance on det G.
inline constexpr double kGramTolerance = 1e-12;

/// det G = 1 + 2 sqrt(r12 r23 r13) cos(phase) - r12 - r23 - r13.
/// Throws DomainError for overlaps outside [0, 1].
double gram_det(const GramTriple& t);

/// Smallest r13 compatible with a pure-state realization:
/// (sqrt(r12 r23) - sqrt((1-r12)(1-r23)))^2 when r12 + r23 > 1, else 0.
double min_r13(double r12, double r23);

/// Largest compatible r13, (sqrt(r12 r23) + sqrt((1-r12)(1-r23)))^2 capped at 1.
double max_r13(double r12, double r23);

/// True iff some phase makes det G >= 0, i.e. sqrt(r13) lies between the
/// roots of x^2 - 2 sqrt(r12 r23) x + (r12 + r23 - 1).
bool feasible(double r12, double r23, double r13);

/// max over realizable r13 of r12 + r23 - r13.
double max_S_given(double r12, double r23);

}  // namespace viscycle
