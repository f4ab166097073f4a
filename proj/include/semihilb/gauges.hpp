#pragma once

#include <utility>
#include <vector>

#include "semihilb/semi_operator.hpp"
#include "semihilb/support_sweep.hpp"

namespace semihilb {

/// Sampled support function of W_A(T) and the gauges read off it.
struct RangeProfile {
  std::vector<double> thetas;
  std::vector<double> support;
  double omega = 0.0;
  double crawford = 0.0;
  // Boundary points of W_A(T) in sweep order; when present the last vertex
  // is computed at theta = 2*pi and should coincide with the first.
  std::vector<Scalar> polygon;
  SweepMeta meta;
};

/// ||T||_A, the largest singular value of the lift.
double a_opnorm(const SemiOperator& t);

/// omega_A(T) via the support-function sweep on the lift.
std::pair<double, RangeProfile> a_numerical_radius(const SemiOperator& t,
                                                   const SweepConfig& cfg = {});

/// m_A(T): distance from the origin to W_A(T), zero when the origin is inside.
double a_crawford(const SemiOperator& t, const SweepConfig& cfg = {});

/// Largest eigenvalue modulus of the lift.
double a_spectral_radius(const SemiOperator& t);

bool is_a_normaloid(const SemiOperator& t, double tol = 1e-8, const SweepConfig& cfg = {});

/// Profile with K support samples and K + 1 boundary vertices.
RangeProfile numerical_range_polygon(const SemiOperator& t, int k = 720);

// Same gauges on plain matrices (already in range coordinates).
double crawford_of(const Matrix& m, const SweepConfig& cfg = {});
RangeProfile profile_of(const Matrix& m, const SweepConfig& cfg, bool with_polygon);

}  // namespace semihilb
