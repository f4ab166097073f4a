#include "semihilb/gauges.hpp"

#include <algorithm>
#include <cmath>

#include "semihilb/error.hpp"

namespace semihilb {

double a_opnorm(const SemiOperator& t) {
  require_a_bounded(t, "a_opnorm");
  return spectral_norm(tilde(t).m);
}

RangeProfile profile_of(const Matrix& m, const SweepConfig& cfg, bool with_polygon) {
  RangeProfile p;
  SupportFunction h(m);
  SweepResult r = sweep_support(h, cfg, {.keep_samples = true, .want_min = true});
  p.omega = std::max(0.0, r.max.value);
  p.crawford = std::max(0.0, -r.min.value);
  p.meta = r.meta;
  if (with_polygon && m.rows() > 0) {
    const int k = static_cast<int>(r.thetas.size());
    p.polygon.reserve(k + 1);
    Vector v;
    for (int i = 0; i <= k; ++i) {
      const double theta = i < k ? r.thetas[i] : kTwoPi;
      h.with_vector(theta, v);
      p.polygon.push_back(v.dot(m * v));
    }
  }
  p.thetas = std::move(r.thetas);
  p.support = std::move(r.support);
  return p;
}

std::pair<double, RangeProfile> a_numerical_radius(const SemiOperator& t,
                                                   const SweepConfig& cfg) {
  require_a_bounded(t, "a_numerical_radius");
  RangeProfile p = profile_of(tilde(t).m, cfg, false);
  return {p.omega, std::move(p)};
}

double crawford_of(const Matrix& m, const SweepConfig& cfg) {
  if (m.size() == 0) return 0.0;
  SupportFunction h(m);
  return std::max(0.0, -sweep_support(h, cfg, {.want_min = true}).min.value);
}

double a_crawford(const SemiOperator& t, const SweepConfig& cfg) {
  require_a_bounded(t, "a_crawford");
  return crawford_of(tilde(t).m, cfg);
}

double a_spectral_radius(const SemiOperator& t) {
  require_a_bounded(t, "a_spectral_radius");
  return spectral_radius(tilde(t).m);
}

bool is_a_normaloid(const SemiOperator& t, double tol, const SweepConfig& cfg) {
  require_a_bounded(t, "is_a_normaloid");
  const Matrix m = tilde(t).m;
  const double norm = spectral_norm(m);
  const double omega = numerical_radius_of(m, cfg);
  return std::abs(omega - norm) <= tol * (norm > 0.0 ? norm : 1.0);
}

RangeProfile numerical_range_polygon(const SemiOperator& t, int k) {
  require_a_bounded(t, "numerical_range_polygon");
  SweepConfig cfg;
  cfg.grid = k;
  return profile_of(tilde(t).m, cfg, true);
}

}  // namespace semihilb
