#include "semihilb/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "semihilb/error.hpp"
#include "semihilb/gauges.hpp"

namespace semihilb {

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::BJOrtho: return "bj_orthogonal";
    case Relation::WAOrtho: return "wa_orthogonal";
    case Relation::NormParallel: return "norm_parallel";
    case Relation::WAParallel: return "wa_parallel";
    case Relation::VecParallel: return "vec_parallel";
  }
  return "unknown";
}

namespace {

double brent_min(const std::function<double(double)>& f, double lo, double hi, int bits,
                 int* evals) {
  std::uintmax_t iters = 200;
  auto counted = [&](double x) {
    ++*evals;
    return f(x);
  };
  auto res = boost::math::tools::brent_find_minima(counted, lo, hi, bits, iters);
  return res.first;
}

std::string search_method(const CertifyConfig& cfg, bool inner_sweep) {
  std::string m = "polar grid " + std::to_string(cfg.polar_angles) + "x" +
                  std::to_string(cfg.polar_radii) + " + nested Brent";
  if (inner_sweep) m += "; inner sweep K=" + std::to_string(cfg.sweep.grid);
  return m;
}

struct PhaseMax {
  double phi = 0.0;
  double value = 0.0;
};

// max over phi in [0, 2 pi) of f(phi): grid then golden refinement around
// the best local maxima of the grid.
PhaseMax maximize_phase(const std::function<double(double)>& f, const CertifyConfig& cfg) {
  const int k = std::max(cfg.phase_grid, 8);
  const double step = kTwoPi / k;
  std::vector<double> vals(k);
  for (int i = 0; i < k; ++i) vals[i] = f(step * i);

  std::vector<int> peaks;
  for (int i = 0; i < k; ++i) {
    const double prev = vals[(i + k - 1) % k];
    const double next = vals[(i + 1) % k];
    if (vals[i] >= prev && vals[i] >= next) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return vals[a] > vals[b]; });
  if (static_cast<int>(peaks.size()) > cfg.phase_refine) peaks.resize(cfg.phase_refine);

  PhaseMax best;
  const auto top = std::max_element(vals.begin(), vals.end());
  best.phi = step * static_cast<double>(top - vals.begin());
  best.value = *top;
  for (int i : peaks) {
    const double c = step * i;
    RefinedPoint p = golden_maximize(f, c - step, c + step, cfg.phase_tol);
    if (p.value > best.value) best = {p.theta, p.value};
  }
  best.phi = std::fmod(best.phi, kTwoPi);
  if (best.phi < 0) best.phi += kTwoPi;
  return best;
}

struct Lifts {
  Matrix t;
  Matrix s;
};

Lifts lifts_of(const SemiOperator& t, const SemiOperator& s, const char* who) {
  require_same_context(t, s, who);
  require_a_bounded(t, who);
  require_a_bounded(s, who);
  return {lift_unchecked(t.mat(), t.context()), lift_unchecked(s.mat(), s.context())};
}

Verdict ortho_verdict(Relation rel, const Matrix& mt, const Matrix& ms,
                      const std::function<double(const Matrix&)>& gauge,
                      const CertifyConfig& cfg, bool inner_sweep) {
  Verdict v;
  v.relation = rel;
  v.method = search_method(cfg, inner_sweep);
  v.sweep_grid = inner_sweep ? cfg.sweep.grid : 0;
  const double gt = gauge(mt);
  const double gs = gauge(ms);
  v.reference = gt;
  v.scale = gt > 0 ? gt : 1.0;
  v.decision_tol = cfg.decision_tol * v.scale;

  if (gt == 0.0 || gs <= std::numeric_limits<double>::epsilon() * gt) {
    // Nothing to search: gamma = 0 is optimal up to rounding.
    v.extremal = gt;
    v.margin = 0.0;
    v.witness = Scalar(0.0);
    v.holds = true;
    return v;
  }
  const double radius = 2.0 * gt / gs + 1.0;
  Matrix work(mt.rows(), mt.cols());
  auto f = [&](Scalar g) {
    work = mt + g * ms;
    return gauge(work);
  };
  ConvexMin cm = minimize_convex_plane(f, radius, cfg);
  v.extremal = std::min(cm.value, gt);
  v.margin = v.extremal - gt;
  v.witness = cm.value < gt ? cm.argmin : Scalar(0.0);
  v.holds = v.margin >= -v.decision_tol;
  return v;
}

}  // namespace

ConvexMin minimize_convex_plane(const std::function<double(Scalar)>& f, double radius,
                                const CertifyConfig& cfg) {
  ConvexMin best;
  best.argmin = Scalar(0.0);
  best.value = f(best.argmin);
  best.evaluations = 1;
  for (int j = 1; j <= cfg.polar_radii; ++j) {
    const double rho = radius * j / cfg.polar_radii;
    for (int k = 0; k < cfg.polar_angles; ++k) {
      const Scalar g = std::polar(rho, kTwoPi * k / cfg.polar_angles);
      const double val = f(g);
      ++best.evaluations;
      if (val < best.value) {
        best.value = val;
        best.argmin = g;
      }
    }
  }

  // The partial minimum over the imaginary part is convex in the real part.
  int evals = 0;
  auto inner_arg = [&](double a) {
    return brent_min([&](double b) { return f(Scalar(a, b)); }, -radius, radius, cfg.brent_bits,
                     &evals);
  };
  auto outer = [&](double a) { return f(Scalar(a, inner_arg(a))); };
  int outer_evals = 0;
  const double a = brent_min(outer, -radius, radius, cfg.brent_bits, &outer_evals);
  const Scalar g(a, inner_arg(a));
  const double val = f(g);
  best.evaluations += evals + outer_evals + 1;
  if (val < best.value) {
    best.value = val;
    best.argmin = g;
  }
  return best;
}

Verdict bj_orthogonal(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg) {
  Lifts l = lifts_of(t, s, "bj_orthogonal");
  return ortho_verdict(Relation::BJOrtho, l.t, l.s,
                       [](const Matrix& m) { return spectral_norm(m); }, cfg, false);
}

Verdict wa_orthogonal(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg) {
  Lifts l = lifts_of(t, s, "wa_orthogonal");
  const SweepConfig sweep = cfg.sweep;
  return ortho_verdict(Relation::WAOrtho, l.t, l.s,
                       [&](const Matrix& m) { return numerical_radius_of(m, sweep); }, cfg,
                       true);
}

Verdict norm_parallel(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg) {
  Lifts l = lifts_of(t, s, "norm_parallel");
  Verdict v;
  v.relation = Relation::NormParallel;
  v.method = "phase grid " + std::to_string(cfg.phase_grid) + " + golden refinement of top " +
             std::to_string(cfg.phase_refine);
  const double nt = spectral_norm(l.t);
  const double ns = spectral_norm(l.s);
  v.reference = nt + ns;
  v.scale = v.reference > 0 ? v.reference : 1.0;
  v.decision_tol = cfg.decision_tol * v.scale;

  Matrix work(l.t.rows(), l.t.cols());
  PhaseMax pm = maximize_phase(
      [&](double phi) {
        work = l.t + std::polar(1.0, phi) * l.s;
        return spectral_norm(work);
      },
      cfg);
  v.extremal = pm.value;
  v.margin = pm.value - v.reference;
  v.witness = std::polar(1.0, pm.phi);
  v.holds = v.margin >= -v.decision_tol;

  // ||T + lambda S|| = ||T|| + ||S|| iff omega(S^# T) = ||T|| ||S||.
  const double cross = numerical_radius_of(l.s.adjoint() * l.t);
  const double target = nt * ns;
  const double ctol = cfg.decision_tol * std::max(target, 1e-300) * 10.0;
  v.cross_check_value = cross;
  v.cross_check_agrees = (cross >= target - ctol) == v.holds;
  return v;
}

Verdict wa_parallel(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg) {
  Lifts l = lifts_of(t, s, "wa_parallel");
  Verdict v;
  v.relation = Relation::WAParallel;
  v.method = "phase grid " + std::to_string(cfg.phase_grid) + " + golden refinement of top " +
             std::to_string(cfg.phase_refine) + "; inner sweep K=" +
             std::to_string(cfg.sweep.grid);
  v.sweep_grid = cfg.sweep.grid;
  const double wt = numerical_radius_of(l.t, cfg.sweep);
  const double ws = numerical_radius_of(l.s, cfg.sweep);
  v.reference = wt + ws;
  v.scale = v.reference > 0 ? v.reference : 1.0;
  v.decision_tol = cfg.decision_tol * v.scale;

  Matrix work(l.t.rows(), l.t.cols());
  PhaseMax pm = maximize_phase(
      [&](double phi) {
        work = l.t + std::polar(1.0, phi) * l.s;
        return numerical_radius_of(work, cfg.sweep);
      },
      cfg);
  const Scalar lambda = std::polar(1.0, pm.phi);
  v.extremal = pm.value;
  v.margin = pm.value - v.reference;
  v.witness = lambda;
  v.holds = v.margin >= -v.decision_tol;

  // A vector attaining omega(T + lambda S) must attain both radii with
  // aligned phases: |<x|Tx>_A <x|Sx>_A| = omega_A(T) omega_A(S).
  work = l.t + lambda * l.s;
  SupportFunction h(work);
  SweepResult sr = sweep_support(h, cfg.sweep);
  Vector x;
  h.with_vector(sr.max.theta, x);
  const Scalar qt = x.dot(l.t * x);
  const Scalar qs = x.dot(l.s * x);
  const double cross = std::abs(qt * qs);
  const double target = wt * ws;
  v.cross_check_value = cross;
  v.cross_check_agrees =
      (cross >= target - 10.0 * cfg.decision_tol * std::max(v.scale * v.scale, 1e-300)) ==
      v.holds;
  if (v.holds) {
    Vector full = t.context().from_range() * x;
    v.witness_vector = full;
  }
  return v;
}

Verdict vec_parallel(const AVector& x, const AVector& y, double tol) {
  Verdict v;
  v.relation = Relation::VecParallel;
  v.method = "Cauchy-Schwarz equality";
  const Scalar ip = a_inner(x, y);
  const double nx = a_norm(x);
  const double ny = a_norm(y);
  v.reference = nx * ny;
  v.extremal = std::abs(ip);
  v.scale = v.reference > 0 ? v.reference : 1.0;
  v.decision_tol = tol * v.scale;
  v.margin = std::min(0.0, v.extremal - v.reference);
  v.holds = v.margin >= -v.decision_tol;
  v.witness = v.extremal > 0 ? ip / v.extremal : Scalar(1.0);
  return v;
}

CrosscheckResult wa_ortho_crosscheck(const SemiOperator& t, const SemiOperator& s,
                                     const Verdict& verdict, int beta_grid,
                                     const SweepConfig& sweep) {
  CrosscheckResult r;
  if (!verdict.holds || verdict.relation != Relation::WAOrtho) return r;
  Lifts l = lifts_of(t, s, "wa_ortho_crosscheck");
  r.evaluated = true;
  r.beta_count = std::max(beta_grid, 1);

  SupportFunction h(l.t);
  SweepResult sr = sweep_support(h, sweep, {.keep_samples = true});
  const double omega = std::max(0.0, sr.max.value);
  const double ns = spectral_norm(l.s);
  const double tol = 1e-7 * std::max(omega * ns, 1e-300);
  if (omega == 0.0 || ns == 0.0) {
    r.passed = true;
    return r;
  }

  // Attaining angles: refined maxima plus grid samples on a flat top.
  const double attain_tol = 1e-9 * std::max(omega, h.curvature_bound());
  std::vector<double> angles;
  for (const auto& p : sr.maxima)
    if (p.value >= omega - attain_tol) angles.push_back(p.theta);
  for (size_t i = 0; i < sr.thetas.size(); ++i)
    if (sr.support[i] >= omega - attain_tol) angles.push_back(sr.thetas[i]);
  r.attaining_angles = static_cast<int>(angles.size());

  // On the top eigenspace E at theta*, <x|Tx> = omega e^{-i theta*}; the best
  // x in E maximises Re(e^{i(beta + theta*)} x^* S x).
  std::vector<Matrix> compressions;
  std::vector<double> phases;
  const double eig_tol = 1e-7 * h.curvature_bound();
  for (double th : angles) {
    Matrix e = h.top_eigenspace(th, eig_tol);
    compressions.push_back(e.adjoint() * l.s * e);
    phases.push_back(th);
  }

  r.worst = std::numeric_limits<double>::infinity();
  for (int b = 0; b < r.beta_count; ++b) {
    const double beta = kTwoPi * b / r.beta_count;
    double best = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < compressions.size(); ++k) {
      const Matrix rot = std::polar(1.0, beta + phases[k]) * compressions[k];
      const Matrix herm = (rot + rot.adjoint()) * 0.5;
      best = std::max(best, omega * top_eigenvalue(herm));
    }
    r.worst = std::min(r.worst, best);
    if (best < -tol) ++r.misses;
  }
  r.passed = r.misses == 0;
  return r;
}

BridgeReport normaloid_bridge_check(const SemiOperator& t, const SemiOperator& s,
                                    const CertifyConfig& cfg) {
  BridgeReport b;
  b.t_normaloid = is_a_normaloid(t);
  b.s_normaloid = is_a_normaloid(s);
  const Matrix& a = t.context().matrix();
  const double nt = t.mat().norm();
  b.t_square_null =
      (a * t.mat() * t.mat()).norm() <= 1e-9 * std::max(a.norm() * nt * nt, 1e-300);

  b.bj = bj_orthogonal(t, s, cfg);
  b.wa = wa_orthogonal(t, s, cfg);
  if (b.t_normaloid && b.wa.holds && !b.bj.holds) b.conforms = false;
  if (b.t_square_null && b.bj.holds && !b.wa.holds) b.conforms = false;
  if (b.t_normaloid && b.s_normaloid) {
    b.norm_par = norm_parallel(t, s, cfg);
    b.wa_par = wa_parallel(t, s, cfg);
    if (b.wa_par->holds && !b.norm_par->holds) b.conforms = false;
  }
  return b;
}

}  // namespace semihilb
