#include "semihilb/support_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace semihilb {

SupportFunction::SupportFunction(const Matrix& m)
    : split_(m), work_(m.rows(), m.cols()), solver_(m.rows()), norm_(spectral_norm(m)) {}

double SupportFunction::operator()(double theta) {
  const auto n = split_.re.rows();
  if (n == 0) return 0.0;
  split_.rotated(theta, work_);
  if (n <= 2) return top_eigenvalue(work_);
  solver_.compute(work_, Eigen::EigenvaluesOnly);
  return solver_.eigenvalues()(n - 1);
}

double SupportFunction::with_vector(double theta, Vector& v) {
  const auto n = split_.re.rows();
  split_.rotated(theta, work_);
  solver_.compute(work_, Eigen::ComputeEigenvectors);
  v = solver_.eigenvectors().col(n - 1);
  return solver_.eigenvalues()(n - 1);
}

Matrix SupportFunction::top_eigenspace(double theta, double tol) {
  const auto n = split_.re.rows();
  split_.rotated(theta, work_);
  solver_.compute(work_, Eigen::ComputeEigenvectors);
  const RealVector& ev = solver_.eigenvalues();
  int k = 1;
  while (k < n && ev(n - 1 - k) >= ev(n - 1) - tol) ++k;
  return solver_.eigenvectors().rightCols(k);
}

RefinedPoint golden_maximize(const std::function<double(double)>& f, double lo, double hi,
                             double tol, int* evaluations) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  int evals = 0;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  evals += 2;
  RefinedPoint best = fc >= fd ? RefinedPoint{c, fc} : RefinedPoint{d, fd};
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      ++evals;
      if (fc > best.value) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      ++evals;
      if (fd > best.value) best = {d, fd};
    }
  }
  if (evaluations) *evaluations += evals;
  return best;
}

namespace {

// Indices of grid points that are local extrema (cyclic), ordered best first
// and filtered by `keep`.
template <typename Better, typename Keep>
std::vector<int> local_extrema(const std::vector<double>& s, Better better, Keep keep) {
  const int k = static_cast<int>(s.size());
  std::vector<int> idx;
  for (int i = 0; i < k; ++i) {
    const double prev = s[(i + k - 1) % k];
    const double next = s[(i + 1) % k];
    if (!better(prev, s[i]) && !better(next, s[i]) && keep(s[i])) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return better(s[x], s[y]); });
  return idx;
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

SweepResult sweep_support(SupportFunction& h, const SweepConfig& cfg, SweepRequest req) {
  SweepResult out;
  const int k = std::max(cfg.grid, 8);
  const double step = kTwoPi / k;
  const double c = h.curvature_bound();
  out.meta.grid = k;
  out.meta.grid_error_bound = c * step * step / 8.0;

  if (h.dim() == 0) {
    out.meta.error_bound = 0.0;
    return out;
  }

  std::vector<double> samples(k);
  for (int i = 0; i < k; ++i) samples[i] = h(step * i);
  out.meta.evaluations = k;

  auto grid_best = std::max_element(samples.begin(), samples.end());
  out.max = {step * static_cast<double>(grid_best - samples.begin()), *grid_best};

  const double keep_above = *grid_best - out.meta.grid_error_bound;
  const auto maxima = local_extrema(
      samples, [](double x, double y) { return x > y; },
      [&](double v) { return v >= keep_above; });

  auto eval = [&h](double t) { return h(t); };
  int refined = 0;
  for (int i : maxima) {
    if (refined >= cfg.max_refine) break;
    const double centre = step * i;
    RefinedPoint p = golden_maximize(eval, centre - step, centre + step, cfg.theta_tol,
                                     &out.meta.evaluations);
    if (samples[i] > p.value) p = {centre, samples[i]};
    p.theta = wrap_angle(p.theta);
    out.maxima.push_back(p);
    if (p.value > out.max.value) out.max = p;
    ++refined;
  }
  std::stable_sort(out.maxima.begin(), out.maxima.end(),
                   [](const RefinedPoint& x, const RefinedPoint& y) { return x.value > y.value; });

  if (req.want_min) {
    auto grid_worst = std::min_element(samples.begin(), samples.end());
    out.min = {step * static_cast<double>(grid_worst - samples.begin()), *grid_worst};
    // h is Lipschitz with constant c, so a minimum below zero can only hide
    // near a grid point whose value is under c * step / 2.
    const double keep_below = c * step / 2.0;
    const auto minima = local_extrema(
        samples, [](double x, double y) { return x < y; },
        [&](double v) { return v < keep_below; });
    auto neg = [&h](double t) { return -h(t); };
    int refined_min = 0;
    for (int i : minima) {
      if (refined_min >= cfg.max_refine) break;
      const double centre = step * i;
      RefinedPoint p = golden_maximize(neg, centre - step, centre + step, cfg.theta_tol,
                                       &out.meta.evaluations);
      p.value = -p.value;
      if (samples[i] < p.value) p = {centre, samples[i]};
      p.theta = wrap_angle(p.theta);
      if (p.value < out.min.value) out.min = p;
      ++refined_min;
    }
    refined += refined_min;
  }

  out.meta.refinements = refined;
  out.meta.error_bound = refined > 0 ? c * cfg.theta_tol * cfg.theta_tol / 8.0
                                     : out.meta.grid_error_bound;
  if (req.keep_samples) {
    out.thetas.resize(k);
    for (int i = 0; i < k; ++i) out.thetas[i] = step * i;
    out.support = std::move(samples);
  }
  return out;
}

double numerical_radius_of(const Matrix& m, const SweepConfig& cfg) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1) return std::abs(m(0, 0));
  SupportFunction h(m);
  return std::max(0.0, sweep_support(h, cfg).max.value);
}

}  // namespace semihilb
