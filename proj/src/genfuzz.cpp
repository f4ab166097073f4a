#include "semihilb/genfuzz.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include <Eigen/QR>

#include "semihilb/block_operator.hpp"
#include "semihilb/error.hpp"
#include "semihilb/gauges.hpp"
#include "semihilb/rank_one.hpp"

namespace semihilb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix null_part(Rng& rng, const Weight& w) {
  const int n = w.dim();
  const Matrix q = Matrix::Identity(n, n) - w.projector();
  return q * gaussian_matrix(rng, n, n) * q;
}

// Random r x r matrix with spectral norm `bound`.
Matrix bounded_block(Rng& rng, int r, double bound) {
  if (r == 0) return Matrix(0, 0);
  Matrix m = gaussian_matrix(rng, r, r);
  const double s = spectral_norm(m);
  return s > 0 ? Matrix(m * (bound / s)) : m;
}

Matrix block_diag(Scalar head, const Matrix& tail) {
  const int r = static_cast<int>(tail.rows()) + 1;
  Matrix m = Matrix::Zero(r, r);
  m(0, 0) = head;
  if (r > 1) m.bottomRightCorner(r - 1, r - 1) = tail;
  return m;
}

// Random matrix with a zero (1, 1) entry.
Matrix hollow_corner(Rng& rng, int r) {
  Matrix m = gaussian_matrix(rng, r, r);
  m(0, 0) = 0.0;
  return m;
}

Vector null_vector(Rng& rng, const Weight& w) {
  const int n = w.dim();
  return (Matrix::Identity(n, n) - w.projector()) * gaussian_matrix(rng, n, 1).col(0);
}

struct Dims {
  int n;
  int rank;
};

Dims draw_dims(Rng& rng, const GenConfig& cfg) {
  const int n = cfg.vary_dim && cfg.n > 2 ? rng.uniform_int(2, cfg.n) : cfg.n;
  const int rank = cfg.rank == 0 ? rng.uniform_int(1, n) : std::min(cfg.rank, n);
  return {n, rank};
}

Instance base_instance(const std::string& check, const Weight& w) {
  Instance inst;
  inst.n = w.dim();
  inst.a = w.matrix();
  inst.check = check;
  return inst;
}

void set_blocks(Instance& inst, const BlockGrid& g) {
  inst.blocks = g;
  inst.d = static_cast<int>(g.size());
}

CheckOutcome from_report(const BlockReport& r, Instance inst, double rel_tol) {
  CheckOutcome o;
  o.slack = r.min_slack();
  o.scale = r.scale;
  o.tol = rel_tol;
  for (const auto& e : r.entries)
    if (e.slack == o.slack) {
      o.detail = e.label;
      break;
    }
  o.reproducer = std::move(inst);
  return o;
}

// Boolean checks report slack +1 on conformance and -1 on violation.
CheckOutcome boolean_outcome(bool ok, std::string detail, Instance inst) {
  CheckOutcome o;
  o.slack = ok ? 1.0 : -1.0;
  o.scale = 1.0;
  o.tol = 0.0;
  o.detail = std::move(detail);
  o.reproducer = std::move(inst);
  return o;
}

BlockGrid random_blocks(Rng& rng, const Weight& w, int d, bool upper) {
  BlockGrid g(d, std::vector<Matrix>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g[i][j] = upper && i > j ? Matrix::Zero(w.dim(), w.dim()) : gen_adjointable(rng, w).mat();
  return g;
}

constexpr double kTol = 1e-8;

CheckOutcome check_equivalence(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const SemiOperator t = gen_adjointable(rng, w, cfg.scale);
  const double nt = a_opnorm(t);
  const double om = a_numerical_radius(t).first;
  Instance inst = base_instance("equivalence", w);
  inst.t = t.mat();
  CheckOutcome o;
  const double lower = om - 0.5 * nt;
  const double upper = nt - om;
  o.slack = std::min(lower, upper);
  o.detail = lower <= upper ? "omega >= norm/2" : "norm >= omega";
  o.scale = nt > 0 ? nt : 1.0;
  o.tol = kTol;
  o.reproducer = std::move(inst);
  return o;
}

CheckOutcome check_adjoint_symmetry(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const SemiOperator t = gen_adjointable(rng, w, cfg.scale);
  const Matrix lt = tilde(t).m;
  const Matrix ls = tilde(a_adjoint(t)).m;
  Instance inst = base_instance("adjoint_symmetry", w);
  inst.t = t.mat();
  CheckOutcome o;
  o.slack = -(ls - lt.adjoint()).norm();
  o.detail = "lift of adjoint = conjugate transpose of lift";
  o.scale = std::max(spectral_norm(lt), 1e-300);
  o.tol = kTol;
  o.reproducer = std::move(inst);
  return o;
}

CheckOutcome check_rankone(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const AVector x(gaussian_matrix(rng, dm.n, 1).col(0), w);
  const AVector y(gaussian_matrix(rng, dm.n, 1).col(0), w);
  const ARankOne op(x, y);
  const Matrix l = lift_unchecked(op.matrix(), w);
  const double dn = std::abs(rank_one_norm(op) - spectral_norm(l));
  const double dr = std::abs(rank_one_radius(op) - numerical_radius_of(l));
  Instance inst = base_instance("rankone", w);
  inst.x = x.entries();
  inst.y = y.entries();
  CheckOutcome o;
  o.slack = -std::max(dn, dr);
  o.detail = dn >= dr ? "norm closed form" : "radius closed form";
  o.scale = std::max(a_norm(x) * a_norm(y), 1e-300);
  o.tol = kTol;
  o.reproducer = std::move(inst);
  return o;
}

CheckOutcome check_sandwich_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const SemiOperator t12 = gen_adjointable(rng, w, cfg.scale);
  const SemiOperator t21 = gen_adjointable(rng, w, cfg.scale);
  Instance inst = base_instance("sandwich", w);
  inst.t = t12.mat();
  inst.s = t21.mat();
  return from_report(check_sandwich(t12, t21), std::move(inst), kTol);
}

CheckOutcome check_pinch_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  BlockGrid g = random_blocks(rng, w, 3, false);
  Instance inst = base_instance("pinch", w);
  set_blocks(inst, g);
  return from_report(check_pinch(build_block(g, w)), std::move(inst), kTol);
}

CheckOutcome check_crawford_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const int d = rng.uniform_int(2, 3);
  BlockGrid g = random_blocks(rng, w, d, false);
  // A shifted diagonal keeps the origin out of the ranges so the Crawford
  // term is active.
  if (rng.uniform() < 0.5) {
    const Scalar shift = std::polar(2.0, kTwoPi * rng.uniform());
    for (int k = 0; k < d; ++k) g[k][k] += shift * Matrix::Identity(dm.n, dm.n);
  }
  Instance inst = base_instance("crawford", w);
  set_blocks(inst, g);
  return from_report(check_crawford_bound(build_block(g, w)), std::move(inst), kTol);
}

CheckOutcome check_triangular_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const int d = rng.uniform_int(2, 3);
  BlockGrid g = random_blocks(rng, w, d, true);
  Instance inst = base_instance("triangular", w);
  set_blocks(inst, g);
  return from_report(check_triangular(build_block(g, w)), std::move(inst), kTol);
}

CheckOutcome check_phase_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  BlockGrid g = random_blocks(rng, w, 2, false);
  Instance inst = base_instance("phase", w);
  set_blocks(inst, g);
  return from_report(check_phase_invariance(build_block(g, w)), std::move(inst), kTol);
}

CheckOutcome check_unitary_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const SemiOperator t = gen_adjointable(rng, w, cfg.scale);
  const SemiOperator u = gen_a_unitary(rng, w);
  Instance inst = base_instance("unitary_invariance", w);
  inst.t = t.mat();
  inst.s = u.mat();
  return from_report(check_unitary_invariance(t, u), std::move(inst), kTol);
}

CheckOutcome check_parallel_equality_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const PairKind kind = rng.uniform() < 0.5 ? PairKind::Collinear : PairKind::SharedNorming;
  auto [t12, t21] = gen_parallel_pair(rng, w, kind);
  Instance inst = base_instance("parallel_equality", w);
  inst.t = t12.mat();
  inst.s = t21.mat();
  return from_report(check_parallel_equality(t12, t21), std::move(inst), 1e-7);
}

CheckOutcome check_bridge_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const int variant = rng.uniform_int(0, 3);
  auto [t, s] = variant < 2 ? gen_normaloid_pair(rng, w, variant == 0)
                            : gen_square_null_pair(rng, w, variant == 2);
  Instance inst = base_instance("bridge", w);
  inst.t = t.mat();
  inst.s = s.mat();
  BridgeReport b = normaloid_bridge_check(t, s);
  std::string detail = std::string(b.t_normaloid ? "normaloid" : "") +
                       (b.t_square_null ? " square-null" : "") +
                       "; bj=" + (b.bj.holds ? "holds" : "fails") +
                       " wa=" + (b.wa.holds ? "holds" : "fails");
  return boolean_outcome(b.conforms, std::move(detail), std::move(inst));
}

CheckOutcome check_rankone_parallel_case(Rng& rng, const GenConfig& cfg) {
  const Dims dm = draw_dims(rng, cfg);
  const Weight w = gen_weight(rng, dm.n, dm.rank, cfg.scale);
  const Vector xv = gaussian_matrix(rng, dm.n, 1).col(0);
  Vector yv;
  if (rng.uniform() < 0.5) {
    yv = gaussian_matrix(rng, dm.n, 1).col(0);
  } else {
    const Scalar c = rng.complex_normal() + Scalar(0.1, 0.0);
    yv = c * xv + null_vector(rng, w);
  }
  const AVector x(xv, w), y(yv, w);
  const Verdict vp = vec_parallel(x, y, 1e-7);
  const SemiOperator xx = make_rank_one(x, x).as_operator();
  const SemiOperator yy = make_rank_one(y, y).as_operator();
  CertifyConfig ccfg;
  const Verdict wp = wa_parallel(xx, yy, ccfg);
  Instance inst = base_instance("rankone_parallel", w);
  inst.x = xv;
  inst.y = yv;
  std::string detail = std::string("vec=") + (vp.holds ? "holds" : "fails") +
                       " wa=" + (wp.holds ? "holds" : "fails");
  return boolean_outcome(vp.holds == wp.holds, std::move(detail), std::move(inst));
}

using CheckFn = CheckOutcome (*)(Rng&, const GenConfig&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"equivalence", check_equivalence},
      {"adjoint_symmetry", check_adjoint_symmetry},
      {"rankone", check_rankone},
      {"sandwich", check_sandwich_case},
      {"pinch", check_pinch_case},
      {"crawford", check_crawford_case},
      {"triangular", check_triangular_case},
      {"phase", check_phase_case},
      {"unitary_invariance", check_unitary_case},
      {"parallel_equality", check_parallel_equality_case},
      {"bridge", check_bridge_case},
      {"rankone_parallel", check_rankone_parallel_case},
  };
  return r;
}

CheckFn find_check(const std::string& name) {
  for (const auto& [k, f] : registry())
    if (k == name) return f;
  raise(ErrorCode::UnknownCheckName, "unknown check: " + name);
}

void validate(const GenConfig& cfg) {
  if (cfg.n < 1) raise(ErrorCode::BadRank, "dimension must be positive");
  if (cfg.rank < 0 || cfg.rank > cfg.n)
    raise(ErrorCode::BadRank, "rank " + std::to_string(cfg.rank) + " outside [0, " +
                                  std::to_string(cfg.n) + "]");
  if (cfg.trials < 0) raise(ErrorCode::BadRank, "trials must be nonnegative");
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
    : engine_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ splitmix64(index + 1))) {}

double Rng::normal() { return normal_(engine_); }
double Rng::uniform() { return uniform_(engine_); }
int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}
Scalar Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Scalar(re, im) * std::sqrt(0.5);
}

std::uint64_t stream_id(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

Matrix haar_unitary(Rng& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, n, n));
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

Weight gen_weight(Rng& rng, int n, int rank, bool scale) {
  if (rank < 1 || rank > n)
    raise(ErrorCode::BadRank,
          "rank " + std::to_string(rank) + " outside [1, " + std::to_string(n) + "]");
  for (int attempt = 0;; ++attempt) {
    const Matrix g = gaussian_matrix(rng, n, rank);
    Matrix a = g * g.adjoint();
    a = (a + a.adjoint()) * 0.5;
    Weight w = Weight::build(a);
    if (scale) w = Weight::build(a / w.scale());
    if (w.rank() == rank || attempt >= 8) return w;
  }
}

Weight gen_weight(const GenConfig& cfg, std::uint64_t index) {
  Rng rng(cfg.seed, stream_id("weight"), index);
  return gen_weight(rng, cfg.n, cfg.rank == 0 ? cfg.n : cfg.rank, cfg.scale);
}

SemiOperator gen_adjointable(Rng& rng, const Weight& w, bool scale) {
  const int n = w.dim();
  const Matrix m = gaussian_matrix(rng, n, n);
  Matrix t = w.pinv() * m * w.matrix() + null_part(rng, w);
  if (scale) {
    const double s = spectral_norm(lift_unchecked(t, w));
    if (s > 0) t /= s;
  }
  return SemiOperator::wrap(std::move(t), w);
}

SemiOperator gen_a_unitary(Rng& rng, const Weight& w) {
  if (w.rank() == 0) raise(ErrorCode::ZeroRank, "gen_a_unitary: weight has rank 0");
  const Matrix v = haar_unitary(rng, w.rank());
  return SemiOperator::wrap(w.from_range() * v * w.to_range(), w);
}

SemiOperator from_lift(Rng& rng, const Matrix& m, const Weight& w) {
  return SemiOperator::wrap(w.from_range() * m * w.to_range() + null_part(rng, w), w);
}

SemiOperator gen_unbounded(Rng& rng, const Weight& w) {
  if (w.rank() >= w.dim())
    raise(ErrorCode::BadRank, "gen_unbounded: needs a singular weight");
  const SemiOperator t = gen_adjointable(rng, w);
  const Vector v = null_vector(rng, w);
  const Vector u = w.projector() * gaussian_matrix(rng, w.dim(), 1).col(0);
  const double scale = std::max(spectral_norm(t.mat()), 1.0);
  Matrix leak = u * v.adjoint();
  leak *= scale / std::max(leak.norm(), 1e-300);
  return SemiOperator::wrap(t.mat() + leak, w);
}

std::pair<SemiOperator, SemiOperator> gen_parallel_pair(Rng& rng, const Weight& w,
                                                        PairKind kind) {
  const Scalar phase = std::polar(1.0, kTwoPi * rng.uniform());
  if (kind == PairKind::Collinear) {
    const SemiOperator t = gen_adjointable(rng, w);
    const double c = 0.25 + 2.0 * rng.uniform();
    Matrix s = c * phase * t.mat();
    if (rng.uniform() < 0.5) s += null_part(rng, w);
    return {t, SemiOperator::wrap(std::move(s), w)};
  }
  const int r = w.rank();
  const Matrix uq = haar_unitary(rng, r);
  const Matrix vq = haar_unitary(rng, r);
  const double sigma = 0.5 + rng.uniform();
  const double tau = 0.5 + rng.uniform();
  // Both lifts are maximised by the same singular pair; the parallel phase
  // aligns their top singular values.
  Matrix mt = uq * block_diag(sigma, bounded_block(rng, r - 1, 0.8 * sigma)) * vq.adjoint();
  Matrix ms = uq * block_diag(tau * std::conj(phase), bounded_block(rng, r - 1, 0.8 * tau)) *
              vq.adjoint();
  return {from_lift(rng, mt, w), from_lift(rng, ms, w)};
}

std::pair<SemiOperator, SemiOperator> gen_orthogonal_pair(Rng& rng, const Weight& w,
                                                          Relation rel,
                                                          const CertifyConfig& cfg) {
  const int r = w.rank();
  for (int attempt = 0;; ++attempt) {
    const Matrix uq = haar_unitary(rng, r);
    const Matrix vq = rel == Relation::BJOrtho ? haar_unitary(rng, r) : uq;
    Matrix tail;
    if (r >= 3 && rng.uniform() < 0.5) {
      // Nilpotent tail: the pair stays orthogonal while T is not normaloid.
      tail = Matrix::Zero(r - 1, r - 1);
      for (int k = 0; k + 1 < r - 1; ++k) tail(k, k + 1) = 1.5;
    } else {
      tail = bounded_block(rng, r - 1, 0.9);
    }
    const Matrix mt = uq * block_diag(std::polar(1.0, kTwoPi * rng.uniform()), tail) * vq.adjoint();
    const Matrix ms = uq * hollow_corner(rng, r) * vq.adjoint();
    auto pair = std::make_pair(from_lift(rng, mt, w), from_lift(rng, ms, w));
    const Verdict v = rel == Relation::BJOrtho ? bj_orthogonal(pair.first, pair.second, cfg)
                                               : wa_orthogonal(pair.first, pair.second, cfg);
    if (v.holds || attempt >= 4) return pair;
  }
}

std::pair<SemiOperator, SemiOperator> gen_square_null_pair(Rng& rng, const Weight& w,
                                                           bool orthogonal) {
  const int r = w.rank();
  Matrix mt = Matrix::Zero(r, r);
  Matrix ms = gaussian_matrix(rng, r, r);
  if (r >= 2) {
    const Matrix q = haar_unitary(rng, r);
    const Vector u = q.col(0);
    const Vector v = q.col(1);
    mt = (0.5 + rng.uniform()) * u * v.adjoint();
    if (orthogonal) ms -= Scalar(u.dot(ms * v)) * u * v.adjoint();
  }
  return {from_lift(rng, mt, w), from_lift(rng, ms, w)};
}

std::pair<SemiOperator, SemiOperator> gen_normaloid_pair(Rng& rng, const Weight& w,
                                                         bool orthogonal) {
  const int r = w.rank();
  const Matrix q = haar_unitary(rng, r);
  const double rho = 0.5 + rng.uniform();
  const Matrix mt =
      q * block_diag(std::polar(rho, kTwoPi * rng.uniform()), bounded_block(rng, r - 1, 0.95 * rho)) *
      q.adjoint();
  const Matrix ms = orthogonal ? Matrix(q * hollow_corner(rng, r) * q.adjoint())
                               : gaussian_matrix(rng, r, r);
  return {from_lift(rng, mt, w), from_lift(rng, ms, w)};
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, f] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

CheckOutcome run_check(const std::string& name, const GenConfig& cfg, std::uint64_t index) {
  CheckFn f = find_check(name);
  Rng rng(cfg.seed, stream_id(name), index);
  return f(rng, cfg);
}

CampaignReport run_campaign(const GenConfig& cfg, const std::vector<std::string>& checks) {
  validate(cfg);
  for (const auto& c : checks) find_check(c);
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  CampaignReport report;
  report.config = cfg;
  const int workers = std::max(1, cfg.workers);
  for (const auto& name : checks) {
    const int trials = cfg.trials;
    std::vector<CheckOutcome> outcomes(trials);
    std::vector<std::string> errors(trials);
    std::vector<double> seconds(trials, 0.0);
    auto shard = [&](int first) {
      for (int i = first; i < trials; i += workers) {
        const auto t0 = clock::now();
        try {
          outcomes[i] = run_check(name, cfg, static_cast<std::uint64_t>(i));
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
        seconds[i] = std::chrono::duration<double>(clock::now() - t0).count();
      }
    };
    if (workers == 1) {
      shard(0);
    } else {
      std::vector<std::thread> pool;
      for (int k = 0; k < workers; ++k) pool.emplace_back(shard, k);
      for (auto& th : pool) th.join();
    }

    CheckSummary s;
    s.name = name;
    s.trials = trials;
    s.min_slack = trials > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    for (int i = 0; i < trials; ++i) {
      s.runtime_s += seconds[i];
      if (!errors[i].empty()) {
        ++s.failures;
        Failure f;
        f.index = static_cast<std::uint64_t>(i);
        f.slack = -std::numeric_limits<double>::infinity();
        f.detail = "error: " + errors[i];
        // The generator may be what threw; seed and index identify the instance.
        f.reproducer.check = name;
        s.failure_list.push_back(std::move(f));
        s.min_slack = -std::numeric_limits<double>::infinity();
        continue;
      }
      const CheckOutcome& o = outcomes[i];
      s.tol = o.tol;
      const double rel = o.slack / o.scale;
      s.min_slack = std::min(s.min_slack, rel);
      if (rel < 1e-4) ++s.near_tight;
      if (o.slack < -o.tol * o.scale) {
        ++s.failures;
        s.failure_list.push_back({static_cast<std::uint64_t>(i), o.slack, o.scale, o.detail,
                                  o.reproducer});
      }
    }
    if (s.failures > 0) report.passed = false;
    report.checks.push_back(std::move(s));
  }
  report.runtime_s = std::chrono::duration<double>(clock::now() - start).count();
  return report;
}

Json to_json(const CampaignReport& r, bool with_runtime) {
  Json j;
  j["passed"] = r.passed;
  j["environment"] = {{"seed", r.config.seed},
                      {"n", r.config.n},
                      {"rank", r.config.rank},
                      {"trials", r.config.trials},
                      {"scale", r.config.scale},
                      {"vary_dim", r.config.vary_dim},
                      {"near_tight_threshold", 1e-4}};
  if (with_runtime) {
    j["environment"]["workers"] = r.config.workers;
    j["runtime_s"] = r.runtime_s;
  }
  Json checks = Json::array();
  for (const auto& s : r.checks) {
    Json c;
    c["name"] = s.name;
    c["trials"] = s.trials;
    c["failures"] = s.failures;
    c["tol"] = s.tol;
    c["min_slack"] = std::isfinite(s.min_slack) ? Json(s.min_slack) : Json(nullptr);
    c["near_tight"] = s.near_tight;
    if (with_runtime) c["runtime_s"] = s.runtime_s;
    Json fails = Json::array();
    for (const auto& f : s.failure_list) {
      Json fj;
      fj["index"] = f.index;
      fj["slack"] = std::isfinite(f.slack) ? Json(f.slack) : Json(nullptr);
      fj["scale"] = f.scale;
      fj["detail"] = f.detail;
      fj["reproducer"] = f.reproducer.a.size() ? to_json(f.reproducer) : Json(nullptr);
      fails.push_back(std::move(fj));
    }
    c["failure_list"] = std::move(fails);
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace semihilb
