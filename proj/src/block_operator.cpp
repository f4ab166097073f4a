#include "semihilb/block_operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semihilb/error.hpp"
#include "semihilb/gauges.hpp"

namespace semihilb {

namespace {

std::string pair_label(const char* what, int i, int j) {
  return std::string(what) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string index_label(const char* what, int i) {
  return std::string(what) + "(" + std::to_string(i + 1) + ")";
}

void add_lower(BlockReport& r, std::string label, double lhs, double rhs) {
  r.entries.push_back({std::move(label), lhs, rhs, lhs - rhs});
}

void add_equal(BlockReport& r, std::string label, double lhs, double rhs) {
  r.entries.push_back({std::move(label), lhs, rhs, -std::abs(lhs - rhs)});
}

void finish(BlockReport& r, double scale, double tol) {
  r.scale = scale > 0 ? scale : 1.0;
  r.tol = tol * r.scale;
}

// Lifts of every block, indexed like the blocks.
std::vector<std::vector<Matrix>> lifted_blocks(const BlockOperator& b) {
  std::vector<std::vector<Matrix>> l(b.d(), std::vector<Matrix>(b.d()));
  for (int i = 0; i < b.d(); ++i)
    for (int j = 0; j < b.d(); ++j) l[i][j] = lift_unchecked(b.block(i, j), b.base());
  return l;
}

void require_blocks_bounded(const BlockOperator& b, const char* who) {
  if (!b.inflated().is_a_bounded()) {
    for (int i = 0; i < b.d(); ++i)
      for (int j = 0; j < b.d(); ++j) {
        auto op = SemiOperator::wrap(b.block(i, j), b.base());
        if (!op.is_a_bounded())
          raise(ErrorCode::NotABounded,
                std::string(who) + ": block " + pair_label("", i, j) + " is not A-bounded");
      }
    raise(ErrorCode::NotABounded, std::string(who) + ": operator matrix is not A-bounded");
  }
}

double radius(const Matrix& lifted, const BlockConfig& cfg) {
  return numerical_radius_of(lifted, cfg.sweep);
}

Matrix two_by_two(const std::vector<std::vector<Matrix>>& l, int i, int j) {
  return assemble({{l[i][i], l[i][j]}, {l[j][i], l[j][j]}});
}

}  // namespace

double BlockReport::min_slack() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) m = std::min(m, e.slack);
  return entries.empty() ? 0.0 : m;
}

BlockOperator::BlockOperator(BlockGrid blocks, Weight base, SemiOperator inflated)
    : blocks_(std::move(blocks)), base_(std::move(base)), inflated_(std::move(inflated)) {}

Matrix assemble(const BlockGrid& blocks) {
  const int d = static_cast<int>(blocks.size());
  if (d == 0) return Matrix();
  const int n = static_cast<int>(blocks[0][0].rows());
  Matrix m(n * d, n * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m.block(i * n, j * n, n, n) = blocks[i][j];
  return m;
}

BlockOperator BlockOperator::build(BlockGrid blocks, const Weight& w) {
  const int d = static_cast<int>(blocks.size());
  if (d == 0) raise(ErrorCode::DimensionMismatch, "build_block: no blocks");
  const int n = w.dim();
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(blocks[i].size()) != d)
      raise(ErrorCode::DimensionMismatch,
            "build_block: row " + std::to_string(i + 1) + " has " +
                std::to_string(blocks[i].size()) + " blocks, expected " + std::to_string(d));
    for (int j = 0; j < d; ++j)
      if (blocks[i][j].rows() != n || blocks[i][j].cols() != n)
        raise(ErrorCode::DimensionMismatch,
              "build_block: block " + pair_label("", i, j) + " is not " + std::to_string(n) +
                  "x" + std::to_string(n));
  }
  Matrix full = assemble(blocks);
  SemiOperator inflated = SemiOperator::wrap(std::move(full), w.inflate(d));
  return BlockOperator(std::move(blocks), w, std::move(inflated));
}

BlockOperator build_block(BlockGrid blocks, const Weight& w) {
  return BlockOperator::build(std::move(blocks), w);
}

BlockOperator block_a_adjoint(const BlockOperator& b) {
  const int d = b.d();
  BlockGrid out(d, std::vector<Matrix>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto op = SemiOperator::wrap(b.block(j, i), b.base());
      if (!op.is_a_adjointable())
        raise(ErrorCode::NotAAdjointable,
              "block_a_adjoint: block " + pair_label("", j, i) + " is not A-adjointable");
      out[i][j] = a_adjoint(op).mat();
    }
  return BlockOperator::build(std::move(out), b.base());
}

Matrix blockwise_tilde(const BlockOperator& b) { return assemble(lifted_blocks(b)); }

BlockReport check_sandwich(const SemiOperator& t12, const SemiOperator& t21,
                           const BlockConfig& cfg) {
  require_same_context(t12, t21, "check_sandwich");
  for (const SemiOperator* t : {&t12, &t21})
    if (!t->is_a_adjointable())
      raise(ErrorCode::NotAAdjointable,
            std::string("check_sandwich: ") + (t == &t12 ? "T12" : "T21") +
                " is not A-adjointable");
  const Weight& w = t12.context();
  const int n = w.dim();
  const Matrix zero = Matrix::Zero(n, n);
  BlockOperator b = BlockOperator::build({{zero, t12.mat()}, {a_adjoint(t21).mat(), zero}}, w);

  const double omega = radius(tilde(b.inflated()).m, cfg);
  const double n12 = a_opnorm(t12);
  const double n21 = a_opnorm(t21);
  const double lower = 0.5 * spectral_norm(lift_unchecked(t12.mat() + t21.mat(), w));
  const double upper = 0.5 * (n12 + n21);

  BlockReport r;
  r.check = "sandwich";
  r.values = {{"lower", lower}, {"omega", omega}, {"upper", upper}};
  add_lower(r, "omega >= lower", omega, lower);
  add_lower(r, "upper >= omega", upper, omega);
  finish(r, upper, cfg.tol);
  return r;
}

BlockReport check_parallel_equality(const SemiOperator& t12, const SemiOperator& t21,
                                    const BlockConfig& cfg, const CertifyConfig& certify_cfg) {
  require_same_context(t12, t21, "check_parallel_equality");
  Verdict v = norm_parallel(t12, t21, certify_cfg);
  if (!v.holds)
    raise(ErrorCode::PreconditionNotParallel,
          "check_parallel_equality: pair is not A-norm-parallel (margin " +
              std::to_string(v.margin) + ")");
  if (!t21.is_a_adjointable())
    raise(ErrorCode::NotAAdjointable, "check_parallel_equality: T21 is not A-adjointable");

  const Weight& w = t12.context();
  const int n = w.dim();
  const Matrix zero = Matrix::Zero(n, n);
  const Matrix t21s = a_adjoint(t21).mat();
  const double beta0 = 0.5 * std::arg(*v.witness);
  const double target = 0.5 * (a_opnorm(t12) + a_opnorm(t21));

  BlockReport r;
  r.check = "parallel_equality";
  r.values = {{"target", target}, {"beta", beta0}, {"witness_margin", v.margin}};
  for (int branch = 0; branch < 2; ++branch) {
    const double beta = beta0 + branch * kPi;
    BlockOperator b = BlockOperator::build(
        {{zero, t12.mat()}, {std::polar(1.0, -2.0 * beta) * t21s, zero}}, w);
    const double omega = radius(tilde(b.inflated()).m, cfg);
    r.values.emplace_back(branch == 0 ? "omega" : "omega_branch2", omega);
    add_equal(r, branch == 0 ? "omega = target" : "omega = target (beta + pi)", omega, target);
  }
  finish(r, target, cfg.tol);
  return r;
}

BlockReport check_pinch(const BlockOperator& b, const BlockConfig& cfg) {
  require_blocks_bounded(b, "check_pinch");
  const int d = b.d();
  const Matrix full = tilde(b.inflated()).m;
  const double omega = radius(full, cfg);
  const auto l = lifted_blocks(b);
  const int r_dim = b.base().rank();

  BlockReport r;
  r.check = "pinch";
  r.values = {{"omega", omega}};
  for (int i = 0; i < d; ++i) add_lower(r, index_label("diag", i), omega, radius(l[i][i], cfg));
  if (d > 1) {
    for (int i = 0; i < d; ++i) {
      Matrix s = full;
      s.middleRows(i * r_dim, r_dim).setZero();
      s.middleCols(i * r_dim, r_dim).setZero();
      add_lower(r, index_label("S", i), omega, radius(s, cfg));
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        add_lower(r, pair_label("compression", i, j), omega, radius(two_by_two(l, i, j), cfg));
  }
  finish(r, spectral_norm(full), cfg.tol);
  return r;
}

BlockReport check_crawford_bound(const BlockOperator& b, const BlockConfig& cfg) {
  require_blocks_bounded(b, "check_crawford_bound");
  const int d = b.d();
  const Matrix full = tilde(b.inflated()).m;
  const double omega = radius(full, cfg);
  const auto l = lifted_blocks(b);

  BlockReport r;
  r.check = "crawford";
  r.values = {{"omega", omega}};
  for (int k = 0; k < d; ++k) add_lower(r, index_label("diag", k), omega, radius(l[k][k], cfg));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double m = crawford_of(0.5 * (l[i][i] + l[j][j]), cfg.sweep);
      const double wp = radius(0.5 * (l[i][j] + l[j][i]), cfg);
      const double wm = radius(0.5 * (l[i][j] - l[j][i]), cfg);
      const double alpha = std::sqrt(m * m + wp * wp);
      const double beta = std::sqrt(m * m + wm * wm);
      if (d == 2) {
        r.values.emplace_back("alpha", alpha);
        r.values.emplace_back("beta", beta);
      }
      add_lower(r, pair_label("alpha", i, j), omega, alpha);
      add_lower(r, pair_label("beta", i, j), omega, beta);
    }
  finish(r, spectral_norm(full), cfg.tol);
  return r;
}

BlockReport check_triangular(const BlockOperator& b, const BlockConfig& cfg) {
  const int d = b.d();
  double big = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) big = std::max(big, b.block(i, j).norm());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j)
      if (b.block(i, j).norm() > 1e-12 * big)
        raise(ErrorCode::NotUpperTriangular,
              "check_triangular: block " + pair_label("", i, j) + " below the diagonal is nonzero");
  require_blocks_bounded(b, "check_triangular");
  const Matrix full = tilde(b.inflated()).m;
  const double omega = radius(full, cfg);
  const auto l = lifted_blocks(b);

  BlockReport r;
  r.check = "triangular";
  r.values = {{"omega", omega}};
  for (int k = 0; k < d; ++k) add_lower(r, index_label("diag", k), omega, radius(l[k][k], cfg));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      add_lower(r, pair_label("half_norm", i, j), omega, 0.5 * spectral_norm(l[i][j]));
  finish(r, spectral_norm(full), cfg.tol);
  return r;
}

BlockReport check_phase_invariance(const BlockOperator& b, const BlockConfig& cfg) {
  if (b.d() != 2)
    raise(ErrorCode::DimensionMismatch, "check_phase_invariance: needs a 2 x 2 operator matrix");
  require_blocks_bounded(b, "check_phase_invariance");
  const Scalar i1(0.0, 1.0);
  const Weight& w = b.base();
  const int n = w.dim();
  const double omega = radius(tilde(b.inflated()).m, cfg);

  BlockOperator rotated = BlockOperator::build(
      {{b.block(0, 0), i1 * b.block(0, 1)}, {-i1 * b.block(1, 0), b.block(1, 1)}}, w);
  const double omega_rot = radius(tilde(rotated.inflated()).m, cfg);

  const Matrix eye = Matrix::Identity(n, n);
  const Matrix zero = Matrix::Zero(n, n);
  BlockOperator u = BlockOperator::build({{-i1 * eye, zero}, {zero, eye}}, w);
  const Matrix conj = a_adjoint(u.inflated()).mat() * b.inflated().mat() * u.inflated().mat();
  const double omega_conj =
      radius(lift_unchecked(conj, b.inflated_weight()), cfg);

  BlockReport r;
  r.check = "phase";
  r.values = {{"omega", omega}, {"omega_rotated", omega_rot}, {"omega_conjugated", omega_conj}};
  add_equal(r, "rotated", omega_rot, omega);
  add_equal(r, "U^# T U", omega_conj, omega);
  finish(r, a_opnorm(b.inflated()), cfg.tol);
  return r;
}

BlockReport check_unitary_invariance(const SemiOperator& t, const SemiOperator& u,
                                     const BlockConfig& cfg) {
  require_same_context(t, u, "check_unitary_invariance");
  require_a_bounded(t, "check_unitary_invariance");
  if (!is_a_unitary(u))
    raise(ErrorCode::NotAAdjointable, "check_unitary_invariance: U is not A-unitary");
  const Weight& w = t.context();
  const Matrix conj = a_adjoint(u).mat() * t.mat() * u.mat();
  const double omega = radius(lift_unchecked(t.mat(), w), cfg);
  const double omega_conj = radius(lift_unchecked(conj, w), cfg);

  BlockReport r;
  r.check = "unitary_invariance";
  r.values = {{"omega", omega}, {"omega_conjugated", omega_conj}};
  add_equal(r, "U^# T U", omega_conj, omega);
  finish(r, a_opnorm(t), cfg.tol);
  return r;
}

BlockReport check_block_adjoint(const BlockOperator& b, const BlockConfig& cfg) {
  BlockOperator adj = block_a_adjoint(b);
  const Matrix direct = a_adjoint(b.inflated()).mat();
  const Matrix lifted = tilde(adj.inflated()).m;
  const Matrix lift_t = tilde(b.inflated()).m;

  BlockReport r;
  r.check = "adjoint";
  const double diff = (adj.inflated().mat() - direct).norm();
  const double lift_diff = (lifted - lift_t.adjoint()).norm();
  r.values = {{"blockwise_vs_inflated", diff}, {"lift_vs_conjugate_transpose", lift_diff}};
  add_equal(r, "blockwise = inflated", diff, 0.0);
  add_equal(r, "lift = conjugate transpose", lift_diff, 0.0);
  const double scale = std::max(b.inflated().mat().norm(), 1.0) *
                       std::max(1.0, b.base().scale() * b.base().pinv().norm());
  BlockConfig c = cfg;
  c.tol = std::max(cfg.tol, 1e-10);
  finish(r, scale, c.tol);
  return r;
}

}  // namespace semihilb
