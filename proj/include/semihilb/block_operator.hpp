#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semihilb/certify.hpp"
#include "semihilb/semi_operator.hpp"
#include "semihilb/support_sweep.hpp"
#include "semihilb/weight.hpp"

namespace semihilb {

using BlockGrid = std::vector<std::vector<Matrix>>;

/// A d x d operator matrix acting on d copies of the base space, with the
/// weight diag(A, ..., A).
class BlockOperator {
 public:
  static BlockOperator build(BlockGrid blocks, const Weight& w);

  int d() const { return static_cast<int>(blocks_.size()); }
  int n() const { return base_.dim(); }
  const BlockGrid& blocks() const { return blocks_; }
  const Matrix& block(int i, int j) const { return blocks_[i][j]; }
  const Weight& base() const { return base_; }
  const SemiOperator& inflated() const { return inflated_; }
  const Weight& inflated_weight() const { return inflated_.context(); }

 private:
  BlockOperator(BlockGrid blocks, Weight base, SemiOperator inflated);
  BlockGrid blocks_;
  Weight base_;
  SemiOperator inflated_;
};

BlockOperator build_block(BlockGrid blocks, const Weight& w);
/// Row-major assembly of the blocks into one nd x nd matrix.
Matrix assemble(const BlockGrid& blocks);
/// Block (i, j) of the result is the A-adjoint of block (j, i).
BlockOperator block_a_adjoint(const BlockOperator& b);
/// Assembly of the blockwise lifts; equals the lift of the inflated operator.
Matrix blockwise_tilde(const BlockOperator& b);

struct SlackEntry {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  // lhs - rhs for inequalities lhs >= rhs; -|lhs - rhs| for equalities.
  double slack = 0.0;
};

struct BlockReport {
  std::string check;
  double scale = 1.0;
  double tol = 0.0;  // absolute
  std::vector<std::pair<std::string, double>> values;
  std::vector<SlackEntry> entries;

  double min_slack() const;
  bool passed() const { return min_slack() >= -tol; }
};

struct BlockConfig {
  SweepConfig sweep{};
  double tol = 1e-8;  // relative to the report scale
};

/// 1/2 ||T12 + T21||_A <= w([[0, T12], [T21^#, 0]]) <= 1/2 (||T12||_A + ||T21||_A).
BlockReport check_sandwich(const SemiOperator& t12, const SemiOperator& t21,
                           const BlockConfig& cfg = {});
/// For a norm-parallel pair with witness e^{2i beta}, the radius of
/// [[0, T12], [e^{-2i beta} T21^#, 0]] equals 1/2 (||T12||_A + ||T21||_A).
/// Both square-root branches of the witness are evaluated.
BlockReport check_parallel_equality(const SemiOperator& t12, const SemiOperator& t21,
                                    const BlockConfig& cfg = {.sweep = {}, .tol = 1e-7},
                                    const CertifyConfig& certify_cfg = {});
/// w(T) >= w(T_ii), w(S_i) and every 2 x 2 principal compression.
BlockReport check_pinch(const BlockOperator& b, const BlockConfig& cfg = {});
/// w(T) >= w(T_kk), alpha_ij, beta_ij over all pairs i < j.
BlockReport check_crawford_bound(const BlockOperator& b, const BlockConfig& cfg = {});
/// Upper-triangular T: w(T) >= w(T_kk) and ||T_ij||_A / 2.
BlockReport check_triangular(const BlockOperator& b, const BlockConfig& cfg = {});
/// 2 x 2: w(T) = w([[T11, i T12], [-i T21, T22]]) and w(U^# T U) = w(T) for
/// U = diag(-i I, I).
BlockReport check_phase_invariance(const BlockOperator& b, const BlockConfig& cfg = {});
/// w_A(U^# T U) = w_A(T) for an A-unitary U.
BlockReport check_unitary_invariance(const SemiOperator& t, const SemiOperator& u,
                                     const BlockConfig& cfg = {});
/// Lift of the inflated adjoint against the blockwise formula.
BlockReport check_block_adjoint(const BlockOperator& b, const BlockConfig& cfg = {});

}  // namespace semihilb
