#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "semihilb/semi_operator.hpp"
#include "semihilb/support_sweep.hpp"
#include "semihilb/weight.hpp"

namespace semihilb {

enum class Relation { BJOrtho, WAOrtho, NormParallel, WAParallel, VecParallel };

std::string_view to_string(Relation r);

struct CertifyConfig {
  // Relative to the gauge scale of the instance.
  double decision_tol = 1e-7;
  // Sweep used for every numerical radius evaluated inside a search.
  SweepConfig sweep{.grid = 90};
  int polar_angles = 24;
  int polar_radii = 16;
  int phase_grid = 720;
  int phase_refine = 5;
  double phase_tol = 1e-7;
  // Bits of precision requested from each nested Brent search.
  int brent_bits = 26;
};

struct Verdict {
  Relation relation = Relation::BJOrtho;
  bool holds = false;
  // Signed slack at the decision boundary; holds <=> margin >= -tol.
  double margin = 0.0;
  // The extremal value found (min over gamma, max over lambda, |<x|y>_A|).
  double extremal = 0.0;
  // What the extremal value is compared against.
  double reference = 0.0;
  // gamma for orthogonality, the unimodular lambda for parallelism.
  std::optional<Scalar> witness;
  std::optional<Vector> witness_vector;
  double decision_tol = 0.0;  // absolute, after scaling
  double scale = 0.0;
  int sweep_grid = 0;
  std::string method;
  // Sequence-characterisation cross-check, when the relation has one.
  std::optional<double> cross_check_value;
  std::optional<bool> cross_check_agrees;
};

/// ||T + gamma S||_A >= ||T||_A for all complex gamma.
Verdict bj_orthogonal(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg = {});
/// omega_A(T + gamma S) >= omega_A(T) for all complex gamma.
Verdict wa_orthogonal(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg = {});
/// ||T + lambda S||_A = ||T||_A + ||S||_A for some unimodular lambda.
Verdict norm_parallel(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg = {});
/// omega_A(T + lambda S) = omega_A(T) + omega_A(S) for some unimodular lambda.
Verdict wa_parallel(const SemiOperator& t, const SemiOperator& s, const CertifyConfig& cfg = {});
/// Cauchy-Schwarz equality |<x|y>_A| = ||x||_A ||y||_A.
Verdict vec_parallel(const AVector& x, const AVector& y, double tol = 1e-7);

struct CrosscheckResult {
  bool evaluated = false;
  bool passed = false;
  int beta_count = 0;
  int misses = 0;
  // Smallest best-case value of Re(e^{i beta} <x|Tx>_A <Sx|x>_A) over the grid.
  double worst = 0.0;
  int attaining_angles = 0;
};

/// Searches omega_A-attaining vectors of T for each beta on a grid. A miss
/// does not overturn the verdict: only a computable part of the attaining
/// set is explored.
CrosscheckResult wa_ortho_crosscheck(const SemiOperator& t, const SemiOperator& s,
                                     const Verdict& verdict, int beta_grid = 64,
                                     const SweepConfig& sweep = {});

struct BridgeReport {
  bool t_normaloid = false;
  bool t_square_null = false;  // A T^2 = 0
  bool s_normaloid = false;
  Verdict bj;
  Verdict wa;
  std::optional<Verdict> norm_par;
  std::optional<Verdict> wa_par;
  bool conforms = true;
};

/// Evaluates the normaloid / A T^2 = 0 hypotheses and checks the implication
/// between the computed verdicts that each hypothesis guarantees.
BridgeReport normaloid_bridge_check(const SemiOperator& t, const SemiOperator& s,
                                    const CertifyConfig& cfg = {});

/// min over gamma in the disc |gamma| <= radius of a convex f, searched on
/// the square [-radius, radius]^2.
struct ConvexMin {
  Scalar argmin;
  double value = 0.0;
  int evaluations = 0;
};
ConvexMin minimize_convex_plane(const std::function<double(Scalar)>& f, double radius,
                                const CertifyConfig& cfg);

}  // namespace semihilb
