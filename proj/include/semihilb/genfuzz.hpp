#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "semihilb/certify.hpp"
#include "semihilb/json_io.hpp"
#include "semihilb/semi_operator.hpp"
#include "semihilb/weight.hpp"

namespace semihilb {

struct GenConfig {
  std::uint64_t seed = 7;
  // Largest dimension; with vary_dim each instance draws n from [2, n].
  int n = 4;
  // Target rank of A; 0 draws it uniformly from [1, n] per instance.
  int rank = 0;
  int trials = 20;
  // Normalise A to lambda_max = 1 and generated operators to ||T||_A = 1.
  bool scale = true;
  bool vary_dim = true;
  int workers = 1;
};

/// Pseudorandom stream keyed by (seed, stream id, index): any instance can be
/// regenerated on its own, so sharded runs reproduce serial ones.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
  double normal();
  double uniform();  // [0, 1)
  int uniform_int(int lo, int hi);  // inclusive
  Scalar complex_normal();
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Stable 64-bit id for a check name (FNV-1a).
std::uint64_t stream_id(const std::string& name);

Matrix gaussian_matrix(Rng& rng, int rows, int cols);
/// Haar-distributed unitary (QR of a complex Gaussian with phases fixed).
Matrix haar_unitary(Rng& rng, int n);

/// A = G G^* with G an n x rank complex Gaussian; throws BadRank unless
/// 1 <= rank <= n.
Weight gen_weight(Rng& rng, int n, int rank, bool scale = true);
Weight gen_weight(const GenConfig& cfg, std::uint64_t index = 0);
/// T = A^+ M A + (I - P_A) N (I - P_A).
SemiOperator gen_adjointable(Rng& rng, const Weight& w, bool scale = true);
/// U = Q_r Lambda_r^{-1/2} V Lambda_r^{1/2} Q_r^* with V Haar-unitary.
SemiOperator gen_a_unitary(Rng& rng, const Weight& w);
/// An operator whose lift is m, plus a random A-invisible part.
SemiOperator from_lift(Rng& rng, const Matrix& m, const Weight& w);
/// A-bounded operator plus a rank-one leak from N(A) into R(A); requires rank < n.
SemiOperator gen_unbounded(Rng& rng, const Weight& w);

enum class PairKind { Collinear, SharedNorming };
/// A-norm-parallel pair; the collinear kind is also omega_A-parallel.
std::pair<SemiOperator, SemiOperator> gen_parallel_pair(Rng& rng, const Weight& w,
                                                        PairKind kind = PairKind::Collinear);
/// Orthogonal pair for the given relation (BJOrtho or WAOrtho), re-certified
/// before it is returned.
std::pair<SemiOperator, SemiOperator> gen_orthogonal_pair(Rng& rng, const Weight& w,
                                                          Relation rel = Relation::WAOrtho,
                                                          const CertifyConfig& cfg = {});
/// T with A T^2 = 0; with `orthogonal`, S is built so that T is BJ-orthogonal to S.
std::pair<SemiOperator, SemiOperator> gen_square_null_pair(Rng& rng, const Weight& w,
                                                           bool orthogonal);
/// A-normaloid T; with `orthogonal`, S is built so that T is omega_A-orthogonal to S.
std::pair<SemiOperator, SemiOperator> gen_normaloid_pair(Rng& rng, const Weight& w,
                                                         bool orthogonal);

/// Names accepted by run_campaign, in battery order.
const std::vector<std::string>& check_names();

struct CheckOutcome {
  double slack = 0.0;  // minimum over the instance's inequalities
  double scale = 1.0;
  double tol = 0.0;    // relative
  std::string detail;
  Instance reproducer;
};

/// Runs check `name` on instance `index` of the stream; throws UnknownCheckName.
CheckOutcome run_check(const std::string& name, const GenConfig& cfg, std::uint64_t index);

struct Failure {
  std::uint64_t index = 0;
  double slack = 0.0;
  double scale = 1.0;
  std::string detail;
  Instance reproducer;
};

struct CheckSummary {
  std::string name;
  int trials = 0;
  int failures = 0;
  double tol = 0.0;
  // Slack divided by the instance scale.
  double min_slack = 0.0;
  int near_tight = 0;
  double runtime_s = 0.0;
  std::vector<Failure> failure_list;
};

struct CampaignReport {
  GenConfig config;
  std::vector<CheckSummary> checks;
  bool passed = true;
  double runtime_s = 0.0;
};

/// Throws UnknownCheckName before any work if a name is not recognised.
CampaignReport run_campaign(const GenConfig& cfg, const std::vector<std::string>& checks);
Json to_json(const CampaignReport& r, bool with_runtime = true);

}  // namespace semihilb
