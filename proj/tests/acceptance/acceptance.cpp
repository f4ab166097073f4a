// Acceptance battery: one PASS/FAIL line per criterion. An optional list of
// criterion numbers on the command line restricts the run.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "semihilb/block_operator.hpp"
#include "semihilb/certify.hpp"
#include "semihilb/gauges.hpp"
#include "semihilb/genfuzz.hpp"
#include "semihilb/json_io.hpp"
#include "semihilb/rank_one.hpp"

using namespace semihilb;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Random weight and A-adjointable operator with ||T||_A = 1.
struct Drawn {
  Weight w;
  SemiOperator t;
};

Drawn draw(Rng& rng, int nlo, int nhi) {
  const int n = rng.uniform_int(nlo, nhi);
  Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
  SemiOperator t = gen_adjointable(rng, w);
  return {w, t};
}

Outcome equivalence_band() {
  int bad = 0;
  double worst = 1.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng(101, 1, i);
    auto [w, t] = draw(rng, 2, 6);
    const double norm = a_opnorm(t);
    const double omega = a_numerical_radius(t).first;
    const double slack = std::min(omega - (0.5 * norm - 1e-8), norm + 1e-8 - omega);
    worst = std::min(worst, slack);
    if (slack < 0 || std::abs(norm - 1.0) > 1e-12) ++bad;
  }
  return {bad == 0, "1000 instances, violations " + std::to_string(bad) + ", min slack " +
                        fmt("%.3e", worst)};
}

Outcome lift_fidelity() {
  double gap_omega = 0, gap_norm = 0, gap_adj = 0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng(101, 1, i);
    auto [w, t] = draw(rng, 2, 6);
    gap_omega = std::max(gap_omega,
                         std::abs(a_numerical_radius(t).first - oracle::pencil_radius(w.matrix(), t.mat())));
    gap_norm = std::max(gap_norm, std::abs(a_opnorm(t) - oracle::pencil_norm(w.matrix(), t.mat())));
    const Matrix lift = tilde(t).m;
    gap_adj = std::max(gap_adj, (tilde(a_adjoint(t)).m - lift.adjoint()).cwiseAbs().maxCoeff());
  }
  const bool ok = gap_omega <= 1e-9 && gap_norm <= 1e-10 && gap_adj <= 1e-9;
  return {ok, "1000 instances, max |omega - pencil| " + fmt("%.2e", gap_omega) +
                  ", max |norm - pencil| " + fmt("%.2e", gap_norm) + ", max adjoint gap " +
                  fmt("%.2e", gap_adj)};
}

Outcome rank_one_forms() {
  double gap_norm = 0, gap_radius = 0;
  for (int i = 0; i < 500; ++i) {
    Rng rng(103, 3, i);
    const int n = rng.uniform_int(2, 6);
    Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
    const AVector x(gaussian_matrix(rng, n, 1).col(0), w), y(gaussian_matrix(rng, n, 1).col(0), w);
    const ARankOne op = make_rank_one(x, y);
    const SemiOperator t = op.as_operator();
    const double scale = std::max(1.0, a_norm(x) * a_norm(y));
    gap_norm = std::max(gap_norm, std::abs(rank_one_norm(op) - a_opnorm(t)) / scale);
    gap_radius =
        std::max(gap_radius, std::abs(rank_one_radius(op) - a_numerical_radius(t).first) / scale);
  }
  return {gap_norm <= 1e-9 && gap_radius <= 1e-8,
          "500 instances, max norm gap " + fmt("%.2e", gap_norm) + ", max radius gap " +
              fmt("%.2e", gap_radius)};
}

Outcome oracle_agreement() {
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(104, 4, i);
    auto [w, t] = draw(rng, 2, 3);
    std::mt19937_64 eng(1000 + i);
    const double brute = oracle::brute_radius(w.matrix(), t.mat(), 100000, eng);
    const double sweep = a_numerical_radius(t).first;
    worst = std::max(worst, std::abs(sweep - brute) / sweep);
  }
  return {worst <= 1e-6, "200 instances, max relative gap " + fmt("%.2e", worst)};
}

struct OrthoTally {
  int pairs = 0;
  int disagreements = 0;
  double margin_gap = 0;
  int holds = 0;
};

void compare_ortho(const SemiOperator& t, const SemiOperator& s, bool numerical, OrthoTally& tally) {
  const Matrix mt = oracle::whitened(t.context().matrix(), t.mat());
  const Matrix ms = oracle::whitened(t.context().matrix(), s.mat());
  const Verdict v = numerical ? wa_orthogonal(t, s) : bj_orthogonal(t, s);
  std::function<double(const Matrix&)> coarse, accurate;
  if (numerical) {
    coarse = [](const Matrix& m) { return oracle::coarse_radius(m, 32); };
    accurate = [](const Matrix& m) { return oracle::accurate_radius(m); };
  } else {
    coarse = oracle::small_norm;
    accurate = oracle::small_norm;
  }
  const double gt = accurate(mt), gs = accurate(ms);
  double margin = 0.0;
  if (gs > 1e-12 * std::max(gt, 1.0)) {
    const auto m = oracle::gamma_grid_min(mt, ms, 2 * gt / gs + 1, coarse, accurate);
    margin = std::min(m.value, gt) - gt;
  }
  const bool oracle_holds = margin >= -v.decision_tol;
  ++tally.pairs;
  if (v.holds) ++tally.holds;
  if (oracle_holds != v.holds) ++tally.disagreements;
  tally.margin_gap = std::max(tally.margin_gap, std::abs(margin - v.margin));
}

Outcome ortho_vs_grid() {
  OrthoTally wa, bj;
  for (int i = 0; i < 200; ++i) {
    Rng rng(105, 5, i);
    const int n = rng.uniform_int(2, 3);
    Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
    SemiOperator t = gen_adjointable(rng, w), s = gen_adjointable(rng, w);
    // Every third pair is built orthogonal so both verdicts are exercised.
    if (i % 3 == 1) std::tie(t, s) = gen_orthogonal_pair(rng, w, Relation::WAOrtho);
    if (i % 3 == 2) std::tie(t, s) = gen_orthogonal_pair(rng, w, Relation::BJOrtho);
    compare_ortho(t, s, true, wa);
    compare_ortho(t, s, false, bj);
  }
  const bool ok = wa.disagreements == 0 && bj.disagreements == 0 && wa.margin_gap <= 1e-6 &&
                  bj.margin_gap <= 1e-6;
  std::ostringstream os;
  os << "200 pairs; omega: " << wa.holds << " hold, " << wa.disagreements
     << " disagreements, max margin gap " << fmt("%.2e", wa.margin_gap) << "; norm: " << bj.holds
     << " hold, " << bj.disagreements << " disagreements, max margin gap "
     << fmt("%.2e", bj.margin_gap);
  return {ok, os.str()};
}

Outcome rank_one_parallel() {
  int disagreements = 0, vec_holds = 0;
  for (int i = 0; i < 400; ++i) {
    Rng rng(106, 6, i);
    const int n = rng.uniform_int(2, 5);
    const bool constructed = i >= 300;
    Weight w = gen_weight(rng, n, rng.uniform_int(1, constructed ? std::max(1, n - 1) : n));
    const Vector xv = gaussian_matrix(rng, n, 1).col(0);
    Vector yv = gaussian_matrix(rng, n, 1).col(0);
    if (constructed) {
      const Matrix kernel = Matrix::Identity(n, n) - w.projector();
      yv = (rng.complex_normal() + Scalar(0.1, 0.0)) * xv + kernel * yv;
    }
    const AVector x(xv, w), y(yv, w);
    const bool vp = vec_parallel(x, y, 1e-7).holds;
    const bool wp = wa_parallel(make_rank_one(x, x).as_operator(), make_rank_one(y, y).as_operator()).holds;
    if (vp) ++vec_holds;
    if (vp != wp) ++disagreements;
  }
  return {disagreements == 0, "400 pairs (" + std::to_string(vec_holds) +
                                  " parallel), disagreements " + std::to_string(disagreements)};
}

Outcome block_battery() {
  GenConfig cfg;
  cfg.seed = 107;
  cfg.n = 4;
  cfg.trials = 500;
  const std::vector<std::string> checks = {"sandwich", "pinch",  "crawford",
                                           "triangular", "phase", "unitary_invariance"};
  const CampaignReport r = run_campaign(cfg, checks);
  std::ostringstream os;
  os << "500 instances each;";
  for (const auto& c : r.checks)
    os << " " << c.name << " " << c.failures << " fail (min " << fmt("%.1e", c.min_slack) << ")";
  return {r.passed, os.str()};
}

Outcome parallel_equality() {
  int failures = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(108, 8, i);
    const int n = rng.uniform_int(2, 4);
    Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
    auto [t12, t21] = gen_parallel_pair(rng, w, i % 2 ? PairKind::Collinear : PairKind::SharedNorming);
    const BlockReport r = check_parallel_equality(t12, t21);
    worst = std::max(worst, -r.min_slack());
    if (r.min_slack() < -1e-7) ++failures;
  }
  return {failures == 0, "100 pairs, failures " + std::to_string(failures) + ", max deviation " +
                             fmt("%.2e", worst)};
}

Outcome bridge() {
  int violations = 0, missing = 0, wa_holds = 0, bj_holds = 0;
  for (int i = 0; i < 200; ++i) {
    Rng rng(109, 9, i);
    const int n = rng.uniform_int(2, 4);
    Weight w = gen_weight(rng, n, rng.uniform_int(1, n));
    const bool normaloid = i < 100;
    auto [t, s] = normaloid ? gen_normaloid_pair(rng, w, i % 2 == 0)
                            : gen_square_null_pair(rng, w, i % 2 == 0);
    const BridgeReport b = normaloid_bridge_check(t, s);
    if (normaloid ? !b.t_normaloid : !b.t_square_null) ++missing;
    if (!b.conforms) ++violations;
    wa_holds += b.wa.holds;
    bj_holds += b.bj.holds;
  }
  std::ostringstream os;
  os << "200 instances (100 normaloid, 100 square-null), violations " << violations
     << ", hypothesis not detected " << missing << ", wa holds " << wa_holds << ", bj holds "
     << bj_holds;
  return {violations == 0 && missing == 0, os.str()};
}

Outcome determinism() {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.n = 4;
  cfg.trials = 10;
  const std::string a = to_json(run_campaign(cfg, check_names()), false).dump();
  const std::string b = to_json(run_campaign(cfg, check_names()), false).dump();
  cfg.workers = 4;
  const std::string c = to_json(run_campaign(cfg, check_names()), false).dump();
  return {a == b && a == c, "full battery x10 trials, " + std::to_string(a.size()) +
                                " bytes; repeat " + (a == b ? "identical" : "differs") +
                                ", 4 workers " + (a == c ? "identical" : "differs")};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
  double time_limit_s;  // zero when the criterion has none
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "equivalence band", equivalence_band, 30.0},
      {2, "lift fidelity", lift_fidelity, 0.0},
      {3, "rank-one closed forms", rank_one_forms, 0.0},
      {4, "radius vs brute-force oracle", oracle_agreement, 0.0},
      {5, "orthogonality vs gamma-grid oracle", ortho_vs_grid, 0.0},
      {6, "rank-one parallelism", rank_one_parallel, 0.0},
      {7, "operator-matrix inequality battery", block_battery, 180.0},
      {8, "parallel equality", parallel_equality, 0.0},
      {9, "normaloid and square-null bridges", bridge, 0.0},
      {10, "determinism", determinism, 0.0},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs > c.time_limit_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%.0f", c.time_limit_s) + " s budget";
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2d  %-36s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%s: %d criteria failed\n", failed ? "FAILED" : "OK", failed);
  return failed ? 1 : 0;
}
