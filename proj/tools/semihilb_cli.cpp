// semihilb: gauges, certifiers and inequality checks for operators on a
// semi-Hilbertian space given by a PSD weight.
//
// Exit codes: 0 holds/pass, 1 relation fails/violation, 2 input error,
// 3 mathematical precondition failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semihilb/block_operator.hpp"
#include "semihilb/certify.hpp"
#include "semihilb/error.hpp"
#include "semihilb/gauges.hpp"
#include "semihilb/genfuzz.hpp"
#include "semihilb/json_io.hpp"
#include "semihilb/rank_one.hpp"

using namespace semihilb;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;
constexpr int kPrecondition = 3;

constexpr const char* kTolEnv = "SEMIHILB_TOL";

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) raise(ErrorCode::ParseError, "cannot open " + path);
  buf << f.rdbuf();
  return buf.str();
}

// --tol wins over the environment, which wins over the built-in default.
double resolve_tol(double flag, double fallback) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv(kTolEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0))
      raise(ErrorCode::ParseError, std::string(kTolEnv) + " is not a positive number: " + env);
    return v;
  }
  return fallback;
}

struct Loaded {
  Instance inst;
  Weight w;
};

Loaded load(const std::string& path) {
  Instance inst = parse_instance(read_input(path));
  Weight w = Weight::build(inst.a);
  return {std::move(inst), std::move(w)};
}

const Matrix& need(const std::optional<Matrix>& m, const char* key) {
  if (!m) raise(ErrorCode::ParseError, std::string("instance has no \"") + key + "\"");
  return *m;
}

const Vector& need(const std::optional<Vector>& v, const char* key) {
  if (!v) raise(ErrorCode::ParseError, std::string("instance has no \"") + key + "\"");
  return *v;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_radius(const std::string& file, int grid, double tol_flag, const std::string& profile) {
  Loaded l = load(file);
  const double tol = resolve_tol(tol_flag, 1e-8);
  SemiOperator t = SemiOperator::wrap(need(l.inst.t, "T"), l.w);
  require_a_bounded(t, "radius");
  SweepConfig cfg;
  cfg.grid = grid;
  RangeProfile p = profile_of(tilde(t).m, cfg, !profile.empty());
  const double norm = a_opnorm(t);
  Json j;
  j["omega"] = p.omega;
  j["crawford"] = p.crawford;
  j["norm"] = norm;
  j["spectral_radius"] = a_spectral_radius(t);
  j["normaloid"] = std::abs(norm - p.omega) <= tol * std::max(norm, 1e-300);
  j["rank"] = l.w.rank();
  j["sweep"] = to_json(p.meta);
  print(j);
  if (!profile.empty()) write_profile(p, profile);
  return kPass;
}

CertifyConfig certify_config(double tol_flag, int grid) {
  CertifyConfig cfg;
  cfg.decision_tol = resolve_tol(tol_flag, cfg.decision_tol);
  if (grid > 0) cfg.sweep.grid = grid;
  return cfg;
}

int cmd_ortho(const std::string& file, const std::string& relation, double tol_flag, int grid,
              int beta_grid) {
  Loaded l = load(file);
  CertifyConfig cfg = certify_config(tol_flag, grid);
  SemiOperator t = SemiOperator::wrap(need(l.inst.t, "T"), l.w);
  SemiOperator s = SemiOperator::wrap(need(l.inst.s, "S"), l.w);
  Verdict v = relation == "bj" ? bj_orthogonal(t, s, cfg) : wa_orthogonal(t, s, cfg);
  Json j = to_json(v);
  if (relation == "wa" && v.holds)
    j["crosscheck"] = to_json(wa_ortho_crosscheck(t, s, v, beta_grid));
  print(j);
  return v.holds ? kPass : kFail;
}

int cmd_parallel(const std::string& file, const std::string& relation, double tol_flag,
                 int grid) {
  Loaded l = load(file);
  CertifyConfig cfg = certify_config(tol_flag, grid);
  Verdict v;
  if (relation == "vec") {
    AVector x(need(l.inst.x, "x"), l.w);
    AVector y(need(l.inst.y, "y"), l.w);
    v = vec_parallel(x, y, cfg.decision_tol);
  } else {
    SemiOperator t = SemiOperator::wrap(need(l.inst.t, "T"), l.w);
    SemiOperator s = SemiOperator::wrap(need(l.inst.s, "S"), l.w);
    v = relation == "norm" ? norm_parallel(t, s, cfg) : wa_parallel(t, s, cfg);
  }
  print(to_json(v));
  return v.holds ? kPass : kFail;
}

// Off-diagonal pair for the two-operator checks: T and S when present,
// otherwise blocks (1,2) and (2,1).
std::pair<SemiOperator, SemiOperator> off_diagonal(const Loaded& l) {
  if (l.inst.t && l.inst.s)
    return {SemiOperator::wrap(*l.inst.t, l.w), SemiOperator::wrap(*l.inst.s, l.w)};
  if (l.inst.blocks.size() != 2)
    raise(ErrorCode::ParseError, "need T and S, or a 2 x 2 \"blocks\" layout");
  return {SemiOperator::wrap(l.inst.blocks[0][1], l.w),
          SemiOperator::wrap(l.inst.blocks[1][0], l.w)};
}

int cmd_block(const std::string& file, std::string check, double tol_flag, int grid) {
  Loaded l = load(file);
  if (check.empty()) check = l.inst.check;
  if (check.empty()) raise(ErrorCode::ParseError, "no check given (--check or \"check\")");
  BlockConfig cfg;
  if (grid > 0) cfg.sweep.grid = grid;
  BlockReport r;
  if (check == "sandwich" || check == "parallel_equality") {
    auto [t12, t21] = off_diagonal(l);
    if (check == "sandwich") {
      cfg.tol = resolve_tol(tol_flag, 1e-8);
      r = check_sandwich(t12, t21, cfg);
    } else {
      cfg.tol = resolve_tol(tol_flag, 1e-7);
      r = check_parallel_equality(t12, t21, cfg);
    }
  } else {
    if (l.inst.blocks.empty()) raise(ErrorCode::ParseError, "instance has no \"blocks\"");
    cfg.tol = resolve_tol(tol_flag, 1e-8);
    BlockOperator b = build_block(l.inst.blocks, l.w);
    if (check == "pinch") r = check_pinch(b, cfg);
    else if (check == "crawford") r = check_crawford_bound(b, cfg);
    else if (check == "triangular") r = check_triangular(b, cfg);
    else if (check == "phase") r = check_phase_invariance(b, cfg);
    else if (check == "adjoint") r = check_block_adjoint(b, cfg);
    else raise(ErrorCode::UnknownCheckName, "unknown block check: " + check);
  }
  print(to_json(r));
  return r.passed() ? kPass : kFail;
}

int cmd_rankone(const std::string& file) {
  Loaded l = load(file);
  AVector x(need(l.inst.x, "x"), l.w);
  AVector y(need(l.inst.y, "y"), l.w);
  ARankOne op = make_rank_one(x, y);
  Json j;
  const SemiOperator t = op.as_operator();
  j["norm"] = rank_one_norm(op);
  j["radius"] = rank_one_radius(op);
  j["sweep_norm"] = a_opnorm(t);
  j["sweep_radius"] = a_numerical_radius(t).first;
  j["inner"] = to_json(a_inner(x, y));
  j["matrix"] = to_json(op.matrix());
  j["adjoint"] = to_json(rank_one_adjoint(op));
  print(j);
  return kPass;
}

std::vector<std::string> split_checks(const std::string& list) {
  if (list.empty() || list == "all") return check_names();
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_fuzz(GenConfig cfg, const std::string& checks, const std::string& report_path) {
  CampaignReport r = run_campaign(cfg, split_checks(checks));
  const Json j = to_json(r, true);
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) raise(ErrorCode::ParseError, "cannot open " + report_path + " for writing");
    f << j.dump(2) << "\n";
  }
  Json summary = Json::array();
  for (const auto& c : r.checks)
    summary.push_back({{"name", c.name},
                       {"trials", c.trials},
                       {"failures", c.failures},
                       {"min_slack", std::isfinite(c.min_slack) ? Json(c.min_slack) : Json()},
                       {"near_tight", c.near_tight}});
  print({{"passed", r.passed}, {"checks", summary}});
  return r.passed ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauges and certificates for operators on semi-Hilbertian spaces"};
  app.require_subcommand(1);

  std::string file;
  double tol = 0.0;
  int grid = 0;

  auto* radius = app.add_subcommand("radius", "A-numerical radius, Crawford number, norm");
  std::string profile;
  int radius_grid = 720;
  radius->add_option("file", file, "instance JSON ('-' for stdin)")->required();
  radius->add_option("--grid", radius_grid, "support-function samples")
      ->check(CLI::Range(8, 1000000));
  radius->add_option("--tol", tol, "relative tolerance for the normaloid flag");
  radius->add_option("--profile", profile, "write the range profile (.json, .csv or .svg)");

  auto* ortho = app.add_subcommand("ortho", "Birkhoff-James or numerical-radius orthogonality");
  std::string ortho_rel = "wa";
  int beta_grid = 64;
  ortho->add_option("file", file, "instance JSON ('-' for stdin)")->required();
  ortho->add_option("--relation", ortho_rel)->check(CLI::IsMember({"bj", "wa"}));
  ortho->add_option("--tol", tol, "decision tolerance, relative to the gauge scale");
  ortho->add_option("--grid", grid, "inner sweep samples")->check(CLI::Range(8, 1000000));
  ortho->add_option("--beta-grid", beta_grid, "angles for the attaining-vector cross-check")
      ->check(CLI::Range(1, 100000));

  auto* parallel = app.add_subcommand("parallel", "norm, numerical-radius or vector parallelism");
  std::string par_rel = "norm";
  parallel->add_option("file", file, "instance JSON ('-' for stdin)")->required();
  parallel->add_option("--relation", par_rel)->check(CLI::IsMember({"norm", "wa", "vec"}));
  parallel->add_option("--tol", tol, "decision tolerance, relative to the gauge scale");
  parallel->add_option("--grid", grid, "inner sweep samples")->check(CLI::Range(8, 1000000));

  auto* block = app.add_subcommand("block", "inequality checks on operator matrices");
  std::string check;
  block->add_option("file", file, "instance JSON ('-' for stdin)")->required();
  block->add_option("--check", check)
      ->check(CLI::IsMember(
          {"sandwich", "pinch", "crawford", "triangular", "phase", "adjoint", "parallel_equality"}));
  block->add_option("--tol", tol, "slack tolerance, relative to the report scale");
  block->add_option("--grid", grid, "support-function samples")->check(CLI::Range(8, 1000000));

  auto* rankone = app.add_subcommand("rankone", "closed forms for x (x)_A y");
  rankone->add_option("file", file, "instance JSON ('-' for stdin)")->required();

  auto* fuzz = app.add_subcommand("fuzz", "randomised inequality battery");
  GenConfig gen;
  std::string checks = "all";
  std::string report;
  fuzz->add_option("--dim", gen.n, "largest dimension")->check(CLI::Range(1, 64));
  fuzz->add_option("--rank", gen.rank, "rank of A (0 draws it per instance)")
      ->check(CLI::NonNegativeNumber);
  fuzz->add_option("--trials", gen.trials, "instances per check")->check(CLI::NonNegativeNumber);
  fuzz->add_option("--seed", gen.seed);
  fuzz->add_option("--checks", checks, "comma-separated check names or 'all'");
  fuzz->add_option("--report", report, "write the full report JSON here");
  fuzz->add_option("--workers", gen.workers)->check(CLI::Range(1, 256));
  fuzz->add_flag("!--fixed-dim", gen.vary_dim, "use exactly --dim for every instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (*radius) return cmd_radius(file, radius_grid, tol, profile);
    if (*ortho) return cmd_ortho(file, ortho_rel, tol, grid, beta_grid);
    if (*parallel) return cmd_parallel(file, par_rel, tol, grid);
    if (*block) return cmd_block(file, check, tol, grid);
    if (*rankone) return cmd_rankone(file);
    if (*fuzz) return cmd_fuzz(gen, checks, report);
  } catch (const Error& e) {
    std::cerr << "semihilb: " << e.what() << "\n";
    return is_input_error(e.code()) ? kInput : kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "semihilb: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
