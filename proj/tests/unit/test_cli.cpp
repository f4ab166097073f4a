#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "semihilb/json_io.hpp"

#ifndef SEMIHILB_CLI_PATH
#error "SEMIHILB_CLI_PATH must name the CLI binary"
#endif

namespace fs = std::filesystem;
using semihilb::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SEMIHILB_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("semihilb_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("radius subcommand") {
  Scratch s;
  const auto id = s.write("id.json", R"({"A": [[1,0],[0,1]], "T": [[1,0],[0,1]]})");
  Run r = run("radius " + id);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["omega"].get<double>() == doctest::Approx(1.0));

  const auto nil = s.write("nil.json", R"({"A": [[1,0],[0,1]], "T": [[0,1],[0,0]]})");
  const auto prof = s.path("p.json");
  r = run("radius " + nil + " --grid 256 --profile " + prof);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["omega"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["norm"].get<double>() == doctest::Approx(1.0));
  const Json p = Json::parse(slurp(prof));
  CHECK(p["support"].size() == 256);
  const auto& poly = p["polygon"];
  REQUIRE(poly.size() >= 2);
  const double dr = poly.front()[0].get<double>() - poly.back()[0].get<double>();
  const double di = poly.front()[1].get<double>() - poly.back()[1].get<double>();
  CHECK(std::hypot(dr, di) <= 1e-9);

  const auto csv = s.path("p.csv"), svg = s.path("p.svg");
  CHECK(run("radius " + nil + " --profile " + csv).code == 0);
  CHECK(slurp(csv).rfind("theta,", 0) == 0);
  CHECK(run("radius " + nil + " --profile " + svg).code == 0);
  CHECK(slurp(svg).find("<svg") != std::string::npos);

  const auto leak = s.write("leak.json", R"({"A": [[1,0],[0,0]], "T": [[0,1],[0,0]]})");
  CHECK(run("radius " + leak).code == 3);
  CHECK(run("radius " + s.write("bad.json", "{\"A\": [[1,0],[0,1]")).code == 2);
  CHECK(run("radius " + s.path("missing.json")).code == 2);
  CHECK(run("radius " + nil + " --grid 2").code == 2);
}

TEST_CASE("ortho and parallel subcommands") {
  Scratch s;
  const auto d = s.write("d.json", R"({"A": [[1,0],[0,1]], "T": [[1,0],[0,-1]], "S": [[1,0],[0,1]]})");
  Run r = run("ortho " + d + " --relation wa");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["holds"] == true);
  CHECK(j["crosscheck"]["passed"] == true);
  CHECK(run("ortho " + d + " --relation bj").code == 0);

  const auto same = s.write("same.json", R"({"A": [[2,1],[1,2]], "T": [[1,2],[0,1]], "S": [[1,2],[0,1]]})");
  CHECK(run("ortho " + same).code == 1);

  const auto two = s.write("two.json", R"({"A": [[2,1],[1,2]], "T": [[1,[0,2]],[3,1]], "S": [[2,[0,4]],[6,2]]})");
  r = run("parallel " + two + " --relation wa");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["witness"].is_array());
  CHECK(run("parallel " + two + " --relation norm").code == 0);

  const auto vecs = s.write("v.json", R"({"A": [[1,0],[0,0]], "x": [1,0], "y": [1,99]})");
  CHECK(run("parallel " + vecs + " --relation vec").code == 0);
  CHECK(run("rankone " + vecs).code == 0);
  CHECK(run("parallel " + vecs + " --relation norm").code == 2);
  CHECK(run("parallel " + vecs + " --relation sideways").code == 2);
}

TEST_CASE("tolerance override") {
  Scratch s;
  // Cauchy-Schwarz gap of about 5e-5 relative: fails at the default, holds at 1e-3.
  const auto v = s.write("v.json", R"({"A": [[1,0],[0,1]], "x": [1,0], "y": [1,0.01]})");
  CHECK(run("parallel " + v + " --relation vec").code == 1);
  CHECK(run("parallel " + v + " --relation vec", "SEMIHILB_TOL=1e-3").code == 0);
  CHECK(run("parallel " + v + " --relation vec --tol 1e-9", "SEMIHILB_TOL=1e-3").code == 1);
  CHECK(run("parallel " + v + " --relation vec", "SEMIHILB_TOL=banana").code == 2);
}

TEST_CASE("block subcommand") {
  Scratch s;
  const auto sw = s.write("sw.json", R"({"A": [[1,0],[0,1]], "T": [[1,0],[0,1]], "S": [[1,0],[0,1]]})");
  Run r = run("block " + sw + " --check sandwich");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["values"]["lower"].get<double>() == doctest::Approx(1.0));
  CHECK(j["values"]["omega"].get<double>() == doctest::Approx(1.0));
  CHECK(j["values"]["upper"].get<double>() == doctest::Approx(1.0));

  const auto tri = s.write(
      "tri.json",
      R"({"A": [[1,0],[0,1]], "d": 2, "check": "triangular",
          "blocks": [[[[0,0],[0,0]], [[1,0],[0,1]]], [[[0,0],[0,0]], [[0,0],[0,0]]]]})");
  r = run("block " + tri);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["values"]["omega"].get<double>() == doctest::Approx(0.5));

  const auto low = s.write(
      "low.json",
      R"({"A": [[1,0],[0,1]], "blocks": [[[[0,0],[0,0]], [[1,0],[0,1]]], [[[1,0],[0,1]], [[0,0],[0,0]]]]})");
  CHECK(run("block " + low + " --check triangular").code == 3);
  CHECK(run("block " + low + " --check pinch").code == 0);
  CHECK(run("block " + low + " --check adjoint").code == 0);
  CHECK(run("block " + low + " --check phase").code == 0);
  CHECK(run("block " + low + " --check nonsense").code == 2);
  CHECK(run("block " + sw).code == 2);
}

TEST_CASE("fuzz subcommand") {
  Scratch s;
  const auto rep = s.path("r.json");
  Run r = run("fuzz --trials 0 --report " + rep);
  CHECK(r.code == 0);
  CHECK(Json::parse(slurp(rep))["passed"] == true);

  const auto a = s.path("a.json"), b = s.path("b.json");
  CHECK(run("fuzz --trials 2 --dim 3 --seed 11 --checks equivalence,rankone,pinch --report " + a).code == 0);
  CHECK(run("fuzz --trials 2 --dim 3 --seed 11 --checks equivalence,rankone,pinch --workers 2 --report " + b)
            .code == 0);
  Json ja = Json::parse(slurp(a)), jb = Json::parse(slurp(b));
  for (Json* j : {&ja, &jb}) {
    j->erase("runtime_s");
    (*j)["environment"].erase("workers");
    for (auto& c : (*j)["checks"]) c.erase("runtime_s");
  }
  CHECK(ja == jb);

  CHECK(run("fuzz --checks bogus").code == 2);
  CHECK(run("fuzz --trials -1").code == 2);
  CHECK(run("fuzz --rank 9 --dim 3").code == 2);
  CHECK(run("frobnicate").code == 2);
}
