#include "doctest.h"
#include "support.hpp"
#include "whfact/gen.hpp"
#include "whfact/io.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace whfact;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const std::string& cli_path() {
  static const std::string path = [] {
    const char* env = std::getenv("WHFACT_CLI");
    REQUIRE_MESSAGE(env != nullptr, "WHFACT_CLI must point at the binary");
    return std::string(env);
  }();
  return path;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("whfact_cli_test_" + std::to_string(static_cast<long>(getpid())));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  const fs::path out_file = work_dir() / "stdout.txt";
  const std::string cmd =
      env_prefix + cli_path() + " " + args + " > " + out_file.string() + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.out = buf.str();
  return result;
}

std::string write_rep(const StableRepresentation& rep, const std::string& name) {
  const fs::path path = work_dir() / name;
  std::ofstream out(path);
  out << representation_to_json(rep).dump(2) << "\n";
  return path.string();
}

Json parse(const RunResult& r) { return Json::parse(r.out); }

}  // namespace

TEST_CASE("gen then validate round trips through the binary") {
  const fs::path gen_file = work_dir() / "gen.json";
  RunResult gen = run("gen --seed 7 --dims 2,2,2 --coupling 0.3 -o " + gen_file.string());
  REQUIRE(gen.exit_code == 0);
  REQUIRE(fs::exists(gen_file));

  RunResult val = run("validate " + gen_file.string());
  CHECK(val.exit_code == 0);
  Json report = parse(val);
  CHECK(report["schema"] == 1);
  CHECK(report["verdict"]["ok"] == true);

  // deterministic: the same seed writes byte-identical output
  const fs::path gen_file2 = work_dir() / "gen2.json";
  RunResult gen2 = run("gen --seed 7 --dims 2,2,2 --coupling 0.3 -o " + gen_file2.string());
  REQUIRE(gen2.exit_code == 0);
  std::ifstream a(gen_file), b(gen_file2);
  std::ostringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("validate flags a non-stable representation") {
  StableRepresentation rep = whtest::counter_r0_singular(0.5);
  rep.alpha_minus = whtest::scalar(1.5);
  RunResult r = run("validate " + write_rep(rep, "bad.json"));
  CHECK(r.exit_code == 1);
  CHECK(parse(r)["verdict"]["ok"] == false);
}

TEST_CASE("validate rejects malformed input with exit 2") {
  const fs::path path = work_dir() / "broken.json";
  {
    std::ofstream out(path);
    out << "{ nope";
  }
  CHECK(run("validate " + path.string()).exit_code == 2);
  CHECK(run("validate " + (work_dir() / "missing.json").string()).exit_code == 2);
}

TEST_CASE("factorize on the singular-R(0) instance falls back to toeplitz") {
  const std::string file = write_rep(whtest::counter_r0_singular(0.5), "counter.json");
  RunResult r = run("factorize " + file + " --side right --route riccati");
  CHECK(r.exit_code == 0);
  Json report = parse(r);
  CHECK(report["ok"] == true);
  CHECK(report["verify"]["ok"] == true);
  CHECK(report["certificate"]["stabilizing"] == true);
  bool noted = false;
  for (const auto& note : report["notes"])
    if (note.get<std::string>().find("toeplitz") != std::string::npos) noted = true;
  CHECK(noted);

  // the subspace route cannot work here at all
  RunResult sub = run("factorize " + file + " --route subspace");
  CHECK(sub.exit_code == 1);
}

TEST_CASE("factorize right succeeds and left fails on the engineered instance") {
  const std::string file = write_rep(whtest::left_fails_instance(), "onesided.json");
  RunResult right = run("factorize " + file + " --side right --route riccati");
  CHECK(right.exit_code == 0);
  Json report = parse(right);
  CHECK(report["verify"]["measures"]["product_residual"].get<double>() <= 1e-8);

  RunResult right_sub = run("factorize " + file + " --side right --route subspace");
  CHECK(right_sub.exit_code == 0);

  RunResult left = run("factorize " + file + " --side left --route riccati");
  CHECK(left.exit_code == 1);
  RunResult left_sub = run("factorize " + file + " --side left --route subspace");
  CHECK(left_sub.exit_code == 1);

  RunResult lr = run("leftright " + file);
  CHECK(lr.exit_code == 1);
  Json lr_report = parse(lr);
  CHECK(lr_report["report"]["left_exists"] == false);
}

TEST_CASE("leftright agrees on a generic instance") {
  const std::string file =
      write_rep(random_stable_representation(77, 2, 2, 2, 0.3), "generic.json");
  RunResult lr = run("leftright " + file);
  CHECK(lr.exit_code == 0);
  Json report = parse(lr);
  CHECK(report["report"]["left_exists"] == true);
  CHECK(report["report"]["rcond_iqz"].get<double>() > 1e-8);
}

TEST_CASE("leftright reports the undefined case as a mathematical negative") {
  const std::string file = write_rep(whtest::counter_r0_singular(0.5), "counter_lr.json");
  RunResult lr = run("leftright " + file);
  CHECK(lr.exit_code == 1);
  Json report = parse(lr);
  CHECK(report.contains("reason"));
  CHECK(report["reason"].get<std::string>().find("R(0)") != std::string::npos);
}

TEST_CASE("solset enumerates the scalar instances") {
  const std::string file =
      write_rep(whtest::counter_two_roots_regular(), "tworoots.json");
  RunResult r = run("solset " + file);
  CHECK(r.exit_code == 0);
  Json report = parse(r);
  CHECK(report["solution_sets"]["ricc2_candidates"].size() == 2);
  CHECK(report["solution_sets"]["ricc1_candidates"].size() == 1);

  // non-scalar state spaces are an input error for this subcommand
  const std::string big =
      write_rep(random_stable_representation(79, 2, 2, 2, 0.3), "big.json");
  CHECK(run("solset " + big).exit_code == 2);
}

TEST_CASE("toeplitz-profile emits the csv schedule") {
  const std::string file =
      write_rep(random_stable_representation(83, 1, 1, 1, 0.3), "prof.json");
  RunResult r = run("toeplitz-profile " + file + " --sizes 8,16,32");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "N,rcond,q_delta");
  std::string line;
  int rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
  CHECK(r.out.find("\n8,") != std::string::npos);
}

TEST_CASE("tolerance overrides flow into the report") {
  const std::string file = write_rep(whtest::counter_r0_singular(0.5), "tol.json");
  RunResult env = run("validate " + file, "WH_TOL_RESIDUAL=0.25 ");
  CHECK(env.exit_code == 0);
  CHECK(parse(env)["tolerances"]["residual_tol"] == 0.25);

  RunResult flag = run("--residual-tol 0.5 validate " + file);
  CHECK(flag.exit_code == 0);
  CHECK(parse(flag)["tolerances"]["residual_tol"] == 0.5);

  CHECK(run("validate " + file, "WH_TOL_RESIDUAL=abc ").exit_code == 2);
  CHECK(run("--residual-tol -3 validate " + file).exit_code == 2);
}

TEST_CASE("argument errors exit with 2") {
  CHECK(run("factorize").exit_code == 2);                       // missing input
  CHECK(run("frobnicate whatever").exit_code == 2);             // unknown subcommand
  CHECK(run("gen --dims 2,2").exit_code == 2);                  // wrong arity
  const std::string file = write_rep(whtest::counter_r0_singular(0.5), "args.json");
  CHECK(run("factorize " + file + " --route scenic").exit_code == 2);
}

TEST_CASE("reruns are byte identical") {
  const std::string file =
      write_rep(random_stable_representation(91, 2, 2, 2, 0.3), "det.json");
  RunResult a = run("factorize " + file + " --side right --route riccati");
  RunResult b = run("factorize " + file + " --side right --route riccati");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}
