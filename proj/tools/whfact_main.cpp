#include "whfact/gen.hpp"
#include "whfact/io.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace whfact;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // well-posed input, negative mathematical answer
constexpr int kExitInput = 2;     // unreadable/ill-formed input

void emit_text(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot write '" + output_path + "'");
  out << text;
}

void emit_report(Json report, const Tolerances& tol, const std::string& output_path) {
  report["schema"] = 1;
  report["tolerances"] = tolerances_to_json(tol);
  emit_text(report.dump(2) + "\n", output_path);
}

SolveMethod parse_method(const std::string& name) {
  if (name == "subspace") return SolveMethod::Subspace;
  if (name == "toeplitz") return SolveMethod::Toeplitz;
  if (name == "iterate") return SolveMethod::Iterate;
  throw std::invalid_argument("unknown method '" + name + "'");
}

bool r0_invertible(const StableRepresentation& rep, const Tolerances& tol) {
  try {
    return r0_invertibility_measure(rep, tol) >= tol.inversion_rcond;
  } catch (const std::domain_error&) {
    return false;  // alpha_minus singular: R(0) is not even defined
  }
}

int run_validate(const std::string& input, const Tolerances& tol, const std::string& output) {
  const AnyRepresentation any = load_representation(input);
  Json report;
  report["command"] = "validate";
  Verdict verdict;
  if (const auto* rep = std::get_if<StableRepresentation>(&any)) {
    report["kind"] = "stable";
    verdict = validate_stable(*rep, tol);
  } else {
    report["kind"] = "dichotomous";
    verdict = validate_dichotomous(std::get<DichotomousRealization>(any), tol);
  }
  report["verdict"] = verdict_to_json(verdict);
  report["ok"] = verdict.ok;
  emit_report(report, tol, output);
  return verdict.ok ? kExitOk : kExitNegative;
}

int run_factorize(const std::string& input, const std::string& side, const std::string& route,
                  const std::string& method_name, const Tolerances& tol,
                  const std::string& output) {
  const AnyRepresentation any = load_representation(input);
  const bool right = side == "right";
  Json report;
  report["command"] = "factorize";
  report["side"] = side;
  report["route"] = route;
  std::vector<std::string> notes;

  if (route == "riccati") {
    const StableRepresentation rep = as_stable(any, tol);
    SolveMethod method = parse_method(method_name);
    if (method == SolveMethod::Subspace && !r0_invertible(rep, tol)) {
      method = SolveMethod::Toeplitz;
      notes.push_back("R(0) singular: subspace route unavailable, used toeplitz");
    }
    const RiccatiCertificate cert = right ? solve_right_stabilizing(rep, method, tol)
                                          : solve_left_stabilizing(rep, method, tol);
    report["certificate"] = certificate_to_json(cert);
    report["notes"] = notes;
    if (!cert.stabilizing) {
      report["ok"] = false;
      emit_report(report, tol, output);
      return kExitNegative;
    }
    const FactorPair pair = right ? right_factors(rep, cert, tol) : left_factors(rep, cert, tol);
    const Verdict verdict = verify_factorization(rep, pair, tol);
    report["factorization"] = factor_pair_to_json(pair);
    report["verify"] = verdict_to_json(verdict);
    report["ok"] = verdict.ok;
    emit_report(report, tol, output);
    return verdict.ok ? kExitOk : kExitNegative;
  }

  // subspace route: matched coordinates on the dichotomous realization
  DichotomousRealization real;
  try {
    real = as_dichotomous(any, tol);
  } catch (const std::domain_error& err) {
    notes.push_back(std::string("subspace route unavailable: ") + err.what());
    report["notes"] = notes;
    report["ok"] = false;
    emit_report(report, tol, output);
    return kExitNegative;
  }
  const MatchingDecomposition match = right ? matching_right(real, tol) : matching_left(real, tol);
  report["matching"] = matching_to_json(match);
  if (!match.exists) {
    notes.push_back("state space does not split: no canonical factorization on this side");
    report["notes"] = notes;
    report["ok"] = false;
    emit_report(report, tol, output);
    return kExitNegative;
  }
  const FactorPair pair =
      right ? dichot_right_factors(real, match, tol) : dichot_left_factors(real, match, tol);
  const Verdict verdict = verify_factorization(real, pair, tol);
  report["factorization"] = factor_pair_to_json(pair);
  report["verify"] = verdict_to_json(verdict);
  report["notes"] = notes;
  report["ok"] = verdict.ok;
  emit_report(report, tol, output);
  return verdict.ok ? kExitOk : kExitNegative;
}

int run_leftright(const std::string& input, const Tolerances& tol, const std::string& output) {
  const AnyRepresentation any = load_representation(input);
  const StableRepresentation rep = as_stable(any, tol);
  Json report;
  report["command"] = "leftright";

  auto negative = [&](const std::string& reason) {
    report["ok"] = false;
    report["reason"] = reason;
    emit_report(report, tol, output);
    return kExitNegative;
  };
  if (reciprocal_condition(rep.alpha_minus) < tol.inversion_rcond)
    return negative("alpha_minus not invertible");
  if (!r0_invertible(rep, tol)) return negative("R(0) not invertible");

  const RiccatiCertificate cert = solve_right_stabilizing(rep, SolveMethod::Subspace, tol);
  report["certificate"] = certificate_to_json(cert);
  if (!cert.stabilizing) return negative("no right canonical factorization");

  const LeftRightReport lr = left_exists_given_right(rep, cert, tol);
  report["report"] = leftright_report_to_json(lr);
  report["ok"] = lr.left_exists;
  emit_report(report, tol, output);
  return lr.left_exists ? kExitOk : kExitNegative;
}

int run_solset(const std::string& input, const Tolerances& tol, const std::string& output) {
  const AnyRepresentation any = load_representation(input);
  const StableRepresentation rep = as_stable(any, tol);
  const ScalarSolutionSets sets = scalar_solution_sets(rep, tol);  // throws on non-scalar input
  Json report;
  report["command"] = "solset";
  report["solution_sets"] = solution_sets_to_json(sets);
  report["ok"] = true;
  emit_report(report, tol, output);
  return kExitOk;
}

int run_profile(const std::string& input, const std::vector<int>& sizes, const Tolerances& tol,
                const std::string& output) {
  const AnyRepresentation any = load_representation(input);
  const StableRepresentation rep = as_stable(any, tol);
  for (int n : sizes)
    if (n < 1) throw std::invalid_argument("toeplitz-profile: sizes must be positive");
  emit_text(profile_to_csv(toeplitz_invertibility_profile(rep, sizes, tol)), output);
  return kExitOk;
}

int run_gen(std::uint64_t seed, const std::vector<long long>& dims, double coupling,
            const Tolerances& tol, const std::string& output) {
  if (dims.size() != 3)
    throw std::invalid_argument("gen: --dims expects three values p-,p+,m");
  const StableRepresentation rep =
      random_stable_representation(seed, dims[0], dims[1], dims[2], coupling);
  Json report = representation_to_json(rep);
  emit_report(report, tol, output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical Wiener-Hopf factorization on the unit circle"};
  app.require_subcommand(1);

  Tolerances tol;
  if (const char* env = std::getenv("WH_TOL_RESIDUAL")) {
    try {
      tol.residual_tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "WH_TOL_RESIDUAL is not a number: '" << env << "'\n";
      return kExitInput;
    }
  }
  app.add_option("--residual-tol", tol.residual_tol, "equation/product residual acceptance");
  app.add_option("--inversion-rcond", tol.inversion_rcond, "reciprocal-condition floor");
  app.add_option("--spectral-margin", tol.spectral_margin, "distance of spectra from the circle");
  app.add_option("--circle-samples", tol.circle_samples, "sample count on the unit circle");

  std::string input, output, side = "right", route = "riccati", method = "subspace";
  std::vector<int> sizes = {8, 16, 32, 64, 128, 256};
  std::uint64_t seed = 1;
  std::vector<long long> dims = {2, 2, 2};
  double coupling = 0.3;

  CLI::App* validate = app.add_subcommand("validate", "check a representation file");
  validate->add_option("input", input, "representation JSON")->required();
  validate->add_option("-o,--output", output, "write the report here instead of stdout");

  CLI::App* factorize = app.add_subcommand("factorize", "construct and verify a factorization");
  factorize->add_option("input", input, "representation JSON")->required();
  factorize->add_option("--side", side, "right|left")
      ->check(CLI::IsMember({"right", "left"}));
  factorize->add_option("--route", route, "riccati|subspace")
      ->check(CLI::IsMember({"riccati", "subspace"}));
  factorize->add_option("--method", method, "solver for the riccati route")
      ->check(CLI::IsMember({"subspace", "toeplitz", "iterate"}));
  factorize->add_option("-o,--output", output);

  CLI::App* leftright = app.add_subcommand("leftright", "left existence from the right solution");
  leftright->add_option("input", input)->required();
  leftright->add_option("-o,--output", output);

  CLI::App* solset = app.add_subcommand("solset", "scalar solution-set enumeration");
  solset->add_option("input", input)->required();
  solset->add_option("-o,--output", output);

  CLI::App* profile = app.add_subcommand("toeplitz-profile", "finite-section conditioning CSV");
  profile->add_option("input", input)->required();
  profile->add_option("--sizes", sizes, "comma-separated block counts")->delimiter(',');
  profile->add_option("-o,--output", output);

  CLI::App* gen = app.add_subcommand("gen", "emit a seeded random representation");
  gen->add_option("--seed", seed, "PRNG seed");
  gen->add_option("--dims", dims, "p-,p+,m")->delimiter(',');
  gen->add_option("--coupling", coupling, "target sup-norm of R - delta on the circle");
  gen->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    tol.validate();
    if (*validate) return run_validate(input, tol, output);
    if (*factorize) return run_factorize(input, side, route, method, tol, output);
    if (*leftright) return run_leftright(input, tol, output);
    if (*solset) return run_solset(input, tol, output);
    if (*profile) return run_profile(input, sizes, tol, output);
    if (*gen) return run_gen(seed, dims, coupling, tol, output);
  } catch (const std::runtime_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNegative;
  }
  return kExitInput;
}
