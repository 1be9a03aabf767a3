#include "whfact/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace whfact {

namespace {

std::string format_17g(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Json complex_list_to_json(const std::vector<Complex>& values) {
  Json arr = Json::array();
  for (const Complex& v : values) arr.push_back(Json::array({v.real(), v.imag()}));
  return arr;
}

const Json& require_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw std::runtime_error(std::string("representation JSON: missing field '") + key + "'");
  return *it;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k)
      data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  j["data"] = std::move(data);
  return j;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw std::runtime_error("matrix JSON: expected an object");
  const Eigen::Index rows = require_field(j, "rows").get<Eigen::Index>();
  const Eigen::Index cols = require_field(j, "cols").get<Eigen::Index>();
  const Json& data = require_field(j, "data");
  if (rows < 0 || cols < 0) throw std::runtime_error("matrix JSON: negative dimensions");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::runtime_error("matrix JSON: data length does not match rows*cols");
  ComplexMatrix m(rows, cols);
  Eigen::Index flat = 0;
  for (const Json& entry : data) {
    if (!entry.is_array() || entry.size() != 2)
      throw std::runtime_error("matrix JSON: entries must be [re, im] pairs");
    m(flat / cols, flat % cols) = Complex(entry[0].get<double>(), entry[1].get<double>());
    ++flat;
  }
  return m;
}

Json representation_to_json(const StableRepresentation& rep) {
  Json j;
  j["kind"] = "stable";
  j["delta"] = matrix_to_json(rep.delta);
  j["gamma_plus"] = matrix_to_json(rep.gamma_plus);
  j["alpha_plus"] = matrix_to_json(rep.alpha_plus);
  j["beta_plus"] = matrix_to_json(rep.beta_plus);
  j["gamma_minus"] = matrix_to_json(rep.gamma_minus);
  j["alpha_minus"] = matrix_to_json(rep.alpha_minus);
  j["beta_minus"] = matrix_to_json(rep.beta_minus);
  return j;
}

Json representation_to_json(const DichotomousRealization& real) {
  Json j;
  j["kind"] = "dichotomous";
  j["A"] = matrix_to_json(real.A);
  j["B"] = matrix_to_json(real.B);
  j["C"] = matrix_to_json(real.C);
  j["D"] = matrix_to_json(real.D);
  j["dim_minus"] = real.dim_minus;
  j["dim_plus"] = real.dim_plus;
  return j;
}

AnyRepresentation representation_from_json(const Json& j) {
  if (!j.is_object()) throw std::runtime_error("representation JSON: expected an object");
  const std::string kind = require_field(j, "kind").get<std::string>();
  if (kind == "stable") {
    StableRepresentation rep;
    rep.delta = matrix_from_json(require_field(j, "delta"));
    rep.gamma_plus = matrix_from_json(require_field(j, "gamma_plus"));
    rep.alpha_plus = matrix_from_json(require_field(j, "alpha_plus"));
    rep.beta_plus = matrix_from_json(require_field(j, "beta_plus"));
    rep.gamma_minus = matrix_from_json(require_field(j, "gamma_minus"));
    rep.alpha_minus = matrix_from_json(require_field(j, "alpha_minus"));
    rep.beta_minus = matrix_from_json(require_field(j, "beta_minus"));
    return rep;
  }
  if (kind == "dichotomous") {
    DichotomousRealization real;
    real.A = matrix_from_json(require_field(j, "A"));
    real.B = matrix_from_json(require_field(j, "B"));
    real.C = matrix_from_json(require_field(j, "C"));
    real.D = matrix_from_json(require_field(j, "D"));
    real.dim_minus = require_field(j, "dim_minus").get<Eigen::Index>();
    real.dim_plus = require_field(j, "dim_plus").get<Eigen::Index>();
    if (real.dim_minus < 0 || real.dim_plus < 0 ||
        real.dim_minus + real.dim_plus != real.A.rows())
      throw std::runtime_error("representation JSON: dim_minus/dim_plus do not partition A");
    return real;
  }
  throw std::runtime_error("representation JSON: kind must be 'stable' or 'dichotomous'");
}

AnyRepresentation load_representation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& err) {
    throw std::runtime_error("cannot parse '" + path + "': " + err.what());
  }
  return representation_from_json(j);
}

StableRepresentation as_stable(const AnyRepresentation& any, const Tolerances& tol) {
  if (const auto* rep = std::get_if<StableRepresentation>(&any)) return *rep;
  return dichotomous_to_stable(std::get<DichotomousRealization>(any), tol);
}

DichotomousRealization as_dichotomous(const AnyRepresentation& any, const Tolerances& tol) {
  if (const auto* real = std::get_if<DichotomousRealization>(&any)) return *real;
  return stable_to_dichotomous(std::get<StableRepresentation>(any), tol);
}

Json verdict_to_json(const Verdict& verdict) {
  Json j;
  j["ok"] = verdict.ok;
  j["measures"] = Json::object();
  for (const auto& [name, value] : verdict.measures) j["measures"][name] = value;
  j["notes"] = verdict.notes;
  return j;
}

Json tolerances_to_json(const Tolerances& tol) {
  Json j;
  j["spectral_margin"] = tol.spectral_margin;
  j["inversion_rcond"] = tol.inversion_rcond;
  j["residual_tol"] = tol.residual_tol;
  j["circle_samples"] = tol.circle_samples;
  return j;
}

Json certificate_to_json(const RiccatiCertificate& cert) {
  Json j;
  switch (cert.equation) {
    case RiccatiEquation::Ricc1: j["equation"] = "ricc1"; break;
    case RiccatiEquation::Ricc2: j["equation"] = "ricc2"; break;
    case RiccatiEquation::Left: j["equation"] = "left"; break;
  }
  j["q"] = matrix_to_json(cert.q);
  j["alpha_plus_circ"] = matrix_to_json(cert.alpha_plus_circ);
  j["alpha_minus_circ"] = matrix_to_json(cert.alpha_minus_circ);
  if (cert.ricc2_inverse_op.size() > 0)
    j["ricc2_inverse_op"] = matrix_to_json(cert.ricc2_inverse_op);
  j["residual_norm"] = cert.residual_norm;
  j["margins"] = Json{{"plus", cert.margin_plus}, {"minus", cert.margin_minus}};
  j["stabilizing"] = cert.stabilizing;
  j["notes"] = cert.notes;
  return j;
}

Json realized_function_to_json(const RealizedFunction& fun) {
  Json j;
  j["form"] = fun.form == RealizationForm::ZAhead ? "z_ahead" : "resolvent";
  j["constant"] = matrix_to_json(fun.constant);
  j["output"] = matrix_to_json(fun.output);
  j["state"] = matrix_to_json(fun.state);
  j["input"] = matrix_to_json(fun.input);
  return j;
}

Json factor_pair_to_json(const FactorPair& pair) {
  auto factor_json = [](const WienerHopfFactor& factor, const char* role) {
    Json j;
    j["role"] = role;
    j["fun"] = realized_function_to_json(factor.fun);
    j["inverse"] = realized_function_to_json(factor.inverse);
    if (factor.compressed) j["compressed"] = realized_function_to_json(*factor.compressed);
    if (factor.compressed_inverse)
      j["compressed_inverse"] = realized_function_to_json(*factor.compressed_inverse);
    return j;
  };
  Json j;
  Json factors = Json::array();
  if (pair.side == FactorSide::Right) {
    j["side"] = "right";
    factors.push_back(factor_json(pair.minus_factor, "V-"));
    factors.push_back(factor_json(pair.plus_factor, "V+"));
  } else {
    j["side"] = "left";
    factors.push_back(factor_json(pair.plus_factor, "W+"));
    factors.push_back(factor_json(pair.minus_factor, "W-"));
  }
  j["factors"] = std::move(factors);
  j["split_first"] = matrix_to_json(pair.split_first);
  j["split_second"] = matrix_to_json(pair.split_second);
  return j;
}

Json matching_to_json(const MatchingDecomposition& match) {
  Json j;
  j["exists"] = match.exists;
  j["condition"] = match.condition;
  j["projection"] = matrix_to_json(match.projection);
  j["angular"] = matrix_to_json(match.angular);
  return j;
}

Json leftright_report_to_json(const LeftRightReport& report) {
  Json j;
  j["Z"] = matrix_to_json(report.z);
  j["i_minus_qz"] = matrix_to_json(report.i_minus_qz);
  j["left_exists"] = report.left_exists;
  j["rcond_iqz"] = report.rcond_iqz;
  j["x_minus_cross_basis"] = matrix_to_json(report.x_minus_cross_basis);
  if (report.left_exists)
    j["x_minus_cross_normalized"] = matrix_to_json(report.x_minus_cross_normalized);
  j["notes"] = report.notes;
  return j;
}

Json classification_to_json(const SolutionClassification& cls) {
  Json j;
  j["q"] = matrix_to_json(cls.q);
  j["in_ricc1"] = cls.in_ricc1;
  j["in_ricc2"] = cls.in_ricc2;
  j["in_ricc2_prime"] = cls.in_ricc2_prime;
  j["admissible_ricc1"] = cls.admissible_ricc1;
  j["r0_invertible"] = cls.r0_invertible;
  return j;
}

Json solution_sets_to_json(const ScalarSolutionSets& sets) {
  Json j;
  Json classified = Json::array();
  for (const SolutionClassification& cls : sets.solutions)
    classified.push_back(classification_to_json(cls));
  j["solutions"] = std::move(classified);
  j["ricc1_candidates"] = complex_list_to_json(sets.ricc1_candidates);
  j["ricc2_candidates"] = complex_list_to_json(sets.ricc2_candidates);
  j["ricc1_identically_satisfied"] = sets.ricc1_identically_satisfied;
  j["ricc2_identically_satisfied"] = sets.ricc2_identically_satisfied;
  j["ricc1_no_admissible_q"] = sets.ricc1_no_admissible_q;
  j["r0_invertible"] = sets.r0_invertible;
  j["notes"] = sets.notes;
  return j;
}

std::string profile_to_csv(const std::vector<ToeplitzProfileEntry>& entries) {
  std::ostringstream out;
  out << "N,rcond,q_delta\n";
  for (const ToeplitzProfileEntry& entry : entries) {
    out << entry.block_count << "," << format_17g(entry.rcond) << ",";
    if (entry.q_delta) out << format_17g(*entry.q_delta);
    out << "\n";
  }
  return out.str();
}

}  // namespace whfact
