#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whfact/factorization.hpp"
#include "whfact/gen.hpp"
#include "whfact/leftright.hpp"
#include "whfact/riccati.hpp"
#include "whfact/solset.hpp"
#include "whfact/subspaces.hpp"
#include "whfact/toeplitz.hpp"

namespace py = pybind11;
using namespace whfact;

PYBIND11_MODULE(_whfact, m) {
  m.doc() = "canonical Wiener-Hopf factorization of matrix functions on the unit circle";

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("spectral_margin", &Tolerances::spectral_margin)
      .def_readwrite("inversion_rcond", &Tolerances::inversion_rcond)
      .def_readwrite("residual_tol", &Tolerances::residual_tol)
      .def_readwrite("circle_samples", &Tolerances::circle_samples);

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("ok", &Verdict::ok)
      .def_readonly("measures", &Verdict::measures)
      .def_readonly("notes", &Verdict::notes)
      .def("__bool__", [](const Verdict& v) { return v.ok; });

  py::class_<StableRepresentation>(m, "StableRepresentation")
      .def(py::init<>())
      .def_readwrite("delta", &StableRepresentation::delta)
      .def_readwrite("gamma_plus", &StableRepresentation::gamma_plus)
      .def_readwrite("alpha_plus", &StableRepresentation::alpha_plus)
      .def_readwrite("beta_plus", &StableRepresentation::beta_plus)
      .def_readwrite("gamma_minus", &StableRepresentation::gamma_minus)
      .def_readwrite("alpha_minus", &StableRepresentation::alpha_minus)
      .def_readwrite("beta_minus", &StableRepresentation::beta_minus);

  py::class_<DichotomousRealization>(m, "DichotomousRealization")
      .def(py::init<>())
      .def_readwrite("A", &DichotomousRealization::A)
      .def_readwrite("B", &DichotomousRealization::B)
      .def_readwrite("C", &DichotomousRealization::C)
      .def_readwrite("D", &DichotomousRealization::D)
      .def_readwrite("dim_minus", &DichotomousRealization::dim_minus)
      .def_readwrite("dim_plus", &DichotomousRealization::dim_plus);

  py::enum_<RiccatiEquation>(m, "RiccatiEquation")
      .value("Ricc1", RiccatiEquation::Ricc1)
      .value("Ricc2", RiccatiEquation::Ricc2)
      .value("Left", RiccatiEquation::Left);

  py::enum_<SolveMethod>(m, "SolveMethod")
      .value("Subspace", SolveMethod::Subspace)
      .value("Toeplitz", SolveMethod::Toeplitz)
      .value("Iterate", SolveMethod::Iterate);

  py::class_<RiccatiCertificate>(m, "RiccatiCertificate")
      .def_readonly("q", &RiccatiCertificate::q)
      .def_readonly("equation", &RiccatiCertificate::equation)
      .def_readonly("alpha_plus_circ", &RiccatiCertificate::alpha_plus_circ)
      .def_readonly("alpha_minus_circ", &RiccatiCertificate::alpha_minus_circ)
      .def_readonly("ricc2_inverse_op", &RiccatiCertificate::ricc2_inverse_op)
      .def_readonly("residual_norm", &RiccatiCertificate::residual_norm)
      .def_readonly("margin_plus", &RiccatiCertificate::margin_plus)
      .def_readonly("margin_minus", &RiccatiCertificate::margin_minus)
      .def_readonly("stabilizing", &RiccatiCertificate::stabilizing)
      .def_readonly("notes", &RiccatiCertificate::notes);

  py::enum_<RealizationForm>(m, "RealizationForm")
      .value("ZAhead", RealizationForm::ZAhead)
      .value("Resolvent", RealizationForm::Resolvent);

  py::class_<RealizedFunction>(m, "RealizedFunction")
      .def_readonly("form", &RealizedFunction::form)
      .def_readonly("constant", &RealizedFunction::constant)
      .def_readonly("output", &RealizedFunction::output)
      .def_readonly("state", &RealizedFunction::state)
      .def_readonly("input", &RealizedFunction::input)
      .def("eval", [](const RealizedFunction& f, Complex z) { return f.eval(z); }, py::arg("z"));

  py::class_<WienerHopfFactor>(m, "WienerHopfFactor")
      .def_readonly("fun", &WienerHopfFactor::fun)
      .def_readonly("inverse", &WienerHopfFactor::inverse)
      .def_readonly("compressed", &WienerHopfFactor::compressed)
      .def_readonly("compressed_inverse", &WienerHopfFactor::compressed_inverse);

  py::enum_<FactorSide>(m, "FactorSide")
      .value("Right", FactorSide::Right)
      .value("Left", FactorSide::Left);

  py::class_<FactorPair>(m, "FactorPair")
      .def_readonly("side", &FactorPair::side)
      .def_readonly("minus_factor", &FactorPair::minus_factor)
      .def_readonly("plus_factor", &FactorPair::plus_factor)
      .def_readonly("split_first", &FactorPair::split_first)
      .def_readonly("split_second", &FactorPair::split_second)
      .def("product", [](const FactorPair& p, Complex z) { return p.product(z); }, py::arg("z"));

  py::class_<MatchingDecomposition>(m, "MatchingDecomposition")
      .def_readonly("exists", &MatchingDecomposition::exists)
      .def_readonly("projection", &MatchingDecomposition::projection)
      .def_readonly("angular", &MatchingDecomposition::angular)
      .def_readonly("condition", &MatchingDecomposition::condition);

  py::class_<LeftRightReport>(m, "LeftRightReport")
      .def_readonly("z", &LeftRightReport::z)
      .def_readonly("i_minus_qz", &LeftRightReport::i_minus_qz)
      .def_readonly("left_exists", &LeftRightReport::left_exists)
      .def_readonly("rcond_iqz", &LeftRightReport::rcond_iqz)
      .def_readonly("x_minus_cross_basis", &LeftRightReport::x_minus_cross_basis)
      .def_readonly("x_minus_cross_normalized", &LeftRightReport::x_minus_cross_normalized)
      .def_readonly("notes", &LeftRightReport::notes);

  py::class_<SolutionClassification>(m, "SolutionClassification")
      .def_readonly("q", &SolutionClassification::q)
      .def_readonly("in_ricc1", &SolutionClassification::in_ricc1)
      .def_readonly("in_ricc2", &SolutionClassification::in_ricc2)
      .def_readonly("in_ricc2_prime", &SolutionClassification::in_ricc2_prime)
      .def_readonly("admissible_ricc1", &SolutionClassification::admissible_ricc1)
      .def_readonly("r0_invertible", &SolutionClassification::r0_invertible);

  py::class_<ScalarSolutionSets>(m, "ScalarSolutionSets")
      .def_readonly("solutions", &ScalarSolutionSets::solutions)
      .def_readonly("ricc1_candidates", &ScalarSolutionSets::ricc1_candidates)
      .def_readonly("ricc2_candidates", &ScalarSolutionSets::ricc2_candidates)
      .def_readonly("ricc1_identically_satisfied", &ScalarSolutionSets::ricc1_identically_satisfied)
      .def_readonly("ricc2_identically_satisfied", &ScalarSolutionSets::ricc2_identically_satisfied)
      .def_readonly("ricc1_no_admissible_q", &ScalarSolutionSets::ricc1_no_admissible_q)
      .def_readonly("r0_invertible", &ScalarSolutionSets::r0_invertible)
      .def_readonly("notes", &ScalarSolutionSets::notes);

  const Tolerances default_tol;

  m.def("validate_stable", &validate_stable, py::arg("rep"), py::arg("tol") = default_tol);
  m.def("validate_dichotomous", &validate_dichotomous, py::arg("real"),
        py::arg("tol") = default_tol);
  m.def("eval_R", &eval_R, py::arg("rep"), py::arg("z"), py::arg("tol") = default_tol);
  m.def("eval_R0", &eval_R0, py::arg("rep"), py::arg("tol") = default_tol);
  m.def("eval_transfer", &eval_transfer, py::arg("real"), py::arg("z"),
        py::arg("tol") = default_tol);
  m.def("stable_to_dichotomous", &stable_to_dichotomous, py::arg("rep"),
        py::arg("tol") = default_tol);
  m.def("dichotomous_to_stable", &dichotomous_to_stable, py::arg("real"),
        py::arg("tol") = default_tol);
  m.def("sharp_dual", &sharp_dual, py::arg("rep"));
  m.def("swap_plus_minus", &swap_plus_minus, py::arg("rep"));

  m.def("residual_ricc1", &residual_ricc1, py::arg("rep"), py::arg("q"),
        py::arg("tol") = default_tol);
  m.def("residual_ricc2", &residual_ricc2, py::arg("rep"), py::arg("q"),
        py::arg("tol") = default_tol);
  m.def("residual_left", &residual_left, py::arg("rep"), py::arg("q"),
        py::arg("tol") = default_tol);
  m.def("circ_operators", &circ_operators, py::arg("rep"), py::arg("q"), py::arg("equation"),
        py::arg("tol") = default_tol);
  m.def("solve_right_stabilizing", &solve_right_stabilizing, py::arg("rep"),
        py::arg("method") = SolveMethod::Subspace, py::arg("tol") = default_tol);
  m.def("solve_left_stabilizing", &solve_left_stabilizing, py::arg("rep"),
        py::arg("method") = SolveMethod::Subspace, py::arg("tol") = default_tol);

  m.def("matching_right", &matching_right, py::arg("real"), py::arg("tol") = default_tol);
  m.def("matching_left", &matching_left, py::arg("real"), py::arg("tol") = default_tol);

  m.def(
      "right_factors",
      [](const StableRepresentation& rep, const RiccatiCertificate& cert, const Tolerances& tol) {
        return right_factors(rep, cert, tol);
      },
      py::arg("rep"), py::arg("cert"), py::arg("tol") = default_tol);
  m.def(
      "left_factors",
      [](const StableRepresentation& rep, const RiccatiCertificate& cert, const Tolerances& tol) {
        return left_factors(rep, cert, tol);
      },
      py::arg("rep"), py::arg("cert"), py::arg("tol") = default_tol);
  m.def(
      "dichot_right_factors",
      [](const DichotomousRealization& real, const MatchingDecomposition& match,
         const Tolerances& tol) { return dichot_right_factors(real, match, tol); },
      py::arg("real"), py::arg("match"), py::arg("tol") = default_tol);
  m.def(
      "dichot_left_factors",
      [](const DichotomousRealization& real, const MatchingDecomposition& match,
         const Tolerances& tol) { return dichot_left_factors(real, match, tol); },
      py::arg("real"), py::arg("match"), py::arg("tol") = default_tol);
  m.def(
      "verify_factorization",
      [](const StableRepresentation& rep, const FactorPair& pair, const Tolerances& tol) {
        return verify_factorization(rep, pair, tol);
      },
      py::arg("rep"), py::arg("pair"), py::arg("tol") = default_tol);
  m.def(
      "verify_factorization_dichotomous",
      [](const DichotomousRealization& real, const FactorPair& pair, const Tolerances& tol) {
        return verify_factorization(real, pair, tol);
      },
      py::arg("real"), py::arg("pair"), py::arg("tol") = default_tol);

  py::class_<ToeplitzProfileEntry>(m, "ToeplitzProfileEntry")
      .def_readonly("block_count", &ToeplitzProfileEntry::block_count)
      .def_readonly("rcond", &ToeplitzProfileEntry::rcond)
      .def_readonly("q_delta", &ToeplitzProfileEntry::q_delta);

  m.def("toeplitz_q_oracle", &toeplitz_q_oracle, py::arg("rep"), py::arg("tol") = default_tol,
        py::arg("max_blocks") = 4096);
  m.def("toeplitz_invertibility_profile", &toeplitz_invertibility_profile, py::arg("rep"),
        py::arg("block_counts"), py::arg("tol") = default_tol);

  m.def("classify", &classify, py::arg("rep"), py::arg("q"), py::arg("tol") = default_tol);
  m.def("scalar_solution_sets", &scalar_solution_sets, py::arg("rep"),
        py::arg("tol") = default_tol);
  m.def("alphacirc_inverse_rhs", &alphacirc_inverse_rhs, py::arg("rep"), py::arg("q"),
        py::arg("tol") = default_tol);
  m.def("check_r0_lemma", &check_r0_lemma, py::arg("rep"), py::arg("q"),
        py::arg("tol") = default_tol);
  m.def("find_invertibilizing_q", &find_invertibilizing_q, py::arg("u"), py::arg("v"),
        py::arg("w"), py::arg("tol") = default_tol);

  m.def("lyapunov_z", &lyapunov_z, py::arg("rep"), py::arg("cert"), py::arg("tol") = default_tol);
  m.def("left_exists_given_right", &left_exists_given_right, py::arg("rep"), py::arg("cert"),
        py::arg("tol") = default_tol);

  m.def("random_stable_representation", &random_stable_representation, py::arg("seed"),
        py::arg("dim_minus"), py::arg("dim_plus"), py::arg("dim_value"), py::arg("coupling"));
}
