#include "whfact/riccati.hpp"

#include "whfact/subspaces.hpp"
#include "whfact/toeplitz.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace whfact {

namespace {

void require_right_shape(const StableRepresentation& rep, const ComplexMatrix& q,
                         const char* where) {
  if (q.rows() != rep.dim_minus() || q.cols() != rep.dim_plus()) {
    std::ostringstream msg;
    msg << where << ": Q must be " << rep.dim_minus() << "x" << rep.dim_plus() << ", got "
        << q.rows() << "x" << q.cols();
    throw std::invalid_argument(msg.str());
  }
}

void require_left_shape(const StableRepresentation& rep, const ComplexMatrix& q,
                        const char* where) {
  if (q.rows() != rep.dim_plus() || q.cols() != rep.dim_minus()) {
    std::ostringstream msg;
    msg << where << ": Q must be " << rep.dim_plus() << "x" << rep.dim_minus() << ", got "
        << q.rows() << "x" << q.cols();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double residual_ricc1(const StableRepresentation& rep, const ComplexMatrix& q,
                      const Tolerances& tol) {
  require_right_shape(rep, q, "residual_ricc1");
  const ComplexMatrix center =
      checked_inverse(rep.delta - rep.gamma_minus * q * rep.beta_plus, tol,
                      "residual_ricc1: delta - gamma_-*Q*beta_+");
  const ComplexMatrix res = rep.alpha_minus * q * rep.alpha_plus +
                            (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) * center *
                                (rep.gamma_plus - rep.gamma_minus * q * rep.alpha_plus) -
                            q;
  return operator_norm(res);
}

double residual_ricc2(const StableRepresentation& rep, const ComplexMatrix& q,
                      const Tolerances& tol) {
  require_right_shape(rep, q, "residual_ricc2");
  const ComplexMatrix ami = checked_inverse(rep.alpha_minus, tol, "residual_ricc2: alpha_minus");
  if (r0_invertibility_measure(rep, tol) < tol.inversion_rcond)
    throw std::domain_error("residual_ricc2: R(0) must be invertible");
  const ComplexMatrix r0inv = checked_inverse(eval_R0(rep, tol), tol, "residual_ricc2: R(0)");
  const ComplexMatrix res = rep.alpha_minus * q * rep.alpha_plus +
                            (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) * r0inv *
                                (rep.gamma_plus - rep.gamma_minus * ami * q) -
                            q;
  return operator_norm(res);
}

double residual_left(const StableRepresentation& rep, const ComplexMatrix& q,
                     const Tolerances& tol) {
  require_left_shape(rep, q, "residual_left");
  return residual_ricc1(swap_plus_minus(rep), q, tol);
}

RiccatiCertificate circ_operators(const StableRepresentation& rep, const ComplexMatrix& q,
                                  RiccatiEquation eq, const Tolerances& tol) {
  tol.validate();
  RiccatiCertificate cert;
  cert.q = q;
  cert.equation = eq;
  switch (eq) {
    case RiccatiEquation::Ricc1: {
      require_right_shape(rep, q, "circ_operators");
      cert.residual_norm = residual_ricc1(rep, q, tol);
      const ComplexMatrix center =
          checked_inverse(rep.delta - rep.gamma_minus * q * rep.beta_plus, tol,
                          "circ_operators: delta - gamma_-*Q*beta_+");
      cert.alpha_plus_circ =
          rep.alpha_plus -
          rep.beta_plus * center * (rep.gamma_plus - rep.gamma_minus * q * rep.alpha_plus);
      cert.alpha_minus_circ =
          rep.alpha_minus -
          (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) * center * rep.gamma_minus;
      cert.margin_plus = spectral_radius(cert.alpha_plus_circ);
      cert.margin_minus = spectral_radius(cert.alpha_minus_circ);
      break;
    }
    case RiccatiEquation::Ricc2: {
      require_right_shape(rep, q, "circ_operators");
      cert.residual_norm = residual_ricc2(rep, q, tol);
      const ComplexMatrix ami = checked_inverse(rep.alpha_minus, tol, "circ_operators: alpha_minus");
      if (r0_invertibility_measure(rep, tol) < tol.inversion_rcond)
        throw std::domain_error("circ_operators: R(0) must be invertible");
      const ComplexMatrix r0inv = checked_inverse(eval_R0(rep, tol), tol, "circ_operators: R(0)");
      cert.alpha_plus_circ =
          rep.alpha_plus - rep.beta_plus * r0inv * (rep.gamma_plus - rep.gamma_minus * ami * q);
      cert.margin_plus = spectral_radius(cert.alpha_plus_circ);
      cert.ricc2_inverse_op = ami + ami * (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) *
                                        r0inv * rep.gamma_minus * ami;
      if (reciprocal_condition(cert.ricc2_inverse_op) >= tol.inversion_rcond) {
        cert.alpha_minus_circ = rep.dim_minus() > 0
                                    ? ComplexMatrix(cert.ricc2_inverse_op.partialPivLu().inverse())
                                    : ComplexMatrix(0, 0);
        cert.margin_minus = spectral_radius(cert.alpha_minus_circ);
      } else {
        cert.margin_minus = std::numeric_limits<double>::infinity();
        cert.notes.push_back(
            "the inverse identity for the minus operator yields a singular matrix: "
            "no stabilizing certificate");
      }
      break;
    }
    case RiccatiEquation::Left: {
      require_left_shape(rep, q, "circ_operators");
      RiccatiCertificate inner = circ_operators(swap_plus_minus(rep), q, RiccatiEquation::Ricc1, tol);
      cert.residual_norm = inner.residual_norm;
      // the swapped minus operator acts on the original plus space and vice versa
      cert.alpha_plus_circ = inner.alpha_minus_circ;
      cert.alpha_minus_circ = inner.alpha_plus_circ;
      cert.margin_plus = inner.margin_minus;
      cert.margin_minus = inner.margin_plus;
      cert.notes = inner.notes;
      break;
    }
  }
  cert.stabilizing = cert.residual_norm <= tol.residual_tol * (1.0 + operator_norm(q)) &&
                     cert.margin_plus < 1.0 - tol.spectral_margin &&
                     cert.margin_minus < 1.0 - tol.spectral_margin;
  return cert;
}

namespace {

RiccatiCertificate fail_certificate(const StableRepresentation& rep, RiccatiEquation eq,
                                    std::vector<std::string> notes) {
  RiccatiCertificate cert;
  cert.equation = eq;
  const bool left = eq == RiccatiEquation::Left;
  cert.q = ComplexMatrix::Zero(left ? rep.dim_plus() : rep.dim_minus(),
                               left ? rep.dim_minus() : rep.dim_plus());
  cert.notes = std::move(notes);
  return cert;
}

// Necessary condition for any canonical factorization: R must be invertible
// on the unit circle.  Returns an empty string when satisfied.
std::string circle_singularity(const StableRepresentation& rep, const Tolerances& tol) {
  for (const Complex& z : unit_circle_samples(tol.circle_samples)) {
    ComplexMatrix value;
    try {
      value = eval_R(rep, z, tol);
    } catch (const std::domain_error&) {
      std::ostringstream msg;
      msg << "R is not analytic at z = (" << z.real() << ", " << z.imag()
          << ") on the unit circle";
      return msg.str();
    }
    if (reciprocal_condition(value) < tol.inversion_rcond) {
      std::ostringstream msg;
      msg << "R(z) is numerically singular at z = (" << z.real() << ", " << z.imag()
          << ") on the unit circle";
      return msg.str();
    }
  }
  return {};
}

RiccatiCertificate solve_right_subspace(const StableRepresentation& rep, const Tolerances& tol) {
  if (rep.dim_minus() > 0 && reciprocal_condition(rep.alpha_minus) < tol.inversion_rcond)
    return fail_certificate(rep, RiccatiEquation::Ricc1,
                            {"alpha_minus is singular: subspace method unavailable"});
  double r0_measure = 0.0;
  try {
    r0_measure = r0_invertibility_measure(rep, tol);
  } catch (const std::domain_error& e) {
    return fail_certificate(rep, RiccatiEquation::Ricc1, {e.what()});
  }
  if (r0_measure < tol.inversion_rcond)
    return fail_certificate(rep, RiccatiEquation::Ricc1,
                            {"R(0) is singular: subspace method unavailable"});
  MatchingDecomposition match;
  try {
    match = matching_right(stable_to_dichotomous(rep, tol), tol);
  } catch (const std::domain_error& e) {
    return fail_certificate(rep, RiccatiEquation::Ricc1, {e.what()});
  }
  if (!match.exists)
    return fail_certificate(rep, RiccatiEquation::Ricc1,
                            {"state space does not split: no right canonical factorization"});
  try {
    return circ_operators(rep, match.angular, RiccatiEquation::Ricc1, tol);
  } catch (const std::domain_error& e) {
    return fail_certificate(rep, RiccatiEquation::Ricc1,
                            {std::string("subspace candidate is inadmissible: ") + e.what()});
  }
}

RiccatiCertificate solve_right_iterate(const StableRepresentation& rep, const Tolerances& tol) {
  ComplexMatrix q = ComplexMatrix::Zero(rep.dim_minus(), rep.dim_plus());
  const int max_steps = 10000;
  double step_norm = std::numeric_limits<double>::infinity();
  for (int k = 0; k < max_steps; ++k) {
    ComplexMatrix center;
    try {
      center = checked_inverse(rep.delta - rep.gamma_minus * q * rep.beta_plus, tol,
                               "fixed-point iterate center");
    } catch (const std::domain_error& e) {
      return fail_certificate(rep, RiccatiEquation::Ricc1, {e.what()});
    }
    const ComplexMatrix next = rep.alpha_minus * q * rep.alpha_plus +
                               (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) * center *
                                   (rep.gamma_plus - rep.gamma_minus * q * rep.alpha_plus);
    step_norm = operator_norm(next - q);
    q = next;
    if (!finite_entries(q) || q.norm() > 1e8)
      return fail_certificate(rep, RiccatiEquation::Ricc1, {"fixed-point iteration diverged"});
    if (step_norm <= 1e-14 * (1.0 + q.norm())) break;
  }
  if (!(step_norm <= 1e-12 * (1.0 + q.norm())))
    return fail_certificate(rep, RiccatiEquation::Ricc1,
                            {"fixed-point iteration did not converge"});
  try {
    return circ_operators(rep, q, RiccatiEquation::Ricc1, tol);
  } catch (const std::domain_error& e) {
    return fail_certificate(rep, RiccatiEquation::Ricc1,
                            {std::string("iterate limit is inadmissible: ") + e.what()});
  }
}

}  // namespace

RiccatiCertificate solve_right_stabilizing(const StableRepresentation& rep, SolveMethod method,
                                           const Tolerances& tol) {
  tol.validate();
  const Verdict valid = validate_stable(rep, tol);
  if (!valid.ok)
    return fail_certificate(rep, RiccatiEquation::Ricc1,
                            {"representation fails validation: " +
                             (valid.notes.empty() ? std::string("invalid") : valid.notes.front())});
  const std::string circle = circle_singularity(rep, tol);
  if (!circle.empty()) return fail_certificate(rep, RiccatiEquation::Ricc1, {circle});
  switch (method) {
    case SolveMethod::Subspace:
      return solve_right_subspace(rep, tol);
    case SolveMethod::Toeplitz:
      return toeplitz_q_oracle(rep, tol);
    case SolveMethod::Iterate:
      return solve_right_iterate(rep, tol);
  }
  throw std::logic_error("solve_right_stabilizing: unknown method");
}

RiccatiCertificate solve_left_stabilizing(const StableRepresentation& rep, SolveMethod method,
                                          const Tolerances& tol) {
  RiccatiCertificate inner = solve_right_stabilizing(swap_plus_minus(rep), method, tol);
  RiccatiCertificate cert;
  cert.q = inner.q;
  cert.equation = RiccatiEquation::Left;
  cert.alpha_plus_circ = inner.alpha_minus_circ;
  cert.alpha_minus_circ = inner.alpha_plus_circ;
  cert.ricc2_inverse_op = inner.ricc2_inverse_op;
  cert.residual_norm = inner.residual_norm;
  cert.margin_plus = inner.margin_minus;
  cert.margin_minus = inner.margin_plus;
  cert.stabilizing = inner.stabilizing;
  cert.notes = inner.notes;
  return cert;
}

}  // namespace whfact
