#pragma once

#include "whfact/core.hpp"
#include "whfact/representation.hpp"

#include <limits>
#include <string>
#include <vector>

namespace whfact {

// The algebraic Riccati equations attached to a stable representation.
//
// Ricc1 (solution-dependent center):
//   Q = alpha_-*Q*alpha_+ + (beta_- - alpha_-*Q*beta_+)
//         * (delta - gamma_-*Q*beta_+)^{-1} * (gamma_+ - gamma_-*Q*alpha_+)
//
// Ricc2 (constant center R(0)^{-1}; requires alpha_- and R(0) invertible):
//   Q = alpha_-*Q*alpha_+ + (beta_- - alpha_-*Q*beta_+)
//         * R(0)^{-1} * (gamma_+ - gamma_-*alpha_-^{-1}*Q)
//
// Left (the plus/minus mirror of Ricc1, governing the left factorization):
//   Q = alpha_+*Q*alpha_- + (beta_+ - alpha_+*Q*beta_-)
//         * (delta - gamma_+*Q*beta_-)^{-1} * (gamma_- - gamma_+*Q*alpha_-)
enum class RiccatiEquation { Ricc1, Ricc2, Left };

enum class SolveMethod { Subspace, Toeplitz, Iterate };

// A (candidate) solution together with the operators that certify whether it
// is stabilizing.  For the right equations
//   alpha_+^o = alpha_+ - beta_+*(center)^{-1}*(gamma_+ - gamma_-*Q*alpha_+)
//   alpha_-^o = alpha_- - (beta_- - alpha_-*Q*beta_+)*(center)^{-1}*gamma_-
// and Q is stabilizing when the residual is small and *both* operators are
// exponentially stable: the factor inverses carry alpha_+^o in a z-ahead
// realization (poles at 1/spec) and alpha_-^o in a resolvent realization
// (poles at spec), so canonicity needs both spectra inside the open disc.
// For Ricc2 the minus operator is only available through its inverse
//   (alpha_-^o)^{-1} = alpha_-^{-1} + alpha_-^{-1}*(beta_- - alpha_-*Q*beta_+)
//                        * R(0)^{-1} * gamma_-*alpha_-^{-1},
// stored in ricc2_inverse_op; when that matrix is singular no stabilizing
// certificate exists (margin_minus is +inf).
struct RiccatiCertificate {
  ComplexMatrix q;
  RiccatiEquation equation = RiccatiEquation::Ricc1;
  ComplexMatrix alpha_plus_circ;          // stable operator on the plus space
  ComplexMatrix alpha_minus_circ;         // stable operator on the minus space (empty if unavailable)
  ComplexMatrix ricc2_inverse_op;         // Ricc2 only: (alpha_-^o)^{-1} as computed directly
  double residual_norm = std::numeric_limits<double>::infinity();
  double margin_plus = std::numeric_limits<double>::infinity();   // rho(alpha_plus_circ)
  double margin_minus = std::numeric_limits<double>::infinity();  // rho(alpha_minus_circ)
  bool stabilizing = false;
  std::vector<std::string> notes;
};

// Residual norms of the three equations at a candidate Q.  Shapes: Q is
// p- x p+ for the right equations, p+ x p- for the left one.  Throw
// std::domain_error when an inverse required by the equation is singular.
double residual_ricc1(const StableRepresentation& rep, const ComplexMatrix& q,
                      const Tolerances& tol = {});
double residual_ricc2(const StableRepresentation& rep, const ComplexMatrix& q,
                      const Tolerances& tol = {});
double residual_left(const StableRepresentation& rep, const ComplexMatrix& q,
                     const Tolerances& tol = {});

// Builds the certificate for a candidate solution of the given equation:
// residual, both circ operators, stability margins.  Throws only when shapes
// are wrong or an inverse required to *write down* the equation fails; every
// mathematical negative lands in the certificate.
RiccatiCertificate circ_operators(const StableRepresentation& rep, const ComplexMatrix& q,
                                  RiccatiEquation eq, const Tolerances& tol = {});

// Attempts to produce the stabilizing solution of the right equation.
//   Subspace: via the spectral subspaces of A^x on the converted realization
//             (needs alpha_- and R(0) invertible);
//   Toeplitz: via finite Toeplitz truncations (no invertibility needed);
//   Iterate:  fixed-point iteration on Ricc1 (local convergence only).
// Failure is reported through a certificate with stabilizing=false and notes.
RiccatiCertificate solve_right_stabilizing(const StableRepresentation& rep,
                                           SolveMethod method = SolveMethod::Subspace,
                                           const Tolerances& tol = {});

// Same for the left equation; implemented on the swapped representation.
RiccatiCertificate solve_left_stabilizing(const StableRepresentation& rep,
                                          SolveMethod method = SolveMethod::Subspace,
                                          const Tolerances& tol = {});

}  // namespace whfact
