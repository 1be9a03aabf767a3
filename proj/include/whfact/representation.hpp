#pragma once

#include "whfact/core.hpp"

namespace whfact {

// Realization of a function analytic in an annulus around the unit circle:
//
//   R(z) = delta + z*gamma_plus*(I - z*alpha_plus)^{-1}*beta_plus
//               + gamma_minus*(z*I - alpha_minus)^{-1}*beta_minus
//
// with both alpha blocks exponentially stable (spectral radius < 1).  The
// plus chain carries the nonnegative Fourier coefficients, the minus chain
// the negative ones.
struct StableRepresentation {
  ComplexMatrix delta;        // m x m
  ComplexMatrix gamma_plus;   // m x p+
  ComplexMatrix alpha_plus;   // p+ x p+
  ComplexMatrix beta_plus;    // p+ x m
  ComplexMatrix gamma_minus;  // m x p-
  ComplexMatrix alpha_minus;  // p- x p-
  ComplexMatrix beta_minus;   // p- x m

  Eigen::Index dim_value() const { return delta.rows(); }
  Eigen::Index dim_plus() const { return alpha_plus.rows(); }
  Eigen::Index dim_minus() const { return alpha_minus.rows(); }
};

// Realization R(z) = D + z*C*(I - z*A)^{-1}*B where A = diag(A-, A+) splits
// the state space into an anti-stable part (A- invertible with rho(A-^{-1})
// < 1, carried first) and a stable part (rho(A+) < 1).
struct DichotomousRealization {
  ComplexMatrix A;  // n x n, block diagonal w.r.t. (dim_minus, dim_plus)
  ComplexMatrix B;  // n x m
  ComplexMatrix C;  // m x n
  ComplexMatrix D;  // m x m
  Eigen::Index dim_minus = 0;
  Eigen::Index dim_plus = 0;

  Eigen::Index dim_state() const { return A.rows(); }
  Eigen::Index dim_value() const { return D.rows(); }
  ComplexMatrix a_minus() const { return A.topLeftCorner(dim_minus, dim_minus); }
  ComplexMatrix a_plus() const { return A.bottomRightCorner(dim_plus, dim_plus); }
  ComplexMatrix b_minus() const { return B.topRows(dim_minus); }
  ComplexMatrix b_plus() const { return B.bottomRows(dim_plus); }
  ComplexMatrix c_minus() const { return C.leftCols(dim_minus); }
  ComplexMatrix c_plus() const { return C.rightCols(dim_plus); }
};

struct FourierCoefficient {
  long index = 0;
  ComplexMatrix value;
};

// Shape, finiteness and stability checks.  measures: "rho_alpha_plus",
// "rho_alpha_minus".  Shape mismatches are reported as failures, not thrown.
Verdict validate_stable(const StableRepresentation& rep, const Tolerances& tol = {});

// Throws std::invalid_argument when the seven blocks are not mutually
// consistent in shape (used by every routine that consumes a representation).
void require_valid_shapes(const StableRepresentation& rep, const char* where);

// Block-diagonality of A, invertibility of A-, and the two radius conditions.
// measures: "rho_a_plus", "rho_a_minus_inverse", "rcond_a_minus",
// "offdiag_norm".
Verdict validate_dichotomous(const DichotomousRealization& real, const Tolerances& tol = {});

// Pointwise evaluation.  Throws std::domain_error when a resolvent is
// numerically singular at z (z outside the analyticity annulus).
ComplexMatrix eval_R(const StableRepresentation& rep, Complex z, const Tolerances& tol = {});

// R(0) = delta - gamma_minus*alpha_minus^{-1}*beta_minus (the z->0 limit).
// Throws std::domain_error when alpha_minus is singular.
ComplexMatrix eval_R0(const StableRepresentation& rep, const Tolerances& tol = {});

// sigma_min of R(0) gauged against both sigma_max and the magnitude of the
// two terms whose difference forms R(0).  An exact cancellation then reads
// as singular even though its rounding leftovers are formally well
// conditioned (a 1x1 matrix always has perfect relative condition).
// Invariant under global scaling of the function.
double r0_invertibility_measure(const StableRepresentation& rep, const Tolerances& tol = {});

// R_j for any integer j: R_0 = delta, R_j = gamma_plus*alpha_plus^{j-1}*beta_plus
// (j >= 1), R_{-j} = gamma_minus*alpha_minus^{j-1}*beta_minus (j >= 1).
FourierCoefficient fourier_coefficient(const StableRepresentation& rep, long j);

ComplexMatrix eval_transfer(const DichotomousRealization& real, Complex z,
                            const Tolerances& tol = {});

// State-space conversions between the two carriers.  Both require
// alpha_minus (resp. A-) invertible, and stable_to_dichotomous additionally
// a well-defined D = R(0).
DichotomousRealization stable_to_dichotomous(const StableRepresentation& rep,
                                             const Tolerances& tol = {});
StableRepresentation dichotomous_to_stable(const DichotomousRealization& real,
                                           const Tolerances& tol = {});

// A^x = A - B*D^{-1}*C, the state matrix of R(z)^{-1}.  Throws when D fails
// the invertibility floor.
ComplexMatrix a_cross(const DichotomousRealization& real, const Tolerances& tol = {});

// Realization of R#(z) = R(1/conj(z))^* obtained by conjugating and swapping
// the plus and minus chains.
StableRepresentation sharp_dual(const StableRepresentation& rep);

// Realization of R~(z) = R(1/z): swaps the roles of the plus and minus
// chains (the left factorization of R is the right factorization of R~).
StableRepresentation swap_plus_minus(const StableRepresentation& rep);

// Reorders an arbitrary realization (A,B,C,D) with sigma(A) off the unit
// circle into the dichotomous block convention via a spectral similarity.
DichotomousRealization normalize_dichotomous(const ComplexMatrix& A, const ComplexMatrix& B,
                                             const ComplexMatrix& C, const ComplexMatrix& D,
                                             const Tolerances& tol = {});

}  // namespace whfact
