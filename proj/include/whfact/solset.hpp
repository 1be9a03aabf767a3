#pragma once

#include "whfact/core.hpp"
#include "whfact/representation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace whfact {

// Membership of one candidate Q in the three solution sets:
//   Ricc1   : solves the solution-dependent-center equation (needs
//             delta - gamma_-*Q*beta_+ invertible, the "admissible" guard),
//   Ricc2   : solves the constant-center equation (needs R(0) invertible),
//   Ricc2'  : Ricc2 members that are also admissible for Ricc1.
// When R(0) is invertible, Ricc1 = Ricc2' as sets; when it is singular,
// Ricc2 is empty while Ricc1 may not be.
struct SolutionClassification {
  ComplexMatrix q;
  bool in_ricc1 = false;
  bool in_ricc2 = false;
  bool in_ricc2_prime = false;
  bool admissible_ricc1 = false;  // delta - gamma_-*Q*beta_+ invertible
  bool r0_invertible = false;
};

SolutionClassification classify(const StableRepresentation& rep, const ComplexMatrix& q,
                                const Tolerances& tol = {});

// Full solution sets for representations with scalar state spaces
// (p+ = p- = 1; the value dimension m may be larger).  Both equations clear
// to polynomials in the scalar unknown q:
//   Ricc2 * det R(0):                       degree <= 2,
//   Ricc1 * det(delta - q*gamma_-*beta_+):  degree <= 3,
// where the clearing determinant d(q) of Ricc1 is affine in q (rank-one
// update) and roots with d(root) ~ 0 are spurious and rejected.
struct ScalarSolutionSets {
  std::vector<SolutionClassification> solutions;  // classified distinct roots of either equation
  std::vector<Complex> ricc1_candidates;          // admissible roots of the cleared Ricc1
  std::vector<Complex> ricc2_candidates;          // roots of the cleared Ricc2
  bool ricc1_identically_satisfied = false;  // cleared Ricc1 == 0: every admissible q solves
  bool ricc2_identically_satisfied = false;  // cleared Ricc2 == 0: every q solves (R(0) invertible)
  bool ricc1_no_admissible_q = false;        // d(q) == 0 for all q: Ricc1 has no solutions at all
  bool r0_invertible = false;
  std::vector<std::string> notes;
};

// Throws std::invalid_argument unless p+ = p- = 1.
ScalarSolutionSets scalar_solution_sets(const StableRepresentation& rep,
                                        const Tolerances& tol = {});

// Right-hand side of the inversion formula for alpha_-^o:
//   alpha_-^{-1} + alpha_-^{-1}*(beta_- - alpha_-*Q*beta_+)*R(0)^{-1}*gamma_-*alpha_-^{-1}
// evaluated literally; when R(0) is singular the R(0)^{-1} factor is
// replaced by adj(R(0))/0 semantics and the call throws std::domain_error.
ComplexMatrix alphacirc_inverse_rhs(const StableRepresentation& rep, const ComplexMatrix& q,
                                    const Tolerances& tol = {});

// Checks the Schur-complement invertibility relations at the given Q:
//   (a) R(0) invertible and Q admissible  ->  alpha_-^o invertible and its
//       inverse equals alphacirc_inverse_rhs (reported as
//       "inverse_formula_error", accepted at 1e-9 relative),
//   (b) R(0) singular and Q admissible    ->  alpha_-^o singular,
//   (c) R(0) invertible -> admissibility of Q and invertibility of the
//       right-hand side above hold or fail together.
// measures: "rcond_r0", "rcond_admissible", "rcond_alpha_minus_circ",
// "rcond_rhs", "inverse_formula_error" (branch (a) only).
Verdict check_r0_lemma(const StableRepresentation& rep, const ComplexMatrix& q,
                       const Tolerances& tol = {});

// Constructive solution of: find Q with U - V*Q*W invertible (U: n x n,
// V: n x k, W: l x n, Q: k x l).  Exists iff the compression of U to
// (Im V)^perp is onto and U is injective on Ker W; both ranks are decided
// by SVD against tol.inversion_rcond.  Returns the Q assembled from the
// block construction (corner block scaled to ||U|| + 1), or nullopt when
// the criterion fails.
std::optional<ComplexMatrix> find_invertibilizing_q(const ComplexMatrix& u,
                                                    const ComplexMatrix& v,
                                                    const ComplexMatrix& w,
                                                    const Tolerances& tol = {});

}  // namespace whfact
