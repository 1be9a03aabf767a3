#pragma once

#include "whfact/core.hpp"
#include "whfact/representation.hpp"

#include <functional>
#include <limits>
#include <utility>

namespace whfact {

// Spectral decomposition of a matrix with no eigenvalues on the unit circle:
// bases for the invariant subspaces belonging to the eigenvalues inside and
// outside the open unit disc, and the (generally oblique) Riesz projector
// onto the inside subspace along the outside one.
struct SpectralSplit {
  Eigen::Index dim_inside = 0;
  ComplexMatrix basis_inside;   // n x dim_inside, orthonormal columns
  ComplexMatrix basis_outside;  // n x (n - dim_inside), orthonormal columns
  ComplexMatrix projector;      // n x n, image = inside, kernel = outside
};

// Throws std::domain_error when some eigenvalue modulus is within
// tol.spectral_margin of 1 (the split is then ill-posed).
SpectralSplit spectral_split_unit_circle(const ComplexMatrix& m, const Tolerances& tol = {});

// Complex Schur form with the eigenvalues satisfying `select` moved to the
// leading block by unitary similarity.  Returns (U, T) with m = U*T*U^H.
std::pair<ComplexMatrix, ComplexMatrix> ordered_schur(
    const ComplexMatrix& m, const std::function<bool(const Complex&)>& select);

// Outcome of testing one of the two matching conditions on a dichotomous
// realization: whether the state space is the direct sum of the designated
// invariant subspaces of A and A^x, the projection implementing the
// splitting, the angular operator of the graph subspace, and the condition
// number of the stacked basis.
struct MatchingDecomposition {
  bool exists = false;
  ComplexMatrix projection;  // for right: onto X+^x along X-; for left: onto X-^x along X+
  ComplexMatrix angular;     // right: Q with X+^x = Im [Q; I]; left: G with X-^x = Im [I; G]
  double condition = std::numeric_limits<double>::infinity();
};

// Right matching: X = X- (+) X+^x where X+^x is the spectral subspace of A^x
// inside the disc.  Requires D invertible and A, A^x dichotomous (throws
// std::domain_error otherwise).
MatchingDecomposition matching_right(const DichotomousRealization& real,
                                     const Tolerances& tol = {});

// Left matching: X = X-^x (+) X+ where X-^x is the spectral subspace of A^x
// outside the disc.
MatchingDecomposition matching_left(const DichotomousRealization& real,
                                    const Tolerances& tol = {});

// Residual norm of the subspace Riccati equation satisfied by the angular
// operator of the right matching:
//   A-*Q - Q*A+ + (Q*B+ - B-)*D^{-1}*(C-*Q + C+) = 0,  Q: dim_minus x dim_plus.
double riccati_dichot_residual(const DichotomousRealization& real, const ComplexMatrix& q,
                               const Tolerances& tol = {});

}  // namespace whfact
