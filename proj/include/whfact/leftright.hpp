#pragma once

#include "whfact/core.hpp"
#include "whfact/representation.hpp"
#include "whfact/riccati.hpp"

#include <string>
#include <vector>

namespace whfact {

// Left-factorization existence test driven by a right stabilizing solution.
// With Q stabilizing for Ricc1 and Z solving the Lyapunov equation
//   Z*(alpha_-^o)^{-1} - alpha_+^o*Z = -beta_+*R(0)^{-1}*gamma_-*alpha_-^{-1}
// the similarity [I 0; Z I]*[I -Q; 0 I] block-diagonalizes A^x into
// diag((alpha_-^o)^{-1}, alpha_+^o), so the anti-stable spectral subspace of
// A^x is Im [I-QZ; -Z] and a left canonical factorization exists exactly
// when I-QZ is invertible.
struct LeftRightReport {
  ComplexMatrix z;             // p+ x p-
  ComplexMatrix i_minus_qz;    // p- x p-
  bool left_exists = false;
  double rcond_iqz = 0.0;
  ComplexMatrix x_minus_cross_basis;       // [I-QZ; -Z], (p- + p+) x p-
  ComplexMatrix x_minus_cross_normalized;  // [I; -Z*(I-QZ)^{-1}] when left_exists
  std::vector<std::string> notes;
};

// Solves the Lyapunov equation above.  Throws std::invalid_argument when the
// certificate is not a stabilizing Ricc1/Ricc2 solution or alpha_- / R(0)
// fail the invertibility floor, and std::domain_error (from the Sylvester
// solver) when the certified spectra are inconsistent with a stabilizing
// solution (overlapping spectra signal certificate corruption).
ComplexMatrix lyapunov_z(const StableRepresentation& rep, const RiccatiCertificate& cert,
                         const Tolerances& tol = {});

LeftRightReport left_exists_given_right(const StableRepresentation& rep,
                                        const RiccatiCertificate& cert,
                                        const Tolerances& tol = {});

}  // namespace whfact
