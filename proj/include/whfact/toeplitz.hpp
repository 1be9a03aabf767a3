#pragma once

#include "whfact/core.hpp"
#include "whfact/representation.hpp"
#include "whfact/riccati.hpp"

#include <optional>
#include <vector>

namespace whfact {

// Finite section of the block Toeplitz operator of R together with the
// truncated controllability/observability maps of the representation:
//   t[i][j] = R_{i-j}  (block indices 0..n-1),
//   row_map = [beta_-, alpha_-*beta_-, ..., alpha_-^{n-1}*beta_-]   (p- x n*m)
//   col_map = [gamma_+; gamma_+*alpha_+; ...; gamma_+*alpha_+^{n-1}] (n*m x p+)
// tail_* bound the dropped coefficient mass.
struct ToeplitzTruncation {
  int block_count = 0;
  ComplexMatrix t;
  ComplexMatrix row_map;
  ComplexMatrix col_map;
  double tail_minus = 0.0;
  double tail_plus = 0.0;
};

ToeplitzTruncation build_truncation(const StableRepresentation& rep, int block_count);

// Stabilizing-solution candidate from finite sections:
//   Q_n = row_map * t^{-1} * col_map
// over the doubling schedule n = 8, 16, ..., max_blocks, accepted when
// consecutive iterates agree to tol.residual_tol.  Certified against Ricc1
// when delta - gamma_-*Q*beta_+ is invertible, otherwise against Ricc2 when
// that is possible; non-convergence or all-singular sections yield a
// non-stabilizing certificate with notes.
RiccatiCertificate toeplitz_q_oracle(const StableRepresentation& rep, const Tolerances& tol = {},
                                     int max_blocks = 4096);

struct ToeplitzProfileEntry {
  int block_count = 0;
  double rcond = 0.0;                 // of the finite section (LU estimate)
  std::optional<double> q_delta;      // ||Q_{2n} - Q_n|| when 2n is also profiled
};

// rcond of the finite sections over the given block counts, plus the
// Cauchy-type differences of the Q iterates between consecutive doublings.
std::vector<ToeplitzProfileEntry> toeplitz_invertibility_profile(
    const StableRepresentation& rep, const std::vector<int>& block_counts,
    const Tolerances& tol = {});

}  // namespace whfact
