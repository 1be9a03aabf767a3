#include "whfact/toeplitz.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace whfact {

namespace {

// Fourier coefficients R_{-(n-1)}..R_{n-1} via cumulative powers.
struct CoefficientTable {
  std::vector<ComplexMatrix> plus;   // plus[j] = R_{j+1}, j = 0..n-2
  std::vector<ComplexMatrix> minus;  // minus[j] = R_{-(j+1)}
};

CoefficientTable coefficient_table(const StableRepresentation& rep, int n) {
  CoefficientTable table;
  const Eigen::Index m = rep.dim_value();
  ComplexMatrix pp = ComplexMatrix::Identity(rep.dim_plus(), rep.dim_plus());
  ComplexMatrix pm = ComplexMatrix::Identity(rep.dim_minus(), rep.dim_minus());
  for (int j = 0; j + 1 < n; ++j) {
    table.plus.push_back(rep.dim_plus() > 0 ? ComplexMatrix(rep.gamma_plus * pp * rep.beta_plus)
                                            : ComplexMatrix::Zero(m, m));
    table.minus.push_back(rep.dim_minus() > 0
                              ? ComplexMatrix(rep.gamma_minus * pm * rep.beta_minus)
                              : ComplexMatrix::Zero(m, m));
    if (rep.dim_plus() > 0) pp = rep.alpha_plus * pp;
    if (rep.dim_minus() > 0) pm = rep.alpha_minus * pm;
  }
  return table;
}

}  // namespace

ToeplitzTruncation build_truncation(const StableRepresentation& rep, int block_count) {
  if (block_count < 1)
    throw std::invalid_argument("build_truncation: block_count must be positive");
  require_valid_shapes(rep, "build_truncation");
  const Eigen::Index m = rep.dim_value();
  const int n = block_count;
  const CoefficientTable table = coefficient_table(rep, n);
  ToeplitzTruncation tr;
  tr.block_count = n;
  tr.t.resize(n * m, n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = i - j;
      if (k == 0)
        tr.t.block(i * m, j * m, m, m) = rep.delta;
      else if (k > 0)
        tr.t.block(i * m, j * m, m, m) = table.plus[static_cast<size_t>(k - 1)];
      else
        tr.t.block(i * m, j * m, m, m) = table.minus[static_cast<size_t>(-k - 1)];
    }
  }
  tr.row_map.resize(rep.dim_minus(), n * m);
  tr.col_map.resize(n * m, rep.dim_plus());
  ComplexMatrix pm = ComplexMatrix::Identity(rep.dim_minus(), rep.dim_minus());
  ComplexMatrix pp = ComplexMatrix::Identity(rep.dim_plus(), rep.dim_plus());
  for (int j = 0; j < n; ++j) {
    tr.row_map.middleCols(j * m, m) = pm * rep.beta_minus;
    tr.col_map.middleRows(j * m, m) = rep.gamma_plus * pp;
    if (rep.dim_minus() > 0) pm = rep.alpha_minus * pm;
    if (rep.dim_plus() > 0) pp = pp * rep.alpha_plus;
  }
  tr.tail_minus = rep.dim_minus() > 0 ? (pm * rep.beta_minus).norm() : 0.0;
  tr.tail_plus = rep.dim_plus() > 0 ? (rep.gamma_plus * pp).norm() : 0.0;
  return tr;
}

namespace {

// Q_n = row_map * t^{-1} * col_map, or nullopt when the section is singular.
std::optional<ComplexMatrix> section_q(const StableRepresentation& rep, int n,
                                       const Tolerances& tol, double* rcond_out) {
  const ToeplitzTruncation tr = build_truncation(rep, n);
  if (tr.t.rows() == 0) {
    if (rcond_out) *rcond_out = 1.0;
    return ComplexMatrix::Zero(rep.dim_minus(), rep.dim_plus());
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(tr.t);
  // 1-norm rcond estimate from the factorization (cheaper than SVD here)
  const double rc = lu.rcond();
  if (rcond_out) *rcond_out = rc;
  if (!(rc >= tol.inversion_rcond)) return std::nullopt;
  return ComplexMatrix(tr.row_map * lu.solve(tr.col_map));
}

}  // namespace

RiccatiCertificate toeplitz_q_oracle(const StableRepresentation& rep, const Tolerances& tol,
                                     int max_blocks) {
  tol.validate();
  if (max_blocks < 8) throw std::invalid_argument("toeplitz_q_oracle: max_blocks must be >= 8");
  std::vector<std::string> notes;
  std::optional<ComplexMatrix> prev;
  std::optional<ComplexMatrix> accepted;
  int accepted_blocks = 0;
  for (int n = 8; n <= max_blocks; n *= 2) {
    double rc = 0.0;
    std::optional<ComplexMatrix> q = section_q(rep, n, tol, &rc);
    if (!q) {
      std::ostringstream msg;
      msg << "finite section with " << n << " blocks is numerically singular (rcond " << rc << ")";
      notes.push_back(msg.str());
      prev.reset();
      continue;
    }
    if (prev) {
      const double delta = operator_norm(*q - *prev);
      if (delta <= tol.residual_tol) {
        accepted = q;
        accepted_blocks = n;
        break;
      }
    }
    prev = q;
  }
  if (!accepted) {
    RiccatiCertificate cert;
    cert.equation = RiccatiEquation::Ricc1;
    cert.q = ComplexMatrix::Zero(rep.dim_minus(), rep.dim_plus());
    notes.push_back("Toeplitz sections did not converge: existence of the factorization "
                    "is inconclusive at this truncation size");
    cert.notes = std::move(notes);
    return cert;
  }
  std::ostringstream conv;
  conv << "Toeplitz sections converged at " << accepted_blocks << " blocks";
  notes.push_back(conv.str());
  const ComplexMatrix& q = *accepted;
  // prefer the Ricc1 certificate; fall back to Ricc2 when the center is singular
  if (reciprocal_condition(rep.delta - rep.gamma_minus * q * rep.beta_plus) >=
      tol.inversion_rcond) {
    RiccatiCertificate cert = circ_operators(rep, q, RiccatiEquation::Ricc1, tol);
    cert.notes.insert(cert.notes.end(), notes.begin(), notes.end());
    return cert;
  }
  notes.push_back("delta - gamma_-*Q*beta_+ is singular at the Toeplitz solution: "
                  "certifying against the R(0)-centered equation instead");
  try {
    RiccatiCertificate cert = circ_operators(rep, q, RiccatiEquation::Ricc2, tol);
    cert.notes.insert(cert.notes.end(), notes.begin(), notes.end());
    return cert;
  } catch (const std::domain_error& e) {
    RiccatiCertificate cert;
    cert.equation = RiccatiEquation::Ricc1;
    cert.q = q;
    notes.push_back(std::string("no admissible certificate: ") + e.what());
    cert.notes = std::move(notes);
    return cert;
  }
}

std::vector<ToeplitzProfileEntry> toeplitz_invertibility_profile(
    const StableRepresentation& rep, const std::vector<int>& block_counts,
    const Tolerances& tol) {
  tol.validate();
  if (block_counts.empty())
    throw std::invalid_argument("toeplitz_invertibility_profile: no block counts given");
  for (int n : block_counts)
    if (n < 1)
      throw std::invalid_argument("toeplitz_invertibility_profile: block counts must be positive");
  std::vector<ToeplitzProfileEntry> profile;
  std::vector<std::optional<ComplexMatrix>> qs;
  for (int n : block_counts) {
    ToeplitzProfileEntry entry;
    entry.block_count = n;
    qs.push_back(section_q(rep, n, tol, &entry.rcond));
    profile.push_back(entry);
  }
  for (size_t i = 0; i < profile.size(); ++i) {
    for (size_t j = 0; j < profile.size(); ++j) {
      if (block_counts[j] == 2 * block_counts[i] && qs[i] && qs[j]) {
        profile[i].q_delta = operator_norm(*qs[j] - *qs[i]);
        break;
      }
    }
  }
  return profile;
}

}  // namespace whfact
