#include "whfact/subspaces.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace whfact {

namespace {

// Swaps the adjacent diagonal entries t(k,k) and t(k+1,k+1) of the upper
// triangular t by a unitary similarity, accumulating it into u.  Standard
// technique: the first column of the rotation is the (normalized)
// eigenvector of the 2x2 block belonging to t(k+1,k+1).
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& u, Eigen::Index k) {
  const Complex a = t(k, k), b = t(k, k + 1), c = t(k + 1, k + 1);
  Complex v1 = b, v2 = c - a;
  const double nrm = std::sqrt(std::norm(v1) + std::norm(v2));
  if (nrm <= 1e-300 * (std::abs(a) + std::abs(c) + 1.0)) return;  // equal eigenvalues: nothing to move
  v1 /= nrm;
  v2 /= nrm;
  ComplexMatrix g(2, 2);
  g << v1, -std::conj(v2), v2, std::conj(v1);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  u.middleCols(k, 2) = u.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> ordered_schur(
    const ComplexMatrix& m, const std::function<bool(const Complex&)>& select) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("ordered_schur: matrix must be square");
  const Eigen::Index n = m.rows();
  if (n == 0) return {ComplexMatrix(0, 0), ComplexMatrix(0, 0)};
  Eigen::ComplexSchur<ComplexMatrix> schur(m);
  if (schur.info() != Eigen::Success)
    throw std::domain_error("ordered_schur: Schur reduction failed");
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix u = schur.matrixU();
  // bubble every selected eigenvalue to the front, preserving relative order
  Eigen::Index front = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!select(t(i, i))) continue;
    for (Eigen::Index k = i; k > front; --k) swap_adjacent(t, u, k - 1);
    ++front;
  }
  return {u, t};
}

SpectralSplit spectral_split_unit_circle(const ComplexMatrix& m, const Tolerances& tol) {
  tol.validate();
  if (m.rows() != m.cols())
    throw std::invalid_argument("spectral_split_unit_circle: matrix must be square");
  const Eigen::Index n = m.rows();
  const auto inside = [](const Complex& z) { return std::abs(z) < 1.0; };
  auto [u, t] = ordered_schur(m, inside);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double dist = std::abs(std::abs(t(i, i)) - 1.0);
    if (dist <= tol.spectral_margin) {
      std::ostringstream msg;
      msg << "spectral_split_unit_circle: eigenvalue of modulus " << std::abs(t(i, i))
          << " within margin " << tol.spectral_margin << " of the unit circle";
      throw std::domain_error(msg.str());
    }
  }
  SpectralSplit split;
  Eigen::Index din = 0;
  while (din < n && inside(t(din, din))) ++din;
  split.dim_inside = din;
  split.basis_inside = u.leftCols(din);
  // second ordering with the outside eigenvalues leading
  auto [u2, t2] = ordered_schur(m, [](const Complex& z) { return std::abs(z) >= 1.0; });
  (void)t2;
  split.basis_outside = u2.leftCols(n - din);
  if (n == 0) {
    split.projector = ComplexMatrix(0, 0);
    return split;
  }
  ComplexMatrix x(n, n);
  x.leftCols(din) = split.basis_inside;
  x.rightCols(n - din) = split.basis_outside;
  ComplexMatrix sel = ComplexMatrix::Zero(n, n);
  sel.topLeftCorner(din, din).setIdentity();
  split.projector = x * sel * checked_inverse(x, tol, "spectral_split_unit_circle: combined basis");
  return split;
}

namespace {

// Shared core of the two matching tests.  `basis` spans the relevant
// spectral subspace of A^x; `first` says whether it occupies the leading
// (minus) or trailing (plus) position in the direct sum with the fixed
// coordinate subspace of A.
MatchingDecomposition match_with(const DichotomousRealization& real, const ComplexMatrix& basis,
                                 bool cross_space_leading, const Tolerances& tol) {
  const Eigen::Index n = real.dim_state();
  const Eigen::Index pm = real.dim_minus, pp = real.dim_plus;
  MatchingDecomposition match;
  const Eigen::Index expected = cross_space_leading ? pm : pp;
  if (basis.cols() != expected) {
    // dimension mismatch: the sum cannot be direct, no condition number to report
    return match;
  }
  ComplexMatrix s(n, n);
  if (cross_space_leading) {
    s.leftCols(pm) = basis;
    s.rightCols(pp) = ComplexMatrix::Identity(n, n).rightCols(pp);
  } else {
    s.leftCols(pm) = ComplexMatrix::Identity(n, n).leftCols(pm);
    s.rightCols(pp) = basis;
  }
  const double rc = reciprocal_condition(s);
  match.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (rc < tol.inversion_rcond) return match;
  match.exists = true;
  ComplexMatrix sel = ComplexMatrix::Zero(n, n);
  if (cross_space_leading)
    sel.topLeftCorner(pm, pm).setIdentity();
  else
    sel.bottomRightCorner(pp, pp).setIdentity();
  match.projection = s * sel * s.partialPivLu().inverse();
  // angular operator: graph representation of the cross subspace
  if (cross_space_leading) {
    // X-^x = Im [I; G]: solve G * top = bottom in least squares
    const ComplexMatrix top = basis.topRows(pm);
    const ComplexMatrix bottom = basis.bottomRows(pp);
    ComplexMatrix g =
        top.transpose().colPivHouseholderQr().solve(bottom.transpose()).transpose();
    if ((g * top - bottom).norm() > tol.residual_tol * (1.0 + bottom.norm())) {
      match.exists = false;
      return match;
    }
    match.angular = g;
  } else {
    // X+^x = Im [Q; I]: solve Q * bottom = top
    const ComplexMatrix top = basis.topRows(pm);
    const ComplexMatrix bottom = basis.bottomRows(pp);
    ComplexMatrix q =
        bottom.transpose().colPivHouseholderQr().solve(top.transpose()).transpose();
    if ((q * bottom - top).norm() > tol.residual_tol * (1.0 + top.norm())) {
      match.exists = false;
      return match;
    }
    match.angular = q;
  }
  return match;
}

}  // namespace

MatchingDecomposition matching_right(const DichotomousRealization& real, const Tolerances& tol) {
  tol.validate();
  const Verdict valid = validate_dichotomous(real, tol);
  if (!valid.ok)
    throw std::domain_error("matching_right: realization is not dichotomous: " +
                            (valid.notes.empty() ? std::string("invalid") : valid.notes.front()));
  const ComplexMatrix ax = a_cross(real, tol);
  const SpectralSplit split = spectral_split_unit_circle(ax, tol);
  return match_with(real, split.basis_inside, /*cross_space_leading=*/false, tol);
}

MatchingDecomposition matching_left(const DichotomousRealization& real, const Tolerances& tol) {
  tol.validate();
  const Verdict valid = validate_dichotomous(real, tol);
  if (!valid.ok)
    throw std::domain_error("matching_left: realization is not dichotomous: " +
                            (valid.notes.empty() ? std::string("invalid") : valid.notes.front()));
  const ComplexMatrix ax = a_cross(real, tol);
  const SpectralSplit split = spectral_split_unit_circle(ax, tol);
  return match_with(real, split.basis_outside, /*cross_space_leading=*/true, tol);
}

double riccati_dichot_residual(const DichotomousRealization& real, const ComplexMatrix& q,
                               const Tolerances& tol) {
  if (q.rows() != real.dim_minus || q.cols() != real.dim_plus)
    throw std::invalid_argument("riccati_dichot_residual: angular operator has wrong shape");
  const ComplexMatrix dinv = checked_inverse(real.D, tol, "riccati_dichot_residual: D");
  const ComplexMatrix res = real.a_minus() * q - q * real.a_plus() +
                            (q * real.b_plus() - real.b_minus()) * dinv *
                                (real.c_minus() * q + real.c_plus());
  return operator_norm(res);
}

}  // namespace whfact
