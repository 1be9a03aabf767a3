#include "whfact/core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace whfact {

void Tolerances::validate() const {
  if (!(spectral_margin > 0.0) || !(spectral_margin < 1.0))
    throw std::invalid_argument("tolerances: spectral_margin must lie in (0,1)");
  if (!(inversion_rcond > 0.0) || !(inversion_rcond < 1.0))
    throw std::invalid_argument("tolerances: inversion_rcond must lie in (0,1)");
  if (!(residual_tol > 0.0))
    throw std::invalid_argument("tolerances: residual_tol must be positive");
  if (circle_samples < 4)
    throw std::invalid_argument("tolerances: circle_samples must be at least 4");
}

double spectral_radius(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("spectral_radius: matrix must be square");
  if (m.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::domain_error("spectral_radius: eigenvalue iteration failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double reciprocal_condition(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return 0.0;
  if (m.rows() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m.rows() - 1);
  if (smax == 0.0) return 0.0;
  return smin / smax;
}

Verdict is_invertible(const ComplexMatrix& m, const Tolerances& tol) {
  Verdict v;
  if (m.rows() != m.cols()) {
    v.measures["rcond"] = 0.0;
    v.notes.push_back("matrix is not square");
    return v;
  }
  if (!finite_entries(m)) {
    v.measures["rcond"] = 0.0;
    v.notes.push_back("matrix has non-finite entries");
    return v;
  }
  const double rc = reciprocal_condition(m);
  v.measures["rcond"] = rc;
  v.ok = rc >= tol.inversion_rcond;
  if (!v.ok) v.notes.push_back("reciprocal condition below floor");
  return v;
}

ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw std::invalid_argument("solve_sylvester: coefficient matrices must be square");
  const Eigen::Index m = a.rows(), n = b.rows();
  if (c.rows() != n || c.cols() != m)
    throw std::invalid_argument("solve_sylvester: right-hand side has wrong shape");
  if (m == 0 || n == 0) return ComplexMatrix::Zero(n, m);

  Eigen::ComplexSchur<ComplexMatrix> sa(a), sb(b);
  if (sa.info() != Eigen::Success || sb.info() != Eigen::Success)
    throw std::domain_error("solve_sylvester: Schur reduction failed");
  const ComplexMatrix& ta = sa.matrixT();
  const ComplexMatrix& tb = sb.matrixT();
  const ComplexMatrix& ua = sa.matrixU();
  const ComplexMatrix& ub = sb.matrixU();

  // Y*ta - tb*Y = d, both triangular; solve column by column.
  ComplexMatrix d = ub.adjoint() * c * ua;
  ComplexMatrix y(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    ComplexMatrix::ColXpr rhs = d.col(k);
    if (k > 0) rhs -= y.leftCols(k) * ta.block(0, k, k, 1);
    const Complex akk = ta(k, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double gap = std::abs(akk - tb(i, i));
      if (gap <= 1e-12 * (1.0 + std::abs(akk) + std::abs(tb(i, i)))) {
        std::ostringstream msg;
        msg << "solve_sylvester: spectra overlap (eigenvalue gap " << gap << ")";
        throw std::domain_error(msg.str());
      }
    }
    ComplexMatrix mk = -tb;
    mk.diagonal().array() += akk;
    y.col(k) = mk.triangularView<Eigen::Upper>().solve(rhs);
  }
  return ub * y * ua.adjoint();
}

std::vector<Complex> unit_circle_samples(int count) {
  if (count < 1) throw std::invalid_argument("unit_circle_samples: count must be positive");
  std::vector<Complex> pts(static_cast<size_t>(count));
  const double step = 2.0 * M_PI / count;
  for (int k = 0; k < count; ++k) pts[static_cast<size_t>(k)] = std::polar(1.0, k * step);
  return pts;
}

bool finite_entries(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

ComplexMatrix checked_inverse(const ComplexMatrix& m, const Tolerances& tol,
                              const std::string& what) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("checked_inverse: " + what + " is not square");
  const double rc = reciprocal_condition(m);
  if (rc < tol.inversion_rcond) {
    std::ostringstream msg;
    msg << what << " is numerically singular (rcond " << rc << ")";
    throw std::domain_error(msg.str());
  }
  if (m.rows() == 0) return m;
  return m.partialPivLu().inverse();
}

}  // namespace whfact
