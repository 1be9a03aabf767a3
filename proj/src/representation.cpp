#include "whfact/representation.hpp"

#include "whfact/subspaces.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace whfact {

namespace {

// Shape table for the seven blocks; returns an empty string when consistent.
std::string shape_problems(const StableRepresentation& rep) {
  std::ostringstream out;
  const Eigen::Index m = rep.delta.rows();
  const Eigen::Index pp = rep.alpha_plus.rows();
  const Eigen::Index pm = rep.alpha_minus.rows();
  if (rep.delta.cols() != m) out << "delta is not square; ";
  if (rep.alpha_plus.cols() != pp) out << "alpha_plus is not square; ";
  if (rep.alpha_minus.cols() != pm) out << "alpha_minus is not square; ";
  if (rep.gamma_plus.rows() != m || rep.gamma_plus.cols() != pp)
    out << "gamma_plus must be " << m << "x" << pp << "; ";
  if (rep.beta_plus.rows() != pp || rep.beta_plus.cols() != m)
    out << "beta_plus must be " << pp << "x" << m << "; ";
  if (rep.gamma_minus.rows() != m || rep.gamma_minus.cols() != pm)
    out << "gamma_minus must be " << m << "x" << pm << "; ";
  if (rep.beta_minus.rows() != pm || rep.beta_minus.cols() != m)
    out << "beta_minus must be " << pm << "x" << m << "; ";
  return out.str();
}

void require_shapes(const StableRepresentation& rep, const char* where) {
  require_valid_shapes(rep, where);
}

void require_shapes(const DichotomousRealization& real, const char* where) {
  const Eigen::Index n = real.A.rows(), m = real.D.rows();
  std::ostringstream out;
  if (real.A.cols() != n) out << "A is not square; ";
  if (real.D.cols() != m) out << "D is not square; ";
  if (real.B.rows() != n || real.B.cols() != m) out << "B must be " << n << "x" << m << "; ";
  if (real.C.rows() != m || real.C.cols() != n) out << "C must be " << m << "x" << n << "; ";
  if (real.dim_minus < 0 || real.dim_plus < 0 || real.dim_minus + real.dim_plus != n)
    out << "dim_minus + dim_plus must equal the state dimension; ";
  const std::string bad = out.str();
  if (!bad.empty()) throw std::invalid_argument(std::string(where) + ": " + bad);
}

}  // namespace

void require_valid_shapes(const StableRepresentation& rep, const char* where) {
  const std::string bad = shape_problems(rep);
  if (!bad.empty()) throw std::invalid_argument(std::string(where) + ": " + bad);
}

Verdict validate_stable(const StableRepresentation& rep, const Tolerances& tol) {
  tol.validate();
  Verdict v;
  const std::string bad = shape_problems(rep);
  if (!bad.empty()) {
    v.notes.push_back("shape mismatch: " + bad);
    return v;
  }
  for (const auto* blk : {&rep.delta, &rep.gamma_plus, &rep.alpha_plus, &rep.beta_plus,
                          &rep.gamma_minus, &rep.alpha_minus, &rep.beta_minus}) {
    if (!finite_entries(*blk)) {
      v.notes.push_back("non-finite entry in a block");
      return v;
    }
  }
  const double rp = spectral_radius(rep.alpha_plus);
  const double rm = spectral_radius(rep.alpha_minus);
  v.measures["rho_alpha_plus"] = rp;
  v.measures["rho_alpha_minus"] = rm;
  v.ok = true;
  if (rp >= 1.0 - tol.spectral_margin) {
    v.ok = false;
    v.notes.push_back("alpha_plus is not exponentially stable");
  }
  if (rm >= 1.0 - tol.spectral_margin) {
    v.ok = false;
    v.notes.push_back("alpha_minus is not exponentially stable");
  }
  return v;
}

Verdict validate_dichotomous(const DichotomousRealization& real, const Tolerances& tol) {
  tol.validate();
  Verdict v;
  try {
    require_shapes(real, "validate_dichotomous");
  } catch (const std::invalid_argument& e) {
    v.notes.push_back(e.what());
    return v;
  }
  for (const auto* blk : {&real.A, &real.B, &real.C, &real.D}) {
    if (!finite_entries(*blk)) {
      v.notes.push_back("non-finite entry in a block");
      return v;
    }
  }
  v.ok = true;
  const double offdiag =
      real.A.topRightCorner(real.dim_minus, real.dim_plus).norm() +
      real.A.bottomLeftCorner(real.dim_plus, real.dim_minus).norm();
  v.measures["offdiag_norm"] = offdiag;
  if (offdiag > 0.0) {
    v.ok = false;
    v.notes.push_back("A is not block diagonal w.r.t. (dim_minus, dim_plus)");
  }
  const double rcm = reciprocal_condition(real.a_minus());
  v.measures["rcond_a_minus"] = rcm;
  double rho_minus_inv = std::numeric_limits<double>::infinity();
  if (rcm >= tol.inversion_rcond && real.dim_minus > 0)
    rho_minus_inv = spectral_radius(real.a_minus().partialPivLu().inverse());
  else if (real.dim_minus == 0)
    rho_minus_inv = 0.0;
  v.measures["rho_a_minus_inverse"] = rho_minus_inv;
  if (!(rho_minus_inv < 1.0 - tol.spectral_margin)) {
    v.ok = false;
    v.notes.push_back("A- is not invertible with spectrum outside the closed unit disc");
  }
  const double rp = spectral_radius(real.a_plus());
  v.measures["rho_a_plus"] = rp;
  if (rp >= 1.0 - tol.spectral_margin) {
    v.ok = false;
    v.notes.push_back("A+ is not exponentially stable");
  }
  return v;
}

ComplexMatrix eval_R(const StableRepresentation& rep, Complex z, const Tolerances& tol) {
  require_shapes(rep, "eval_R");
  ComplexMatrix value = rep.delta;
  if (rep.dim_plus() > 0) {
    ComplexMatrix res = ComplexMatrix::Identity(rep.dim_plus(), rep.dim_plus()) - z * rep.alpha_plus;
    value += z * rep.gamma_plus *
             checked_inverse(res, tol, "eval_R: I - z*alpha_plus") * rep.beta_plus;
  }
  if (rep.dim_minus() > 0) {
    ComplexMatrix res = z * ComplexMatrix::Identity(rep.dim_minus(), rep.dim_minus()) - rep.alpha_minus;
    value += rep.gamma_minus *
             checked_inverse(res, tol, "eval_R: z*I - alpha_minus") * rep.beta_minus;
  }
  return value;
}

ComplexMatrix eval_R0(const StableRepresentation& rep, const Tolerances& tol) {
  require_shapes(rep, "eval_R0");
  if (rep.dim_minus() == 0) return rep.delta;
  const ComplexMatrix ami = checked_inverse(rep.alpha_minus, tol, "eval_R0: alpha_minus");
  return rep.delta - rep.gamma_minus * ami * rep.beta_minus;
}

double r0_invertibility_measure(const StableRepresentation& rep, const Tolerances& tol) {
  require_shapes(rep, "r0_invertibility_measure");
  if (rep.dim_value() == 0) return 1.0;
  const ComplexMatrix r0 = eval_R0(rep, tol);
  double scale = operator_norm(rep.delta);
  if (rep.dim_minus() > 0) {
    const ComplexMatrix ami =
        checked_inverse(rep.alpha_minus, tol, "r0_invertibility_measure: alpha_minus");
    scale += operator_norm(ComplexMatrix(rep.gamma_minus * ami * rep.beta_minus));
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(r0);
  const double smax = std::max(svd.singularValues()(0), scale);
  if (smax == 0.0) return 0.0;
  return svd.singularValues()(r0.rows() - 1) / smax;
}

FourierCoefficient fourier_coefficient(const StableRepresentation& rep, long j) {
  require_shapes(rep, "fourier_coefficient");
  FourierCoefficient fc;
  fc.index = j;
  const Eigen::Index m = rep.dim_value();
  if (j == 0) {
    fc.value = rep.delta;
    return fc;
  }
  const bool plus = j > 0;
  const ComplexMatrix& alpha = plus ? rep.alpha_plus : rep.alpha_minus;
  const ComplexMatrix& gamma = plus ? rep.gamma_plus : rep.gamma_minus;
  const ComplexMatrix& beta = plus ? rep.beta_plus : rep.beta_minus;
  if (alpha.rows() == 0) {
    fc.value = ComplexMatrix::Zero(m, m);
    return fc;
  }
  ComplexMatrix power = ComplexMatrix::Identity(alpha.rows(), alpha.rows());
  const long steps = plus ? j - 1 : -j - 1;
  for (long k = 0; k < steps; ++k) {
    power = alpha * power;
    if (power.norm() < 1e-300) {
      fc.value = ComplexMatrix::Zero(m, m);
      return fc;
    }
  }
  fc.value = gamma * power * beta;
  return fc;
}

ComplexMatrix eval_transfer(const DichotomousRealization& real, Complex z, const Tolerances& tol) {
  require_shapes(real, "eval_transfer");
  if (real.dim_state() == 0) return real.D;
  ComplexMatrix res = ComplexMatrix::Identity(real.dim_state(), real.dim_state()) - z * real.A;
  return real.D + z * real.C * checked_inverse(res, tol, "eval_transfer: I - z*A") * real.B;
}

DichotomousRealization stable_to_dichotomous(const StableRepresentation& rep,
                                             const Tolerances& tol) {
  require_shapes(rep, "stable_to_dichotomous");
  const Eigen::Index pm = rep.dim_minus(), pp = rep.dim_plus(), m = rep.dim_value();
  const ComplexMatrix ami =
      pm > 0 ? checked_inverse(rep.alpha_minus, tol, "stable_to_dichotomous: alpha_minus")
             : ComplexMatrix(0, 0);
  DichotomousRealization real;
  real.dim_minus = pm;
  real.dim_plus = pp;
  real.A = ComplexMatrix::Zero(pm + pp, pm + pp);
  real.A.topLeftCorner(pm, pm) = ami;
  real.A.bottomRightCorner(pp, pp) = rep.alpha_plus;
  real.B = ComplexMatrix::Zero(pm + pp, m);
  real.B.topRows(pm) = ami * rep.beta_minus;
  real.B.bottomRows(pp) = rep.beta_plus;
  real.C = ComplexMatrix::Zero(m, pm + pp);
  real.C.leftCols(pm) = -rep.gamma_minus * ami;
  real.C.rightCols(pp) = rep.gamma_plus;
  real.D = rep.delta - rep.gamma_minus * (pm > 0 ? ComplexMatrix(ami * rep.beta_minus)
                                                 : ComplexMatrix::Zero(0, m));
  if (r0_invertibility_measure(rep, tol) < tol.inversion_rcond)
    throw std::domain_error("stable_to_dichotomous: R(0) must be invertible");
  return real;
}

StableRepresentation dichotomous_to_stable(const DichotomousRealization& real,
                                           const Tolerances& tol) {
  require_shapes(real, "dichotomous_to_stable");
  const Eigen::Index pm = real.dim_minus, m = real.dim_value();
  const ComplexMatrix ami =
      pm > 0 ? checked_inverse(real.a_minus(), tol, "dichotomous_to_stable: A-")
             : ComplexMatrix(0, 0);
  StableRepresentation rep;
  rep.alpha_plus = real.a_plus();
  rep.beta_plus = real.b_plus();
  rep.gamma_plus = real.c_plus();
  rep.alpha_minus = ami;
  rep.beta_minus = ami * real.b_minus();
  rep.gamma_minus = -real.c_minus() * ami;
  rep.delta = real.D - real.c_minus() * (pm > 0 ? ComplexMatrix(ami * real.b_minus())
                                                : ComplexMatrix::Zero(0, m));
  return rep;
}

ComplexMatrix a_cross(const DichotomousRealization& real, const Tolerances& tol) {
  require_shapes(real, "a_cross");
  return real.A - real.B * checked_inverse(real.D, tol, "a_cross: D") * real.C;
}

StableRepresentation sharp_dual(const StableRepresentation& rep) {
  require_shapes(rep, "sharp_dual");
  StableRepresentation dual;
  dual.delta = rep.delta.adjoint();
  dual.gamma_plus = rep.beta_minus.adjoint();
  dual.alpha_plus = rep.alpha_minus.adjoint();
  dual.beta_plus = rep.gamma_minus.adjoint();
  dual.gamma_minus = rep.beta_plus.adjoint();
  dual.alpha_minus = rep.alpha_plus.adjoint();
  dual.beta_minus = rep.gamma_plus.adjoint();
  return dual;
}

StableRepresentation swap_plus_minus(const StableRepresentation& rep) {
  require_shapes(rep, "swap_plus_minus");
  StableRepresentation sw;
  sw.delta = rep.delta;
  sw.gamma_plus = rep.gamma_minus;
  sw.alpha_plus = rep.alpha_minus;
  sw.beta_plus = rep.beta_minus;
  sw.gamma_minus = rep.gamma_plus;
  sw.alpha_minus = rep.alpha_plus;
  sw.beta_minus = rep.beta_plus;
  return sw;
}

DichotomousRealization normalize_dichotomous(const ComplexMatrix& A, const ComplexMatrix& B,
                                             const ComplexMatrix& C, const ComplexMatrix& D,
                                             const Tolerances& tol) {
  if (A.rows() != A.cols()) throw std::invalid_argument("normalize_dichotomous: A must be square");
  const SpectralSplit split = spectral_split_unit_circle(A, tol);
  const Eigen::Index n = A.rows();
  const Eigen::Index din = split.dim_inside;
  ComplexMatrix x(n, n);
  x.leftCols(n - din) = split.basis_outside;
  x.rightCols(din) = split.basis_inside;
  const ComplexMatrix xi = checked_inverse(x, tol, "normalize_dichotomous: similarity");
  DichotomousRealization real;
  real.dim_minus = n - din;
  real.dim_plus = din;
  real.A = xi * A * x;
  // the similarity is exact up to rounding; enforce the block structure
  real.A.topRightCorner(real.dim_minus, real.dim_plus).setZero();
  real.A.bottomLeftCorner(real.dim_plus, real.dim_minus).setZero();
  real.B = xi * B;
  real.C = C * x;
  real.D = D;
  return real;
}

}  // namespace whfact
