#pragma once

// Shared fixtures for the test suite: the hand-checked counterexample
// instances, a contour-integral oracle for the stabilizing angular operator
// that bypasses every solver under test, and small comparison helpers.

#include "whfact/core.hpp"
#include "whfact/gen.hpp"
#include "whfact/representation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

namespace whtest {

using whfact::Complex;
using whfact::ComplexMatrix;
using whfact::StableRepresentation;

inline ComplexMatrix scalar(Complex v) {
  ComplexMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

inline double dist(const ComplexMatrix& a, const ComplexMatrix& b) {
  return whfact::operator_norm(a - b);
}

// Scalar instance with R(0) = 0:
//   alpha_+ = 0, beta_+ = gamma_+ = 1, alpha_- = a, beta_- = gamma_- = 1,
//   delta = 1/a, i.e. R(z) = 1/a + z + 1/(z - a).
// The stabilizing solution is q = a with alpha_-^o = 0 and
// alpha_+^o = -a/(1/a - a) (= -2/3 at a = 1/2).
inline StableRepresentation counter_r0_singular(double a) {
  StableRepresentation rep;
  rep.delta = scalar(1.0 / a);
  rep.gamma_plus = scalar(1.0);
  rep.alpha_plus = scalar(0.0);
  rep.beta_plus = scalar(1.0);
  rep.gamma_minus = scalar(1.0);
  rep.alpha_minus = scalar(a);
  rep.beta_minus = scalar(1.0);
  return rep;
}

// Scalar instance with all blocks nonzero; the cleared quadratic of the
// constant-center equation has roots {gamma_+/alpha_+, beta_-*alpha_+},
// and the solution-dependent equation keeps only beta_-*alpha_+ (the other
// root is exactly the admissibility boundary when delta = gamma_+/alpha_+).
inline StableRepresentation counter_two_roots(Complex alpha_plus, Complex alpha_minus,
                                              Complex beta_minus, Complex gamma_plus,
                                              Complex delta) {
  StableRepresentation rep;
  rep.delta = scalar(delta);
  rep.gamma_plus = scalar(gamma_plus);
  rep.alpha_plus = scalar(alpha_plus);
  rep.beta_plus = scalar(1.0);
  rep.gamma_minus = scalar(1.0);
  rep.alpha_minus = scalar(alpha_minus);
  rep.beta_minus = scalar(beta_minus);
  return rep;
}

// The published numbers: alpha_+ = alpha_- = 1/2, beta_- = 1, gamma_+ = 1,
// delta = 2.  Here R(0) = delta - gamma_-*alpha_-^{-1}*beta_- = 0, so the
// constant-center set is empty while its cleared polynomial still has the
// two formal roots {1/2, 2}.
inline StableRepresentation counter_two_roots_published() {
  return counter_two_roots(0.5, 0.5, 1.0, 1.0, 2.0);
}

// Same shape with gamma_+ = 2, delta = 4: now R(0) = 2 is invertible and the
// root gamma_+/alpha_+ = 4 solves the constant-center equation but sits on
// the admissibility boundary of the other one.
inline StableRepresentation counter_two_roots_regular() {
  return counter_two_roots(0.5, 0.5, 1.0, 2.0, 4.0);
}

// 2x2-value instance with scalar state spaces:
//   delta = [[0,0],[0,1]], gamma_- = (1;0), beta_+ = (0 1), beta_- = (1 0),
// and gamma_+ either (1,0)^T (unique constant-center solution 1/alpha_+) or
// (0,alpha_+)^T (every q solves it).  delta - q*gamma_-*beta_+ is singular
// for every q, so the solution-dependent equation is never defined, and the
// inversion-formula right-hand side vanishes identically.
inline StableRepresentation counter_matrix_degenerate(bool aligned_gamma_plus,
                                                      Complex alpha_minus, Complex alpha_plus) {
  StableRepresentation rep;
  rep.delta = ComplexMatrix::Zero(2, 2);
  rep.delta(1, 1) = 1.0;
  rep.gamma_plus = ComplexMatrix::Zero(2, 1);
  if (aligned_gamma_plus)
    rep.gamma_plus(0, 0) = 1.0;
  else
    rep.gamma_plus(1, 0) = alpha_plus;
  rep.alpha_plus = scalar(alpha_plus);
  rep.beta_plus = ComplexMatrix::Zero(1, 2);
  rep.beta_plus(0, 1) = 1.0;
  rep.gamma_minus = ComplexMatrix::Zero(2, 1);
  rep.gamma_minus(0, 0) = 1.0;
  rep.alpha_minus = scalar(alpha_minus);
  rep.beta_minus = ComplexMatrix::Zero(1, 2);
  rep.beta_minus(0, 0) = 1.0;
  return rep;
}

// 2x2-value instance (p- = p+ = 1) built so that the right factorization
// exists while the left one does not: the anti-stable spectral subspace of
// A^x is exactly the plus coordinate axis, so X_-^x + X_+ is not direct.
// Data: alpha_- = 1/2, alpha_+ = 2/5, beta_- = (1 0), gamma_- = (-0.45; 1),
// beta_+ = (1 -1.1), gamma_+ = (0; 1), delta = I + 2*gamma_-*beta_-, giving
// R(0) = I and A^x = [[0.2, 0], [-3.1, 1.5]].
inline StableRepresentation left_fails_instance() {
  StableRepresentation rep;
  rep.alpha_minus = scalar(0.5);
  rep.alpha_plus = scalar(0.4);
  rep.beta_minus = ComplexMatrix::Zero(1, 2);
  rep.beta_minus(0, 0) = 1.0;
  rep.gamma_minus = ComplexMatrix::Zero(2, 1);
  rep.gamma_minus(0, 0) = -0.45;
  rep.gamma_minus(1, 0) = 1.0;
  rep.beta_plus = ComplexMatrix::Zero(1, 2);
  rep.beta_plus(0, 0) = 1.0;
  rep.beta_plus(0, 1) = -1.1;
  rep.gamma_plus = ComplexMatrix::Zero(2, 1);
  rep.gamma_plus(1, 0) = 1.0;
  rep.delta = ComplexMatrix::Identity(2, 2) + 2.0 * rep.gamma_minus * rep.beta_minus;
  return rep;
}

// A^x assembled from the representation blocks directly (Schur-complement
// display), independent of the library's conversion helpers:
//   A^x = [a^{-1} + a^{-1} b R0^{-1} g a^{-1},  -a^{-1} b R0^{-1} gp;
//          bp R0^{-1} g a^{-1},                 ap - bp R0^{-1} gp]
// with a = alpha_-, b = beta_-, g = gamma_-, shorthand R0 = R(0).
inline ComplexMatrix a_cross_direct(const StableRepresentation& rep) {
  const ComplexMatrix ainv = rep.alpha_minus.inverse();
  const ComplexMatrix r0 = rep.delta - rep.gamma_minus * ainv * rep.beta_minus;
  const ComplexMatrix r0inv = r0.inverse();
  const Eigen::Index pm = rep.dim_minus(), pp = rep.dim_plus();
  ComplexMatrix ax(pm + pp, pm + pp);
  ax.topLeftCorner(pm, pm) = ainv + ainv * rep.beta_minus * r0inv * rep.gamma_minus * ainv;
  ax.topRightCorner(pm, pp) = -ainv * rep.beta_minus * r0inv * rep.gamma_plus;
  ax.bottomLeftCorner(pp, pm) = rep.beta_plus * r0inv * rep.gamma_minus * ainv;
  ax.bottomRightCorner(pp, pp) = rep.alpha_plus - rep.beta_plus * r0inv * rep.gamma_plus;
  return ax;
}

// Riesz projector onto the spectral subspace of `a` inside the unit circle,
// by trapezoid quadrature of the resolvent: with z = e^{i t},
//   P = (1/2*pi*i) oint (zI - a)^{-1} dz = (1/N) sum_k z_k (z_k I - a)^{-1}.
// Exponentially accurate once every eigenvalue is away from the circle.
inline ComplexMatrix riesz_projector_inside(const ComplexMatrix& a, int samples = 2048) {
  const Eigen::Index n = a.rows();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * M_PI * k / samples;
    const Complex z(std::cos(t), std::sin(t));
    acc += z * (z * ComplexMatrix::Identity(n, n) - a).inverse();
  }
  return acc / static_cast<double>(samples);
}

// Oracle for the stabilizing angular operator: build A^x from the blocks,
// integrate the Riesz projector, extract a basis of its image by rank
// revealing QR, and read the graph coordinates Q = top * bottom^{-1}.
// Everything here is direct Eigen arithmetic; no solver under test is used.
inline ComplexMatrix oracle_right_q(const StableRepresentation& rep, int samples = 2048) {
  const ComplexMatrix ax = a_cross_direct(rep);
  const ComplexMatrix proj = riesz_projector_inside(ax, samples);
  const Eigen::Index pm = rep.dim_minus(), pp = rep.dim_plus();
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(proj);
  qr.setThreshold(1e-7);
  if (qr.rank() != pp) throw std::runtime_error("oracle_right_q: unexpected projector rank");
  const ComplexMatrix basis =
      qr.householderQ() * ComplexMatrix::Identity(pm + pp, pp);
  const ComplexMatrix top = basis.topRows(pm);
  const ComplexMatrix bottom = basis.bottomRows(pp);
  return top * bottom.inverse();
}

// Trapezoid Fourier coefficient of an arbitrary matrix function on the
// circle: F_j = (1/2*pi) int F(e^{it}) e^{-ijt} dt.
template <typename Fn>
ComplexMatrix fourier_oracle(Fn&& f, long j, int samples = 1024) {
  ComplexMatrix acc;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * M_PI * k / samples;
    const Complex z(std::cos(t), std::sin(t));
    const ComplexMatrix val = f(z) * std::pow(z, Complex(-static_cast<double>(j)));
    if (acc.size() == 0)
      acc = val;
    else
      acc += val;
  }
  return acc / static_cast<double>(samples);
}

inline ComplexMatrix random_matrix(whfact::SplitMix64& rng, Eigen::Index rows,
                                   Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform_complex();
  return m;
}

// true when the two root lists agree as sets at the given tolerance
inline bool same_root_set(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const Complex& x : a) {
    bool hit = false;
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (std::abs(*it - x) <= tol) {
        b.erase(it);
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return b.empty();
}

}  // namespace whtest
