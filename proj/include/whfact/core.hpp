#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace whfact {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Shared numeric knobs.  Every threshold used by the library routes through
// one of these four values so that callers can tighten or relax the whole
// stack coherently.
struct Tolerances {
  double spectral_margin = 1e-9;   // required distance of spectra from the unit circle
  double inversion_rcond = 1e-10;  // reciprocal-condition floor for "invertible"
  double residual_tol = 1e-8;      // acceptance threshold for equation residuals
  int circle_samples = 64;         // sample count for checks on the unit circle

  // throws std::invalid_argument when a field is out of range
  void validate() const;
};

// Outcome of a check: a boolean verdict plus named scalar measures and
// human-readable notes explaining failures.  Mathematical negatives are
// reported through this type, never through exceptions.
struct Verdict {
  bool ok = false;
  std::map<std::string, double> measures;
  std::vector<std::string> notes;
};

// Largest eigenvalue modulus.  0x0 input yields 0.
double spectral_radius(const ComplexMatrix& m);

// Operator 2-norm (largest singular value).
double operator_norm(const ComplexMatrix& m);

// sigma_min / sigma_max; 0x0 input yields 1, non-square input 0.
double reciprocal_condition(const ComplexMatrix& m);

// rcond-based invertibility test.  measures: "rcond".
Verdict is_invertible(const ComplexMatrix& m, const Tolerances& tol = {});

// Solves Z*A - B*Z = C for Z (A: m x m, B: n x n, C: n x m) by complex Schur
// reduction of both coefficient matrices and triangular back-substitution.
// Throws std::domain_error when the spectra of A and B overlap within a
// relative gap of ~1e-12 (the equation is then singular).
ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c);

// n-th roots of unity, counterclockwise from 1.
std::vector<Complex> unit_circle_samples(int count);

// True when every entry is finite.
bool finite_entries(const ComplexMatrix& m);

// Inverse guarded by an rcond check; throws std::domain_error naming `what`
// when the matrix fails the floor.
ComplexMatrix checked_inverse(const ComplexMatrix& m, const Tolerances& tol,
                              const std::string& what);

}  // namespace whfact
