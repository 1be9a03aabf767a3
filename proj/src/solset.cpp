#include "whfact/solset.hpp"

#include "whfact/riccati.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace whfact {

namespace {

// Classical adjugate via cofactors: adj(A)*A = det(A)*I, well defined for
// singular A (which is exactly when it is needed here).
ComplexMatrix adjugate(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("adjugate: matrix must be square");
  if (n == 0) return ComplexMatrix(0, 0);
  if (n == 1) return ComplexMatrix::Ones(1, 1);
  ComplexMatrix adj(n, n);
  ComplexMatrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // adj(i,j) = (-1)^{i+j} * det(A with row j and column i removed)
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc) = a(r, c);
          ++cc;
        }
        ++rr;
      }
      const Complex det = minor.partialPivLu().determinant();
      adj(i, j) = ((i + j) % 2 == 0) ? det : -det;
    }
  }
  return adj;
}

// Roots of c[0] + c[1]*q + ... + c[d]*q^d.  Leading coefficients below
// drop_tol are trimmed; the all-trimmed case is signalled by nullopt so the
// caller can distinguish "identically zero" from "no roots".
std::optional<std::vector<Complex>> poly_roots(std::vector<Complex> coeffs, double drop_tol) {
  double scale = 0.0;
  for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return std::nullopt;
  while (!coeffs.empty() && std::abs(coeffs.back()) <= drop_tol * scale) coeffs.pop_back();
  if (coeffs.empty()) return std::nullopt;
  const std::size_t degree = coeffs.size() - 1;
  if (degree == 0) return std::vector<Complex>{};
  ComplexMatrix companion = ComplexMatrix::Zero(degree, degree);
  for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[i] / coeffs[degree];
  for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<ComplexMatrix> es(companion, false);
  std::vector<Complex> roots(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

void append_unique(std::vector<Complex>& pool, const Complex& root) {
  for (const Complex& r : pool)
    if (std::abs(r - root) <= 1e-9 * (1.0 + std::abs(root))) return;
  pool.push_back(root);
}

double rank_threshold(const Eigen::JacobiSVD<ComplexMatrix>& svd, const Tolerances& tol) {
  if (svd.singularValues().size() == 0) return 0.0;
  return svd.singularValues()(0) * tol.inversion_rcond;
}

// Unitary bases adapted to a matrix: first `rank` columns of `image` span
// the column space (the rest its orthocomplement), first `rank` columns of
// `coimage` span the row space (the rest the kernel).
struct AdaptedBases {
  Eigen::Index rank = 0;
  ComplexMatrix image;    // rows x rows unitary
  ComplexMatrix coimage;  // cols x cols unitary
};

AdaptedBases adapted_bases(const ComplexMatrix& m, const Tolerances& tol) {
  AdaptedBases out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.image = ComplexMatrix::Identity(m.rows(), m.rows());
    out.coimage = ComplexMatrix::Identity(m.cols(), m.cols());
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double thresh = rank_threshold(svd, tol);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > thresh) ++rank;
  out.rank = rank;
  out.image = svd.matrixU();
  out.coimage = svd.matrixV();
  return out;
}

}  // namespace

SolutionClassification classify(const StableRepresentation& rep, const ComplexMatrix& q,
                                const Tolerances& tol) {
  tol.validate();
  require_valid_shapes(rep, "classify");
  if (q.rows() != rep.dim_minus() || q.cols() != rep.dim_plus())
    throw std::invalid_argument("classify: Q has the wrong shape");
  if (reciprocal_condition(rep.alpha_minus) < tol.inversion_rcond)
    throw std::invalid_argument("classify: alpha_minus must be invertible");

  SolutionClassification out;
  out.q = q;
  const double qscale = 1.0 + operator_norm(q);
  out.r0_invertible = r0_invertibility_measure(rep, tol) >= tol.inversion_rcond;
  out.admissible_ricc1 =
      reciprocal_condition(rep.delta - rep.gamma_minus * q * rep.beta_plus) >= tol.inversion_rcond;
  if (out.admissible_ricc1)
    out.in_ricc1 = residual_ricc1(rep, q, tol) <= tol.residual_tol * qscale;
  if (out.r0_invertible) {
    out.in_ricc2 = residual_ricc2(rep, q, tol) <= tol.residual_tol * qscale;
    out.in_ricc2_prime = out.in_ricc2 && out.admissible_ricc1;
  }
  return out;
}

ScalarSolutionSets scalar_solution_sets(const StableRepresentation& rep, const Tolerances& tol) {
  tol.validate();
  require_valid_shapes(rep, "scalar_solution_sets");
  if (rep.dim_plus() != 1 || rep.dim_minus() != 1)
    throw std::invalid_argument("scalar_solution_sets: state dimensions must be 1");
  if (std::abs(rep.alpha_minus(0, 0)) == 0.0)
    throw std::invalid_argument("scalar_solution_sets: alpha_minus must be invertible");

  const Complex am = rep.alpha_minus(0, 0);
  const Complex ap = rep.alpha_plus(0, 0);
  const ComplexMatrix r0 = eval_R0(rep, tol);

  ScalarSolutionSets out;
  out.r0_invertible = r0_invertibility_measure(rep, tol) >= tol.inversion_rcond;

  // Cleared Ricc2: multiply the equation by det R(0) and express the center
  // through the adjugate, which keeps the polynomial meaningful when R(0)
  // is singular (its roots are then candidates only, not solutions).
  {
    const Complex det_r0 = r0.partialPivLu().determinant();
    const ComplexMatrix adj_r0 = adjugate(r0);
    const Complex bm_adj_gp = (rep.beta_minus * adj_r0 * rep.gamma_plus)(0, 0);
    const Complex bp_adj_gp = (rep.beta_plus * adj_r0 * rep.gamma_plus)(0, 0);
    const Complex bm_adj_gm = (rep.beta_minus * adj_r0 * rep.gamma_minus)(0, 0);
    const Complex bp_adj_gm = (rep.beta_plus * adj_r0 * rep.gamma_minus)(0, 0);
    const std::vector<Complex> f2 = {-bm_adj_gp,
                                     (1.0 - am * ap) * det_r0 + am * bp_adj_gp + bm_adj_gm / am,
                                     -bp_adj_gm};
    const auto roots = poly_roots(f2, 1e-12);
    if (!roots) {
      out.ricc2_identically_satisfied = true;
      out.notes.push_back(out.r0_invertible
                              ? "cleared Ricc2 vanishes identically: every q is a solution"
                              : "cleared Ricc2 vanishes identically, but R(0) is singular so the "
                                "equation itself is undefined");
    } else {
      out.ricc2_candidates = *roots;
      if (!out.r0_invertible && !roots->empty())
        out.notes.push_back(
            "R(0) is singular: the cleared Ricc2 roots are candidates of the cleared polynomial "
            "only, the equation itself has no solutions");
    }
  }

  // Cleared Ricc1: d(q) = det(delta - q*gamma_-*beta_+) and the adjugate of
  // the same pencil are affine in q (every minor is a rank-one update), so
  // two evaluations recover them exactly and the cleared equation
  //   q*(1 - am*ap)*d(q) - (beta_- - q*am*beta_+)*adj(q)*(gamma_+ - q*ap*gamma_-)
  // has degree at most 3.
  {
    const ComplexMatrix pencil0 = rep.delta;
    const ComplexMatrix pencil1 = rep.delta - rep.gamma_minus * rep.beta_plus;
    const Complex d0 = pencil0.partialPivLu().determinant();
    const Complex d1 = pencil1.partialPivLu().determinant() - d0;
    const ComplexMatrix adj0 = adjugate(pencil0);
    const ComplexMatrix adj1 = adjugate(pencil1) - adj0;

    const double dref = 1e-12 * (1.0 + std::abs(d0) + std::abs(d0 + d1));
    const bool d_identically_zero = std::abs(d0) <= dref && std::abs(d1) <= dref;
    if (d_identically_zero) {
      out.ricc1_no_admissible_q = true;
      out.notes.push_back(
          "delta - q*gamma_-*beta_+ is singular for every q: Ricc1 has no admissible candidates");
    } else {
      auto pair_coeffs = [&](const ComplexMatrix& adj) {
        // (beta_- - q*am*beta_+) * adj * (gamma_+ - q*ap*gamma_-) expanded in q
        const Complex c0 = (rep.beta_minus * adj * rep.gamma_plus)(0, 0);
        const Complex c1 = -ap * (rep.beta_minus * adj * rep.gamma_minus)(0, 0) -
                           am * (rep.beta_plus * adj * rep.gamma_plus)(0, 0);
        const Complex c2 = am * ap * (rep.beta_plus * adj * rep.gamma_minus)(0, 0);
        return std::array<Complex, 3>{c0, c1, c2};
      };
      const auto inner0 = pair_coeffs(adj0);
      const auto inner1 = pair_coeffs(adj1);
      // q*(1 - am*ap)*(d0 + d1*q) minus the expanded bilinear term
      const Complex one_m = 1.0 - am * ap;
      const std::vector<Complex> f1 = {-inner0[0], one_m * d0 - inner0[1] - inner1[0],
                                       one_m * d1 - inner0[2] - inner1[1], -inner1[2]};
      const auto roots = poly_roots(f1, 1e-12);
      if (!roots) {
        out.ricc1_identically_satisfied = true;
        out.notes.push_back("cleared Ricc1 vanishes identically: every admissible q is a solution");
      } else {
        for (const Complex& root : *roots) {
          const Complex d_at_root = d0 + d1 * root;
          if (std::abs(d_at_root) <= 1e-8 * (std::abs(d0) + std::abs(d1 * root) + 1e-300)) {
            std::ostringstream note;
            note << "cleared Ricc1 root " << root.real();
            if (root.imag() != 0.0) note << (root.imag() < 0 ? "" : "+") << root.imag() << "i";
            note << " rejected: delta - q*gamma_-*beta_+ is singular there";
            out.notes.push_back(note.str());
            continue;
          }
          out.ricc1_candidates.push_back(root);
        }
      }
    }
  }

  std::vector<Complex> pool;
  for (const Complex& r : out.ricc1_candidates) append_unique(pool, r);
  for (const Complex& r : out.ricc2_candidates) append_unique(pool, r);
  for (const Complex& r : pool) {
    ComplexMatrix q(1, 1);
    q(0, 0) = r;
    out.solutions.push_back(classify(rep, q, tol));
  }
  return out;
}

ComplexMatrix alphacirc_inverse_rhs(const StableRepresentation& rep, const ComplexMatrix& q,
                                    const Tolerances& tol) {
  require_valid_shapes(rep, "alphacirc_inverse_rhs");
  if (q.rows() != rep.dim_minus() || q.cols() != rep.dim_plus())
    throw std::invalid_argument("alphacirc_inverse_rhs: Q has the wrong shape");
  const ComplexMatrix ami = checked_inverse(rep.alpha_minus, tol, "alphacirc_inverse_rhs: alpha_minus");
  if (r0_invertibility_measure(rep, tol) < tol.inversion_rcond)
    throw std::domain_error("alphacirc_inverse_rhs: R(0) must be invertible");
  const ComplexMatrix r0inv = checked_inverse(eval_R0(rep, tol), tol, "alphacirc_inverse_rhs: R(0)");
  return ami + ami * (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) * r0inv *
                   rep.gamma_minus * ami;
}

Verdict check_r0_lemma(const StableRepresentation& rep, const ComplexMatrix& q,
                       const Tolerances& tol) {
  tol.validate();
  require_valid_shapes(rep, "check_r0_lemma");
  if (q.rows() != rep.dim_minus() || q.cols() != rep.dim_plus())
    throw std::invalid_argument("check_r0_lemma: Q has the wrong shape");
  if (reciprocal_condition(rep.alpha_minus) < tol.inversion_rcond)
    throw std::invalid_argument("check_r0_lemma: alpha_minus must be invertible");

  Verdict verdict;
  verdict.ok = true;
  const double rcond_r0 = r0_invertibility_measure(rep, tol);
  const bool r0_invertible = rcond_r0 >= tol.inversion_rcond;
  verdict.measures["rcond_r0"] = rcond_r0;

  const ComplexMatrix pencil = rep.delta - rep.gamma_minus * q * rep.beta_plus;
  const double rcond_adm = reciprocal_condition(pencil);
  const bool admissible = rcond_adm >= tol.inversion_rcond;
  verdict.measures["rcond_admissible"] = rcond_adm;

  if (admissible) {
    const ComplexMatrix center = pencil.partialPivLu().inverse();
    const ComplexMatrix alpha_minus_circ =
        rep.alpha_minus -
        (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) * center * rep.gamma_minus;
    const double rcond_circ = reciprocal_condition(alpha_minus_circ);
    verdict.measures["rcond_alpha_minus_circ"] = rcond_circ;
    if (r0_invertible) {
      // branch (a): the inversion formula must reproduce the inverse
      if (rcond_circ < tol.inversion_rcond) {
        verdict.ok = false;
        verdict.notes.push_back("R(0) invertible but alpha_-^o is numerically singular");
      } else {
        const ComplexMatrix rhs = alphacirc_inverse_rhs(rep, q, tol);
        const double err = operator_norm(alpha_minus_circ.partialPivLu().inverse() - rhs);
        verdict.measures["inverse_formula_error"] = err;
        if (err > 1e-9 * (1.0 + operator_norm(rhs))) {
          verdict.ok = false;
          verdict.notes.push_back("inversion formula for alpha_-^o fails at 1e-9");
        }
      }
    } else {
      // branch (b): singular R(0) forces alpha_-^o singular
      if (rcond_circ >= tol.inversion_rcond) {
        verdict.ok = false;
        verdict.notes.push_back("R(0) singular but alpha_-^o is invertible");
      } else {
        verdict.notes.push_back("R(0) singular and alpha_-^o singular, as the lemma requires");
      }
    }
  } else {
    verdict.notes.push_back("delta - gamma_-*Q*beta_+ is singular: alpha_-^o is undefined at Q");
  }

  if (r0_invertible) {
    // branch (c): admissibility and invertibility of the formula's
    // right-hand side stand or fall together
    const ComplexMatrix rhs = alphacirc_inverse_rhs(rep, q, tol);
    const double rcond_rhs = reciprocal_condition(rhs);
    verdict.measures["rcond_rhs"] = rcond_rhs;
    const bool rhs_invertible = rcond_rhs >= tol.inversion_rcond;
    if (admissible != rhs_invertible) {
      verdict.ok = false;
      verdict.notes.push_back(
          "admissibility of Q and invertibility of the inversion-formula right-hand side "
          "disagree");
    }
  }
  return verdict;
}

std::optional<ComplexMatrix> find_invertibilizing_q(const ComplexMatrix& u,
                                                    const ComplexMatrix& v,
                                                    const ComplexMatrix& w,
                                                    const Tolerances& tol) {
  tol.validate();
  const Eigen::Index n = u.rows();
  if (u.cols() != n) throw std::invalid_argument("find_invertibilizing_q: U must be square");
  if (v.rows() != n) throw std::invalid_argument("find_invertibilizing_q: V must have n rows");
  if (w.cols() != n) throw std::invalid_argument("find_invertibilizing_q: W must have n columns");
  if (n == 0) return ComplexMatrix::Zero(v.cols(), w.rows());

  // Split the codomain along Im V and the domain along Ker W.
  const AdaptedBases vb = adapted_bases(v, tol);
  const AdaptedBases wb = adapted_bases(w, tol);
  const ComplexMatrix bv = vb.image.leftCols(vb.rank);          // Im V
  const ComplexMatrix bvp = vb.image.rightCols(n - vb.rank);    // (Im V)^perp
  const ComplexMatrix bw = wb.coimage.leftCols(wb.rank);        // (Ker W)^perp
  const ComplexMatrix bk = wb.coimage.rightCols(n - wb.rank);   // Ker W

  const ComplexMatrix u11 = bvp.adjoint() * u * bk;
  const ComplexMatrix u12 = bvp.adjoint() * u * bw;
  const ComplexMatrix u21 = bv.adjoint() * u * bk;
  const ComplexMatrix u22 = bv.adjoint() * u * bw;

  // Refine along the affine structure of u11: K1/K2 split its coimage,
  // R1/R2 its image.
  const AdaptedBases ub = adapted_bases(u11, tol);
  const Eigen::Index r11 = ub.rank;
  const ComplexMatrix k1 = ub.coimage.leftCols(r11);
  const ComplexMatrix k2 = ub.coimage.rightCols(u11.cols() - r11);
  const ComplexMatrix r1 = ub.image.leftCols(r11);
  const ComplexMatrix r2 = ub.image.rightCols(u11.rows() - r11);

  // Criterion 1: P_{(Im V)^perp} U onto (Im V)^perp, i.e. the compression
  // of u12 to R2 has full row rank.
  const ComplexMatrix m12 = r2.adjoint() * u12;
  const AdaptedBases tb = adapted_bases(m12, tol);
  if (tb.rank != m12.rows()) return std::nullopt;
  const ComplexMatrix t1 = tb.coimage.leftCols(tb.rank);
  const ComplexMatrix t2 = tb.coimage.rightCols(m12.cols() - tb.rank);

  // Criterion 2: U injective on Ker W, i.e. u21 restricted to K2 has full
  // column rank (u11 vanishes there by construction).
  const ComplexMatrix m21 = u21 * k2;
  const AdaptedBases sb = adapted_bases(m21, tol);
  if (sb.rank != m21.cols()) return std::nullopt;
  const ComplexMatrix s1 = sb.image.leftCols(sb.rank);
  const ComplexMatrix s2 = sb.image.rightCols(m21.rows() - sb.rank);

  // Replace the (2,2) corner of U so that the Schur complement w.r.t. the
  // invertible part of u11 collapses to an invertible block permutation.
  // dim S2 == dim T2 whenever both criteria pass (a dimension count on
  // rv, rw and rank u11), so the scaled corner s2*t2^H is invertible on it.
  ComplexMatrix t_sub = (operator_norm(u) + 1.0) * s2 * t2.adjoint();
  if (r11 > 0) {
    const ComplexMatrix u11_tilde = r1.adjoint() * u11 * k1;
    t_sub += (u21 * k1) *
             checked_inverse(u11_tilde, tol, "find_invertibilizing_q: u11 core") *
             (r1.adjoint() * u12);
  }

  // Back out Q through one-sided inverses of V and W on their active parts.
  const ComplexMatrix v2 = bv.adjoint() * v;  // full row rank
  const ComplexMatrix w2 = w * bw;            // full column rank
  const ComplexMatrix v2_right =
      v2.adjoint() * checked_inverse(v2 * v2.adjoint(), tol, "find_invertibilizing_q: V2*V2^H");
  const ComplexMatrix w2_left =
      checked_inverse(w2.adjoint() * w2, tol, "find_invertibilizing_q: W2^H*W2") * w2.adjoint();
  const ComplexMatrix q = v2_right * (u22 - t_sub) * w2_left;

  if (reciprocal_condition(u - v * q * w) < tol.inversion_rcond) return std::nullopt;
  return q;
}

}  // namespace whfact
