#include "whfact/factorization.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace whfact {

ComplexMatrix RealizedFunction::eval(Complex z, const Tolerances& tol) const {
  if (state.rows() == 0) return constant;
  const ComplexMatrix eye = ComplexMatrix::Identity(state.rows(), state.cols());
  if (form == RealizationForm::ZAhead)
    return constant +
           z * output * checked_inverse(eye - z * state, tol, "realization: I - z*state") * input;
  return constant +
         output * checked_inverse(z * eye - state, tol, "realization: z*I - state") * input;
}

ComplexMatrix FactorPair::product(Complex z, const Tolerances& tol) const {
  if (side == FactorSide::Right) return minus_factor.fun.eval(z, tol) * plus_factor.fun.eval(z, tol);
  return plus_factor.fun.eval(z, tol) * minus_factor.fun.eval(z, tol);
}

namespace {

// Resolves the split of the constant term: validates a caller-provided pair
// against the required product, or falls back to the stated default.
DeltaSplit resolve_split(const ComplexMatrix& required, const std::optional<DeltaSplit>& split,
                         bool identity_first, const Tolerances& tol, const char* where) {
  const Eigen::Index m = required.rows();
  if (!split) {
    if (identity_first) return {ComplexMatrix::Identity(m, m), required};
    return {required, ComplexMatrix::Identity(m, m)};
  }
  const ComplexMatrix& first = split->first;
  const ComplexMatrix& second = split->second;
  if (first.rows() != m || first.cols() != m || second.rows() != m || second.cols() != m)
    throw std::invalid_argument(std::string(where) + ": split factors have wrong shape");
  if ((first * second - required).norm() > tol.residual_tol * (1.0 + required.norm()))
    throw std::invalid_argument(std::string(where) +
                                ": split factors do not multiply to the required constant");
  if (reciprocal_condition(first) < tol.inversion_rcond ||
      reciprocal_condition(second) < tol.inversion_rcond)
    throw std::invalid_argument(std::string(where) + ": split factors must be invertible");
  return *split;
}

}  // namespace

FactorPair right_factors(const StableRepresentation& rep, const RiccatiCertificate& cert,
                         const Tolerances& tol, const std::optional<DeltaSplit>& split) {
  tol.validate();
  require_valid_shapes(rep, "right_factors");
  if (cert.equation == RiccatiEquation::Left)
    throw std::invalid_argument("right_factors: certificate is for the left equation");
  if (!cert.stabilizing)
    throw std::invalid_argument("right_factors: certificate is not stabilizing");
  if (cert.q.rows() != rep.dim_minus() || cert.q.cols() != rep.dim_plus())
    throw std::invalid_argument("right_factors: certificate shape mismatch");
  const ComplexMatrix& q = cert.q;
  const ComplexMatrix schur = rep.delta - rep.gamma_minus * q * rep.beta_plus;
  const DeltaSplit ds =
      resolve_split(schur, split, /*identity_first=*/true, tol, "right_factors");
  const ComplexMatrix minus_inv = checked_inverse(ds.first, tol, "right_factors: delta_-");
  const ComplexMatrix plus_inv = checked_inverse(ds.second, tol, "right_factors: delta_+");
  const ComplexMatrix beta_minus_circ = (rep.beta_minus - rep.alpha_minus * q * rep.beta_plus) * plus_inv;
  const ComplexMatrix gamma_plus_circ = minus_inv * (rep.gamma_plus - rep.gamma_minus * q * rep.alpha_plus);

  FactorPair pair;
  pair.side = FactorSide::Right;
  pair.split_first = ds.first;
  pair.split_second = ds.second;
  pair.minus_factor.fun = {RealizationForm::Resolvent, ds.first, rep.gamma_minus,
                           rep.alpha_minus, beta_minus_circ};
  pair.minus_factor.inverse = {RealizationForm::Resolvent, minus_inv,
                               ComplexMatrix(-minus_inv * rep.gamma_minus), cert.alpha_minus_circ,
                               ComplexMatrix(beta_minus_circ * minus_inv)};
  pair.plus_factor.fun = {RealizationForm::ZAhead, ds.second, gamma_plus_circ, rep.alpha_plus,
                          rep.beta_plus};
  pair.plus_factor.inverse = {RealizationForm::ZAhead, plus_inv,
                              ComplexMatrix(-plus_inv * gamma_plus_circ), cert.alpha_plus_circ,
                              ComplexMatrix(rep.beta_plus * plus_inv)};
  return pair;
}

FactorPair left_factors(const StableRepresentation& rep, const RiccatiCertificate& cert,
                        const Tolerances& tol, const std::optional<DeltaSplit>& split) {
  if (cert.equation != RiccatiEquation::Left)
    throw std::invalid_argument("left_factors: certificate is not for the left equation");
  // the left factorization of R is the right factorization of R(1/z): build
  // that one and swap z for 1/z, which exchanges the two realization shapes
  // while keeping all four matrices
  RiccatiCertificate inner;
  inner.q = cert.q;
  inner.equation = RiccatiEquation::Ricc1;
  inner.alpha_plus_circ = cert.alpha_minus_circ;
  inner.alpha_minus_circ = cert.alpha_plus_circ;
  inner.residual_norm = cert.residual_norm;
  inner.margin_plus = cert.margin_minus;
  inner.margin_minus = cert.margin_plus;
  inner.stabilizing = cert.stabilizing;
  FactorPair sw = right_factors(swap_plus_minus(rep), inner, tol, split);
  const auto flip = [](RealizedFunction f) {
    f.form = f.form == RealizationForm::Resolvent ? RealizationForm::ZAhead
                                                  : RealizationForm::Resolvent;
    return f;
  };
  FactorPair pair;
  pair.side = FactorSide::Left;
  pair.split_first = sw.split_first;    // delta_+ of the left factorization
  pair.split_second = sw.split_second;  // delta_-
  pair.plus_factor.fun = flip(sw.minus_factor.fun);
  pair.plus_factor.inverse = flip(sw.minus_factor.inverse);
  pair.minus_factor.fun = flip(sw.plus_factor.fun);
  pair.minus_factor.inverse = flip(sw.plus_factor.inverse);
  return pair;
}

namespace {

struct MatchedCoordinates {
  ComplexMatrix s;        // [first-summand basis | second-summand basis]
  ComplexMatrix s_inv;
  ComplexMatrix a_hat;    // s^{-1} A s
  ComplexMatrix ax_hat;   // s^{-1} A^x s
  ComplexMatrix b_hat;    // s^{-1} B
  ComplexMatrix c_hat;    // C s
};

// Coordinates adapted to the matched decomposition.  For the right
// factorization the first summand is the coordinate subspace X- and the
// second the spectral subspace X+^x of A^x inside the disc; for the left one
// the first summand is X-^x (outside) and the second the coordinate X+.
MatchedCoordinates matched_coordinates(const DichotomousRealization& real, bool right_side,
                                       const Tolerances& tol) {
  const Eigen::Index n = real.dim_state();
  const ComplexMatrix ax = a_cross(real, tol);
  const SpectralSplit split = spectral_split_unit_circle(ax, tol);
  MatchedCoordinates mc;
  mc.s.resize(n, n);
  if (right_side) {
    if (split.dim_inside != real.dim_plus)
      throw std::domain_error("dichot factors: spectral subspace dimension mismatch");
    mc.s.leftCols(real.dim_minus) = ComplexMatrix::Identity(n, n).leftCols(real.dim_minus);
    mc.s.rightCols(real.dim_plus) = split.basis_inside;
  } else {
    if (n - split.dim_inside != real.dim_minus)
      throw std::domain_error("dichot factors: spectral subspace dimension mismatch");
    mc.s.leftCols(real.dim_minus) = split.basis_outside;
    mc.s.rightCols(real.dim_plus) = ComplexMatrix::Identity(n, n).rightCols(real.dim_plus);
  }
  mc.s_inv = checked_inverse(mc.s, tol, "dichot factors: matched basis");
  mc.a_hat = mc.s_inv * real.A * mc.s;
  mc.ax_hat = mc.s_inv * ax * mc.s;
  mc.b_hat = mc.s_inv * real.B;
  mc.c_hat = real.C * mc.s;
  return mc;
}

}  // namespace

FactorPair dichot_right_factors(const DichotomousRealization& real,
                                const MatchingDecomposition& match, const Tolerances& tol,
                                const std::optional<DeltaSplit>& split) {
  tol.validate();
  if (!match.exists)
    throw std::invalid_argument("dichot_right_factors: matching decomposition does not exist");
  const Eigen::Index n = real.dim_state(), pm = real.dim_minus, pp = real.dim_plus;
  if (match.projection.rows() != n || match.projection.cols() != n)
    throw std::invalid_argument("dichot_right_factors: projection shape mismatch");
  const DeltaSplit ds =
      resolve_split(real.D, split, /*identity_first=*/false, tol, "dichot_right_factors");
  const ComplexMatrix dminus_inv = checked_inverse(ds.first, tol, "dichot_right_factors: D_-");
  const ComplexMatrix dplus_inv = checked_inverse(ds.second, tol, "dichot_right_factors: D_+");
  const ComplexMatrix dinv = dplus_inv * dminus_inv;
  const ComplexMatrix& px = match.projection;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix ax = a_cross(real, tol);

  FactorPair pair;
  pair.side = FactorSide::Right;
  pair.split_first = ds.first;
  pair.split_second = ds.second;
  pair.minus_factor.fun = {RealizationForm::ZAhead, ds.first, real.C, real.A,
                           ComplexMatrix((id - px) * real.B * dplus_inv)};
  pair.minus_factor.inverse = {RealizationForm::ZAhead, dminus_inv,
                               ComplexMatrix(-dminus_inv * real.C * (id - px)), ax,
                               ComplexMatrix(real.B * dinv)};
  pair.plus_factor.fun = {RealizationForm::ZAhead, ds.second,
                          ComplexMatrix(dminus_inv * real.C * px), real.A, real.B};
  pair.plus_factor.inverse = {RealizationForm::ZAhead, dplus_inv,
                              ComplexMatrix(-dinv * real.C), ax,
                              ComplexMatrix(px * real.B * dplus_inv)};

  const MatchedCoordinates mc = matched_coordinates(real, /*right_side=*/true, tol);
  const ComplexMatrix a_minus = mc.a_hat.topLeftCorner(pm, pm);
  const ComplexMatrix a22 = mc.a_hat.bottomRightCorner(pp, pp);
  const ComplexMatrix ax11 = mc.ax_hat.topLeftCorner(pm, pm);
  const ComplexMatrix ax_plus = mc.ax_hat.bottomRightCorner(pp, pp);
  const ComplexMatrix b_minus = mc.b_hat.topRows(pm);
  const ComplexMatrix b_plus = mc.b_hat.bottomRows(pp);
  const ComplexMatrix c_minus = mc.c_hat.leftCols(pm);
  const ComplexMatrix c_plus = mc.c_hat.rightCols(pp);
  pair.minus_factor.compressed = RealizedFunction{
      RealizationForm::ZAhead, ds.first, c_minus, a_minus, ComplexMatrix(b_minus * dplus_inv)};
  pair.minus_factor.compressed_inverse =
      RealizedFunction{RealizationForm::ZAhead, dminus_inv,
                       ComplexMatrix(-dminus_inv * c_minus), ax11, ComplexMatrix(b_minus * dinv)};
  pair.plus_factor.compressed = RealizedFunction{
      RealizationForm::ZAhead, ds.second, ComplexMatrix(dminus_inv * c_plus), a22, b_plus};
  pair.plus_factor.compressed_inverse =
      RealizedFunction{RealizationForm::ZAhead, dplus_inv, ComplexMatrix(-dinv * c_plus), ax_plus,
                       ComplexMatrix(b_plus * dplus_inv)};
  return pair;
}

FactorPair dichot_left_factors(const DichotomousRealization& real,
                               const MatchingDecomposition& match, const Tolerances& tol,
                               const std::optional<DeltaSplit>& split) {
  tol.validate();
  if (!match.exists)
    throw std::invalid_argument("dichot_left_factors: matching decomposition does not exist");
  const Eigen::Index n = real.dim_state(), pm = real.dim_minus, pp = real.dim_plus;
  if (match.projection.rows() != n || match.projection.cols() != n)
    throw std::invalid_argument("dichot_left_factors: projection shape mismatch");
  const DeltaSplit ds =
      resolve_split(real.D, split, /*identity_first=*/false, tol, "dichot_left_factors");
  const ComplexMatrix dplus_inv = checked_inverse(ds.first, tol, "dichot_left_factors: D_+");
  const ComplexMatrix dminus_inv = checked_inverse(ds.second, tol, "dichot_left_factors: D_-");
  const ComplexMatrix dinv = dminus_inv * dplus_inv;
  const ComplexMatrix& p = match.projection;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix ax = a_cross(real, tol);

  FactorPair pair;
  pair.side = FactorSide::Left;
  pair.split_first = ds.first;
  pair.split_second = ds.second;
  pair.plus_factor.fun = {RealizationForm::ZAhead, ds.first, real.C, real.A,
                          ComplexMatrix((id - p) * real.B * dminus_inv)};
  pair.plus_factor.inverse = {RealizationForm::ZAhead, dplus_inv,
                              ComplexMatrix(-dplus_inv * real.C * (id - p)), ax,
                              ComplexMatrix(real.B * dinv)};
  pair.minus_factor.fun = {RealizationForm::ZAhead, ds.second,
                           ComplexMatrix(dplus_inv * real.C * p), real.A, real.B};
  pair.minus_factor.inverse = {RealizationForm::ZAhead, dminus_inv,
                               ComplexMatrix(-dinv * real.C), ax,
                               ComplexMatrix(p * real.B * dminus_inv)};

  const MatchedCoordinates mc = matched_coordinates(real, /*right_side=*/false, tol);
  const ComplexMatrix a11 = mc.a_hat.topLeftCorner(pm, pm);
  const ComplexMatrix a_plus = mc.a_hat.bottomRightCorner(pp, pp);
  const ComplexMatrix ax_minus = mc.ax_hat.topLeftCorner(pm, pm);
  const ComplexMatrix ax22 = mc.ax_hat.bottomRightCorner(pp, pp);
  const ComplexMatrix b_minus = mc.b_hat.topRows(pm);
  const ComplexMatrix b_plus = mc.b_hat.bottomRows(pp);
  const ComplexMatrix c_minus = mc.c_hat.leftCols(pm);
  const ComplexMatrix c_plus = mc.c_hat.rightCols(pp);
  pair.plus_factor.compressed = RealizedFunction{
      RealizationForm::ZAhead, ds.first, c_plus, a_plus, ComplexMatrix(b_plus * dminus_inv)};
  pair.plus_factor.compressed_inverse =
      RealizedFunction{RealizationForm::ZAhead, dplus_inv, ComplexMatrix(-dplus_inv * c_plus),
                       ax22, ComplexMatrix(b_plus * dinv)};
  pair.minus_factor.compressed = RealizedFunction{
      RealizationForm::ZAhead, ds.second, ComplexMatrix(dplus_inv * c_minus), a11, b_minus};
  pair.minus_factor.compressed_inverse =
      RealizedFunction{RealizationForm::ZAhead, dminus_inv, ComplexMatrix(-dinv * c_minus),
                       ax_minus, ComplexMatrix(b_minus * dminus_inv)};
  return pair;
}

namespace {

// Distance-to-violation measure for the analyticity domain of a record:
// values below 1 mean every pole lies strictly in the allowed region.
double containment_radius(const RealizedFunction& f, bool plus_side, const Tolerances& tol) {
  if (f.state.rows() == 0) return 0.0;
  // plus side: poles must lie outside the closed disc; minus side: inside.
  // A z-ahead record has poles at the reciprocal spectrum, so the spectrum
  // itself must sit inside exactly when the record belongs to the plus side.
  const bool need_spectrum_inside = plus_side == (f.form == RealizationForm::ZAhead);
  if (need_spectrum_inside) return spectral_radius(f.state);
  if (reciprocal_condition(f.state) < tol.inversion_rcond)
    return std::numeric_limits<double>::infinity();
  return spectral_radius(f.state.partialPivLu().inverse());
}

const RealizedFunction& analytic_record(const WienerHopfFactor& f, bool inverse) {
  if (inverse) return f.compressed_inverse ? *f.compressed_inverse : f.inverse;
  return f.compressed ? *f.compressed : f.fun;
}

}  // namespace

Verdict verify_factorization(const std::function<ComplexMatrix(Complex)>& reference,
                             const FactorPair& pair, const Tolerances& tol) {
  tol.validate();
  Verdict v;
  double product_residual = 0.0, ref_scale = 0.0;
  double plus_inv_res = 0.0, minus_inv_res = 0.0, compression_res = 0.0;
  const bool has_compressed =
      pair.minus_factor.compressed.has_value() || pair.plus_factor.compressed.has_value();
  try {
    for (const Complex& z : unit_circle_samples(tol.circle_samples)) {
      const ComplexMatrix ref = reference(z);
      ref_scale = std::max(ref_scale, operator_norm(ref));
      const ComplexMatrix minus = pair.minus_factor.fun.eval(z, tol);
      const ComplexMatrix plus = pair.plus_factor.fun.eval(z, tol);
      const ComplexMatrix prod =
          pair.side == FactorSide::Right ? ComplexMatrix(minus * plus) : ComplexMatrix(plus * minus);
      product_residual = std::max(product_residual, operator_norm(prod - ref));
      const Eigen::Index m = ref.rows();
      const ComplexMatrix eye = ComplexMatrix::Identity(m, m);
      minus_inv_res = std::max(
          minus_inv_res, operator_norm(minus * pair.minus_factor.inverse.eval(z, tol) - eye));
      plus_inv_res = std::max(
          plus_inv_res, operator_norm(plus * pair.plus_factor.inverse.eval(z, tol) - eye));
      for (const WienerHopfFactor* f : {&pair.minus_factor, &pair.plus_factor}) {
        if (f->compressed)
          compression_res =
              std::max(compression_res, operator_norm(f->compressed->eval(z, tol) -
                                                      (f == &pair.minus_factor ? minus : plus)));
        if (f->compressed_inverse)
          compression_res = std::max(compression_res,
                                     operator_norm(f->compressed_inverse->eval(z, tol) -
                                                   f->inverse.eval(z, tol)));
      }
    }
  } catch (const std::domain_error& e) {
    v.notes.push_back(std::string("evaluation failed on the unit circle: ") + e.what());
    return v;
  }
  const double plus_radius =
      std::max(containment_radius(analytic_record(pair.plus_factor, false), true, tol),
               containment_radius(analytic_record(pair.plus_factor, true), true, tol));
  const double minus_radius =
      std::max(containment_radius(analytic_record(pair.minus_factor, false), false, tol),
               containment_radius(analytic_record(pair.minus_factor, true), false, tol));
  v.measures["product_residual"] = product_residual;
  v.measures["plus_inverse_residual"] = plus_inv_res;
  v.measures["minus_inverse_residual"] = minus_inv_res;
  v.measures["plus_radius"] = plus_radius;
  v.measures["minus_radius"] = minus_radius;
  if (has_compressed) v.measures["compression_residual"] = compression_res;
  v.ok = true;
  if (product_residual > tol.residual_tol * (1.0 + ref_scale)) {
    v.ok = false;
    v.notes.push_back("factor product deviates from the reference function");
  }
  if (minus_inv_res > tol.residual_tol || plus_inv_res > tol.residual_tol) {
    v.ok = false;
    v.notes.push_back("a factor inverse fails the identity check");
  }
  if (has_compressed && compression_res > tol.residual_tol * (1.0 + ref_scale)) {
    v.ok = false;
    v.notes.push_back("compressed realizations deviate from the full ones");
  }
  if (!(plus_radius < 1.0 - tol.spectral_margin)) {
    v.ok = false;
    v.notes.push_back("plus factor has a pole in the closed unit disc");
  }
  if (!(minus_radius < 1.0 - tol.spectral_margin)) {
    v.ok = false;
    v.notes.push_back("minus factor has a pole outside the open unit disc");
  }
  return v;
}

Verdict verify_factorization(const StableRepresentation& rep, const FactorPair& pair,
                             const Tolerances& tol) {
  return verify_factorization(
      [&rep, &tol](Complex z) { return eval_R(rep, z, tol); }, pair, tol);
}

Verdict verify_factorization(const DichotomousRealization& real, const FactorPair& pair,
                             const Tolerances& tol) {
  return verify_factorization(
      [&real, &tol](Complex z) { return eval_transfer(real, z, tol); }, pair, tol);
}

}  // namespace whfact
