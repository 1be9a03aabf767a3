#pragma once

#include "whfact/core.hpp"
#include "whfact/representation.hpp"
#include "whfact/riccati.hpp"
#include "whfact/subspaces.hpp"

#include <functional>
#include <optional>
#include <utility>

namespace whfact {

// A matrix function held as a finite-dimensional realization in one of two
// shapes:
//   ZAhead:    F(z) = constant + z * output * (I - z*state)^{-1} * input
//   Resolvent: F(z) = constant + output * (z*I - state)^{-1} * input
// Pole locations: ZAhead has poles at the reciprocals of the state spectrum,
// Resolvent at the state spectrum itself.
enum class RealizationForm { ZAhead, Resolvent };

struct RealizedFunction {
  RealizationForm form = RealizationForm::ZAhead;
  ComplexMatrix constant;
  ComplexMatrix output;
  ComplexMatrix state;
  ComplexMatrix input;

  ComplexMatrix eval(Complex z, const Tolerances& tol = {}) const;
};

// One Wiener-Hopf factor with its inverse; factors built on a dichotomous
// realization additionally carry the compressed (matched-coordinate)
// realizations, whose states have one-sided spectra and therefore witness
// the analyticity domain directly.
struct WienerHopfFactor {
  RealizedFunction fun;
  RealizedFunction inverse;
  std::optional<RealizedFunction> compressed;
  std::optional<RealizedFunction> compressed_inverse;
};

enum class FactorSide { Right, Left };

// R = V_- * V_+  (side == Right)  or  R = W_+ * W_-  (side == Left).
// split_first/split_second hold the constant-term factorization in
// multiplication order (right: delta_- * delta_+; left: delta_+ * delta_-).
struct FactorPair {
  FactorSide side = FactorSide::Right;
  WienerHopfFactor minus_factor;
  WienerHopfFactor plus_factor;
  ComplexMatrix split_first;
  ComplexMatrix split_second;

  // the factor product in the order dictated by the side
  ComplexMatrix product(Complex z, const Tolerances& tol = {}) const;
};

using DeltaSplit = std::pair<ComplexMatrix, ComplexMatrix>;

// Factors from a stabilizing right certificate.  With s = delta -
// gamma_-*Q*beta_+ and a factorization s = delta_-*delta_+ (default:
// delta_- = I, delta_+ = s):
//   V_-(z) = delta_- + gamma_-*(z*I - alpha_-)^{-1}*beta_-^o
//   V_+(z) = delta_+ + z*gamma_+^o*(I - z*alpha_+)^{-1}*beta_+
// where beta_-^o = (beta_- - alpha_-*Q*beta_+)*delta_+^{-1} and
// gamma_+^o = delta_-^{-1}*(gamma_+ - gamma_-*Q*alpha_+).  Throws
// std::invalid_argument on a non-stabilizing certificate or an inconsistent
// split.
FactorPair right_factors(const StableRepresentation& rep, const RiccatiCertificate& cert,
                         const Tolerances& tol = {},
                         const std::optional<DeltaSplit>& split = std::nullopt);

// Left counterpart from a stabilizing left certificate, with
// s~ = delta - gamma_+*Q*beta_- = delta_+*delta_- (default delta_+ = I).
FactorPair left_factors(const StableRepresentation& rep, const RiccatiCertificate& cert,
                        const Tolerances& tol = {},
                        const std::optional<DeltaSplit>& split = std::nullopt);

// Factors on a dichotomous realization from a successful matching
// decomposition; split factorizes D (left: D = D_+*D_-, default D_+ = D,
// D_- = I; right: D = D_-*D_+, default D_- = D, D_+ = I).
FactorPair dichot_right_factors(const DichotomousRealization& real,
                                const MatchingDecomposition& match, const Tolerances& tol = {},
                                const std::optional<DeltaSplit>& split = std::nullopt);
FactorPair dichot_left_factors(const DichotomousRealization& real,
                               const MatchingDecomposition& match, const Tolerances& tol = {},
                               const std::optional<DeltaSplit>& split = std::nullopt);

// Samples the unit circle and checks: product against the reference
// function, factor*inverse against the identity, full-vs-compressed
// agreement where compressed forms exist, and the pole placement of every
// record against its analyticity domain.  measures: "product_residual",
// "plus_inverse_residual", "minus_inverse_residual", "plus_radius",
// "minus_radius", "compression_residual" (when applicable).
Verdict verify_factorization(const std::function<ComplexMatrix(Complex)>& reference,
                             const FactorPair& pair, const Tolerances& tol = {});
Verdict verify_factorization(const StableRepresentation& rep, const FactorPair& pair,
                             const Tolerances& tol = {});
Verdict verify_factorization(const DichotomousRealization& real, const FactorPair& pair,
                             const Tolerances& tol = {});

}  // namespace whfact
