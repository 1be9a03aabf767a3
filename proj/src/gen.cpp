#include "whfact/gen.hpp"

#include <cmath>
#include <stdexcept>

namespace whfact {

namespace {

ComplexMatrix random_matrix(SplitMix64& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform_complex();
  return m;
}

// random matrix rescaled to a prescribed spectral radius in [0.2, 0.6]
ComplexMatrix random_stable_block(SplitMix64& rng, Eigen::Index dim) {
  if (dim == 0) return ComplexMatrix(0, 0);
  const double target = 0.2 + 0.4 * rng.uniform();
  for (;;) {
    ComplexMatrix m = random_matrix(rng, dim, dim);
    const double rho = spectral_radius(m);
    if (rho > 1e-8) return m * (target / rho);
    // nilpotent-looking draw: take a fresh one (deterministic, the stream advances)
  }
}

}  // namespace

StableRepresentation random_stable_representation(std::uint64_t seed, Eigen::Index dim_minus,
                                                  Eigen::Index dim_plus, Eigen::Index dim_value,
                                                  double coupling) {
  if (dim_minus < 1 || dim_plus < 0 || dim_value < 1)
    throw std::invalid_argument("random_stable_representation: dimensions out of range");
  if (!(coupling >= 0.0) || coupling > 0.95)
    throw std::invalid_argument("random_stable_representation: coupling must lie in [0, 0.95]");

  SplitMix64 rng(seed);
  StableRepresentation rep;
  rep.delta = ComplexMatrix::Identity(dim_value, dim_value);
  rep.alpha_minus = random_stable_block(rng, dim_minus);
  rep.alpha_plus = random_stable_block(rng, dim_plus);
  rep.gamma_plus = random_matrix(rng, dim_value, dim_plus);
  rep.beta_plus = random_matrix(rng, dim_plus, dim_value);
  rep.gamma_minus = random_matrix(rng, dim_value, dim_minus);
  rep.beta_minus = random_matrix(rng, dim_minus, dim_value);

  // measure the raw perturbation on the circle, then split the rescaling
  // between the gamma and beta sides
  double sup = 0.0;
  for (const Complex& z : unit_circle_samples(64)) {
    const ComplexMatrix dev = eval_R(rep, z) - rep.delta;
    sup = std::max(sup, operator_norm(dev));
  }
  double factor = 0.0;
  if (sup > 0.0 && coupling > 0.0) factor = std::sqrt(coupling / sup);
  rep.gamma_plus *= factor;
  rep.beta_plus *= factor;
  rep.gamma_minus *= factor;
  rep.beta_minus *= factor;
  return rep;
}

}  // namespace whfact
