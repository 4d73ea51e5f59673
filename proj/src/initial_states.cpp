#include "ajcm/initial_states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ajcm {

namespace {

Real log_poisson(Real n_bar, int n) {
  return -n_bar + n * std::log(n_bar) - std::lgamma(n + 1.0);
}

}  // namespace

void ModelParams::validate() const {
  if (!(lambda > 0.0)) throw std::domain_error("lambda must be > 0");
  if (!(n_bar >= 0.0)) throw std::domain_error("n_bar must be >= 0");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::domain_error("theta must lie in [0, pi]");
  if (!std::isfinite(omega_s)) throw std::domain_error("omega_s must be finite");
}

AtomicState atomic_initial(Real theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("theta must lie in [0, pi], got " + std::to_string(theta));
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(kEE) = std::cos(theta);
  psi(kGG) = std::sin(theta);
  return psi * psi.adjoint();
}

Eigen::VectorXd coherent_amplitudes(Real n_bar, int n_max) {
  if (!(n_bar >= 0.0)) throw std::domain_error("n_bar must be >= 0");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_max + 1);
  if (n_bar == 0.0) {
    c(0) = 1.0;
    return c;
  }
  for (int n = 0; n <= n_max; ++n) c(n) = std::exp(0.5 * log_poisson(n_bar, n));
  return c;
}

DensityMatrix coherent_field(Real n_bar, const HilbertSpec& spec) {
  const Eigen::VectorXd c = coherent_amplitudes(n_bar, spec.n_max());
  DensityMatrix rho;
  rho.entries = (c * c.transpose()).cast<Complex>();
  rho.space = SpaceTag::field;
  rho.trace_deficit = 1.0 - rho.entries.trace().real();
  return rho;
}

Real poisson_tail(Real n_bar, int n_max) {
  if (n_bar == 0.0) return 0.0;
  Real tail = 0.0;
  // Terms past the mode decay at least geometrically; stop once they no longer register.
  for (int n = n_max + 1;; ++n) {
    const Real term = std::exp(log_poisson(n_bar, n));
    tail += term;
    if (n > n_bar && (term == 0.0 || term < tail * 1e-18)) break;
  }
  return tail;
}

int choose_truncation(Real n_bar, Real tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw std::domain_error("tail_tol must lie in (0, 1)");
  if (!(n_bar >= 0.0)) throw std::domain_error("n_bar must be >= 0");
  int n_max = 0;
  while (poisson_tail(n_bar, n_max) >= tail_tol) ++n_max;
  return n_max + kTruncationPadding;
}

DensityMatrix composite_initial(const ModelParams& params, const HilbertSpec& spec) {
  params.validate();
  const DensityMatrix field = coherent_field(params.n_bar, spec);
  const AtomicState atoms = atomic_initial(params.theta);
  DensityMatrix rho;
  rho.entries = kron(field.entries, atoms);
  rho.space = SpaceTag::composite;
  rho.trace_deficit = field.trace_deficit;
  return rho;
}

}  // namespace ajcm
