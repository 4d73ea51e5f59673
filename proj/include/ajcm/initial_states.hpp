#pragma once

#include "ajcm/hilbert_space.hpp"
#include "ajcm/types.hpp"

namespace ajcm {

/// Physical knobs. Evolution is carried out in units of lambda, so only lambda_s() and the
/// scaled time tau = lambda * t enter the dynamics.
struct ModelParams {
  Real lambda = 1.0;
  Real omega_s = 0.0;
  Real n_bar = 0.0;
  Real theta = 0.0;

  Real lambda_s() const { return omega_s / lambda; }

  /// Throws std::domain_error naming the offending field.
  void validate() const;

  static ModelParams scaled(Real lambda_s, Real n_bar, Real theta) {
    return ModelParams{1.0, lambda_s, n_bar, theta};
  }
};

enum class SpaceTag { composite, atomic, field };

struct DensityMatrix {
  CMatrix entries;
  SpaceTag space = SpaceTag::composite;
  /// 1 - trace caused by truncating the coherent state; never renormalized away.
  Real trace_deficit = 0.0;
};

/// cos(theta)|ee> + sin(theta)|gg> projector; theta in [0, pi].
AtomicState atomic_initial(Real theta);

/// Coherent amplitudes c_n = exp(-n_bar/2) n_bar^(n/2) / sqrt(n!), n = 0..n_max.
Eigen::VectorXd coherent_amplitudes(Real n_bar, int n_max);

/// Field density matrix with entries C_{m,n} = c_m c_n (real amplitude, zero phase).
DensityMatrix coherent_field(Real n_bar, const HilbertSpec& spec);

/// Poisson mass strictly above n_max, summed directly (no 1 - sum cancellation).
Real poisson_tail(Real n_bar, int n_max);

/// Padding added above the Poisson cutoff.
inline constexpr int kTruncationPadding = 4;

/// Smallest n_max with poisson_tail(n_bar, n_max) < tail_tol, plus kTruncationPadding.
int choose_truncation(Real n_bar, Real tail_tol);

DensityMatrix composite_initial(const ModelParams& params, const HilbertSpec& spec);

}  // namespace ajcm
