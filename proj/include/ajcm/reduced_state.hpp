#pragma once

#include "ajcm/hilbert_space.hpp"
#include "ajcm/initial_states.hpp"
#include "ajcm/types.hpp"

namespace ajcm {

/// (rho_aa)_{ab} = sum_n rho[(n, a), (n, b)].
AtomicState partial_trace_field(const DensityMatrix& rho, const HilbertSpec& spec);

/// Closed-form reduced atomic state for theta = 0 (both atoms excited), summed over n = 0..n_terms.
/// Coefficients with negative subscript only ever appear with a vanishing prefactor and are taken as 0.
/// Throws std::domain_error for n_terms < 1.
AtomicState closed_form_rho_theta0(const ModelParams& params, Real tau, int n_terms);

}  // namespace ajcm
