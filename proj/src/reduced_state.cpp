#include "ajcm/reduced_state.hpp"

#include <cmath>
#include <stdexcept>

#include "ajcm/analytic_elements.hpp"

namespace ajcm {

AtomicState partial_trace_field(const DensityMatrix& rho, const HilbertSpec& spec) {
  const Eigen::Index dim = rho.entries.rows();
  if (dim % kAtomicDim != 0 || rho.entries.cols() != dim)
    throw std::invalid_argument("partial_trace_field: dimension is not a multiple of 4");
  if (dim != spec.dim()) throw std::invalid_argument("partial_trace_field: state does not match space");
  AtomicState out = AtomicState::Zero();
  for (int n = 0; n < spec.field_dim(); ++n)
    out += rho.entries.block<kAtomicDim, kAtomicDim>(spec.index(n, 0), spec.index(n, 0));
  return out;
}

namespace {

class SubscriptedCoefficients {
 public:
  explicit SubscriptedCoefficients(const AnalyticCoefficients& c) : c_(c) {}
  Real alpha(int n) const { return n < 0 ? 0.0 : c_.alpha(n); }
  Real beta(int n) const { return n < 0 ? 0.0 : c_.beta(n); }
  Real gamma(int n) const { return n < 0 ? 0.0 : c_.gamma(n); }

 private:
  const AnalyticCoefficients& c_;
};

}  // namespace

AtomicState closed_form_rho_theta0(const ModelParams& params, Real tau, int n_terms) {
  if (n_terms < 1) throw std::domain_error("closed_form_rho_theta0: n_terms must be >= 1");
  params.validate();
  const AnalyticCoefficients coeffs{params.lambda_s(), tau};
  const SubscriptedCoefficients k(coeffs);
  const Eigen::VectorXd amp = coherent_amplitudes(params.n_bar, n_terms + 2);
  const auto C = [&](int m, int n) { return amp(m) * amp(n); };
  const Real cl = coeffs.C_ls();
  const Real sl = coeffs.S_ls();
  constexpr Complex i{0.0, 1.0};

  Complex r11{}, r12{}, r14{}, r22{}, r24{}, r44{};
  for (int n = 0; n <= n_terms; ++n) {
    const Real dn = n;
    const Real a_m = k.alpha(n - 1);
    const Real g_m = k.gamma(n - 1);
    const Real b_m = k.beta(n - 1);
    const Real sq1 = std::sqrt(dn + 1.0);

    r11 += C(n, n) * (std::pow(cl + 2.0 * dn * g_m, 2) + 4.0 * dn * dn * a_m * a_m - 4.0 * dn * a_m * sl + sl * sl);
    r12 += sq1 * k.beta(n) * C(n, n + 1) * (i * cl - 2.0 * dn * a_m + 2.0 * i * dn * g_m + sl);
    r14 += 2.0 * sq1 * std::sqrt(dn + 2.0) * C(n, n + 2) * (k.gamma(n + 1) - i * k.alpha(n + 1)) *
           (cl + 2.0 * dn * (g_m + i * a_m) - i * sl);
    r22 += dn * b_m * b_m * C(n, n);
    r24 += -2.0 * dn * sq1 * b_m * C(n, n + 1) * (k.alpha(n) + i * k.gamma(n));
    r44 += 4.0 * (dn - 1.0) * dn * C(n, n) * (a_m * a_m + g_m * g_m);
  }

  AtomicState rho = AtomicState::Zero();
  rho(0, 0) = r11;
  rho(0, 1) = r12;
  rho(0, 2) = r12;
  rho(0, 3) = r14;
  rho(1, 1) = r22;
  rho(1, 2) = r22;
  rho(2, 2) = r22;
  rho(1, 3) = r24;
  rho(2, 3) = r24;
  rho(3, 3) = r44;
  for (int a = 0; a < kAtomicDim; ++a)
    for (int b = 0; b < a; ++b) rho(a, b) = std::conj(rho(b, a));
  return rho;
}

}  // namespace ajcm
