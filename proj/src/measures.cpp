#include "ajcm/measures.hpp"

#include <stdexcept>

#include "ajcm/hilbert_space.hpp"

namespace ajcm {

const DenseCodingEncoders& DenseCodingEncoders::standard() {
  static const DenseCodingEncoders encoders = [] {
    DenseCodingEncoders e;
    e.u[0] << 1, 0, 0, 1;
    e.u[1] << 0, 1, 1, 0;
    e.u[2] << -1, 0, 0, 1;
    e.u[3] << 0, 1, -1, 0;
    return e;
  }();
  return encoders;
}

AtomicState average_encoded_state(const AtomicState& rho, const DenseCodingEncoders& encoders) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  AtomicState avg = AtomicState::Zero();
  for (const auto& u : encoders.u) {
    const AtomicState w = kron(u, id);
    avg += w * rho * w.adjoint();
  }
  return avg / 4.0;
}

Real channel_capacity(const AtomicState& rho) {
  const Real chi = von_neumann_entropy(average_encoded_state(rho)) - von_neumann_entropy(rho);
  if (chi < -kEigenNoiseFloor || chi > 2.0 + kEigenNoiseFloor)
    throw InvalidState("channel capacity out of range: " + std::to_string(chi));
  return std::clamp(chi, 0.0, 2.0);
}

ZetaSums zeta_sums(const EntanglingPowerInputs& inputs) {
  const auto& u = inputs.element_operators;
  const int d = inputs.d;
  const Eigen::Index n = inputs.field_state.rows();
  for (const auto& row : u)
    for (const auto& e : row)
      if (e.rows() != n || e.cols() != n)
        throw std::invalid_argument("entangling power: element operator and field state dimensions differ");

  // right[k][i] = U_{ki} rho; tr(U_{k2 i2} rho U_{k1 i1}†) = sum_ab right[k2][i2](a,b) conj(U_{k1 i1}(a,b)).
  std::array<std::array<CMatrix, kAtomicDim>, kAtomicDim> right;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) right[k][i].noalias() = u[k][i] * inputs.field_state;

  ZetaSums z;
  for (int k1 = 0; k1 < d; ++k1) {
    for (int k2 = 0; k2 < d; ++k2) {
      Complex diagonal_sum{};
      for (int i1 = 0; i1 < d; ++i1) {
        for (int i2 = 0; i2 < d; ++i2) {
          const Complex t = (right[k2][i2].array() * u[k1][i1].array().conjugate()).sum();
          z.zeta2 += std::norm(t);
          if (i1 == i2) diagonal_sum += t;
        }
      }
      z.zeta1 += std::norm(diagonal_sum);
    }
  }
  return z;
}

Real entangling_power(const EntanglingPowerInputs& inputs) {
  const ZetaSums z = zeta_sums(inputs);
  const Real d = inputs.d;
  const Real ep = 1.0 - (z.zeta1 + z.zeta2) / (d * (d + 1.0));
  if (ep < -kEigenNoiseFloor || ep > 1.0 + kEigenNoiseFloor)
    throw InvalidState("entangling power out of range: " + std::to_string(ep));
  constexpr Real kNoise = 1e-12;
  if (ep < 0.0 && ep >= -kNoise) return 0.0;
  if (ep > 1.0 && ep <= 1.0 + kNoise) return 1.0;
  return ep;
}

}  // namespace ajcm
