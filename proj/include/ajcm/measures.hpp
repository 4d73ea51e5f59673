#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "ajcm/dynamics.hpp"
#include "ajcm/types.hpp"

namespace ajcm {

inline constexpr Real kEigenNoiseFloor = 1e-9;  // negatives above -this are rounding noise
inline constexpr Real kEigenBugFloor = 1e-6;    // negatives below -this are an invalid state
inline constexpr Real kHermitianTolerance = 1e-8;

template <typename Derived>
typename Derived::RealScalar hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenvalues in [-kEigenBugFloor, 0) are clamped to 0, values above 1 to 1.
template <typename Derived>
Eigen::Matrix<typename Derived::RealScalar, Eigen::Dynamic, 1> clamped_spectrum(const Eigen::MatrixBase<Derived>& rho) {
  using RealS = typename Derived::RealScalar;
  if (rho.rows() != rho.cols()) throw InvalidState("density matrix must be square");
  if (hermiticity_error(rho) > kHermitianTolerance) throw InvalidState("density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<typename Derived::PlainObject> solver(rho.eval(), Eigen::EigenvaluesOnly);
  Eigen::Matrix<RealS, Eigen::Dynamic, 1> p = solver.eigenvalues();
  if (p.size() > 0 && p.minCoeff() < -kEigenBugFloor)
    throw InvalidState("density matrix has eigenvalue " + std::to_string(p.minCoeff()));
  return p.cwiseMax(RealS(0)).cwiseMin(RealS(1));
}

/// S(rho) = -sum p log2 p, in bits.
template <typename Derived>
typename Derived::RealScalar von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  using RealS = typename Derived::RealScalar;
  RealS s = 0;
  for (RealS p : clamped_spectrum(rho))
    if (p > 0) s -= p * std::log2(p);
  return s;
}

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), where l_i^2 are the eigenvalues of
/// rho (σy⊗σy) rho* (σy⊗σy). With rho = W W†, the l_i are the singular values of W^T (σy⊗σy) W.
template <typename Derived>
typename Derived::RealScalar concurrence(const Eigen::MatrixBase<Derived>& rho) {
  using RealS = typename Derived::RealScalar;
  using Mat4 = Eigen::Matrix<std::complex<RealS>, 4, 4>;
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidState("concurrence needs a two-qubit state");
  if (hermiticity_error(rho) > kHermitianTolerance) throw InvalidState("concurrence: state is not Hermitian");

  Mat4 yy = Mat4::Zero();  // σy ⊗ σy is real and anti-diagonal
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const Mat4 r = (rho + rho.adjoint()) / RealS(2);
  Eigen::SelfAdjointEigenSolver<Mat4> eig(r);
  const auto& mu = eig.eigenvalues();
  if (mu(0) < -RealS(kEigenBugFloor)) throw InvalidState("concurrence: state has a negative eigenvalue");

  Mat4 w = eig.eigenvectors();
  for (int k = 0; k < 4; ++k) w.col(k) *= std::sqrt(std::max(mu(k), RealS(0)));
  const Mat4 n = w.transpose() * yy * w;
  const auto l = Eigen::JacobiSVD<Mat4>(n).singularValues();  // descending
  const RealS c = l(0) - l(1) - l(2) - l(3);
  return std::clamp(c, RealS(0), RealS(1));
}

/// Four mutually orthogonal single-qubit unitaries applied to the first atom.
struct DenseCodingEncoders {
  std::array<Eigen::Matrix2cd, 4> u;

  static const DenseCodingEncoders& standard();
};

/// (1/4) sum_i (U_i ⊗ I) rho (U_i ⊗ I)†.
AtomicState average_encoded_state(const AtomicState& rho,
                                  const DenseCodingEncoders& encoders = DenseCodingEncoders::standard());

/// chi = S(average encoded state) - S(rho), in bits, in [0, 2].
Real channel_capacity(const AtomicState& rho);

struct EntanglingPowerInputs {
  ElementOperators element_operators;
  CMatrix field_state;
  int d = kAtomicDim;
};

struct ZetaSums {
  Real zeta1 = 0.0;
  Real zeta2 = 0.0;
};

/// zeta1 = sum_{k1,k2} |tr(sum_i U_{k2 i} rho U_{k1 i}†)|^2,
/// zeta2 = sum_{k1,k2,i1,i2} |tr(U_{k2 i2} rho U_{k1 i1}†)|^2.
ZetaSums zeta_sums(const EntanglingPowerInputs& inputs);

/// E_p = 1 - (zeta1 + zeta2) / (d (d + 1)).
Real entangling_power(const EntanglingPowerInputs& inputs);

}  // namespace ajcm
