#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ajcm {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using CMatrix = DenseMatrix<Real>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/// Two-atom state in the basis [|ee>, |eg>, |ge>, |gg>].
using AtomicState = Eigen::Matrix4cd;

/// A state failed a physical-validity check (negative eigenvalue, non-Hermitian input, ...).
class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant (trace, Hermiticity, sector populations, measure range) was violated
/// during a run.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ajcm
