#pragma once

#include <array>
#include <vector>

#include "ajcm/types.hpp"

namespace ajcm {

/// Atomic basis ordering. Composite index is field-major: 4 * n + a.
enum AtomicIndex : int { kEE = 0, kEG = 1, kGE = 2, kGG = 3 };
inline constexpr int kAtomicDim = 4;

/// Truncated field (Fock levels 0..n_max) tensored with the two-atom space.
class HilbertSpec {
 public:
  explicit HilbertSpec(int n_max);

  int n_max() const { return n_max_; }
  int field_dim() const { return n_max_ + 1; }
  Eigen::Index dim() const { return Eigen::Index{kAtomicDim} * field_dim(); }

  Eigen::Index index(int fock, int atomic) const { return Eigen::Index{kAtomicDim} * fock + atomic; }
  int fock_level(Eigen::Index i) const { return static_cast<int>(i / kAtomicDim); }
  int atomic_index(Eigen::Index i) const { return static_cast<int>(i % kAtomicDim); }

  /// Eigenvalue of K = a†a - (σz¹ + σz²)/2 for a composite basis state.
  int sector_label(Eigen::Index i) const;

  friend bool operator==(const HilbertSpec&, const HilbertSpec&) = default;

 private:
  int n_max_;
};

/// Throws std::invalid_argument for n_max < 0.
HilbertSpec build_space(int n_max);

template <typename Scalar = Real>
struct LadderPair {
  DenseMatrix<Scalar> annihilator;
  DenseMatrix<Scalar> creator;
};

/// Field ladder operators truncated at n_max: <n-1|a|n> = sqrt(n).
template <typename Scalar = Real>
LadderPair<Scalar> ladder_matrices(const HilbertSpec& spec) {
  const Eigen::Index n = spec.field_dim();
  DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<Scalar>(k));
  DenseMatrix<Scalar> ad = a.adjoint();
  return {std::move(a), std::move(ad)};
}

/// Single-atom and two-atom operators on the 4-dimensional atomic factor.
struct AtomicOperators {
  Eigen::Matrix4cd sigma_plus_1;  // |e><g| on atom 1
  Eigen::Matrix4cd sigma_plus_2;
  Eigen::Matrix4cd sigma_z_1;
  Eigen::Matrix4cd sigma_z_2;
};

const AtomicOperators& atomic_operators();

/// One K-sector: {|k+1,ee>, |k,eg>, |k,ge>, |k-1,gg>} with out-of-range Fock levels omitted.
struct SectorIndex {
  int k = 0;
  std::vector<Eigen::Index> members;
  /// True when the n_max cutoff removed at least one member (dynamics inside is inexact).
  bool clipped = false;
};

/// Sectors k = -1 .. n_max + 1, in increasing k. They partition the composite basis.
std::vector<SectorIndex> sector_decompose(const HilbertSpec& spec);

/// Kronecker product, field factor on the left (field-major ordering).
template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& lhs, const Eigen::MatrixBase<B>& rhs) {
  using Scalar = typename A::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(lhs.rows() * rhs.rows(),
                                                            lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i)
    for (Eigen::Index j = 0; j < lhs.cols(); ++j)
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
  return out;
}

}  // namespace ajcm
