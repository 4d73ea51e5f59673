#pragma once

#include <array>
#include <memory>
#include <vector>

#include "ajcm/hilbert_space.hpp"
#include "ajcm/initial_states.hpp"
#include "ajcm/types.hpp"

namespace ajcm {

/// H / lambda on the composite space.
struct HamiltonianMatrix {
  CMatrix entries;
  HilbertSpec space{0};
  Real lambda_s = 0.0;
};

/// H/lambda = sum_l (a† σ+^l + a σ-^l) + lambda_s σz¹σz².
HamiltonianMatrix build_hamiltonian(const ModelParams& params, const HilbertSpec& spec);

/// exp(-i H tau) as one unitary block per K-sector.
struct SectorPropagator {
  HilbertSpec space{0};
  std::shared_ptr<const std::vector<SectorIndex>> sectors;
  std::vector<CMatrix> blocks;
  Real tau = 0.0;

  /// Dense composite-space matrix.
  CMatrix assemble() const;
};

/// Hermitian eigendecomposition of every sector block, computed once and reused for any tau.
class SectorEigensystem {
 public:
  explicit SectorEigensystem(const HamiltonianMatrix& hamiltonian);

  SectorPropagator propagator(Real tau) const;

  const HilbertSpec& space() const { return space_; }
  const std::vector<SectorIndex>& sectors() const { return *sectors_; }
  const std::shared_ptr<const std::vector<SectorIndex>>& shared_sectors() const { return sectors_; }

 private:
  HilbertSpec space_;
  std::shared_ptr<const std::vector<SectorIndex>> sectors_;
  std::vector<Eigen::VectorXd> energies_;
  std::vector<CMatrix> eigenvectors_;
};

SectorPropagator propagate_sectors(const HamiltonianMatrix& hamiltonian, Real tau);

/// Independent route: full-space eigendecomposition, sector structure ignored.
CMatrix dense_propagator_oracle(const HamiltonianMatrix& hamiltonian, Real tau);

/// rho(tau) = U rho0 U†, applied sector by sector (O(dim^2) per call).
DensityMatrix evolve_state(const DensityMatrix& rho0, const SectorPropagator& propagator);

/// Probability carried by each sector (same order as sector_decompose).
Eigen::VectorXd sector_populations(const DensityMatrix& rho, const std::vector<SectorIndex>& sectors);

/// Atomic matrix elements of a composite operator: result[i][j](m, n) = <m, i| U |n, j>.
using ElementOperators = std::array<std::array<CMatrix, kAtomicDim>, kAtomicDim>;

ElementOperators element_operators(const CMatrix& composite, const HilbertSpec& spec);
ElementOperators element_operators(const SectorPropagator& propagator);
CMatrix assemble_elements(const ElementOperators& elements);

}  // namespace ajcm
