#include "ajcm/dynamics.hpp"

#include <stdexcept>

namespace ajcm {

HamiltonianMatrix build_hamiltonian(const ModelParams& params, const HilbertSpec& spec) {
  params.validate();
  const auto& ops = atomic_operators();
  const auto ladder = ladder_matrices(spec);
  const Eigen::Matrix4cd sigma_plus = ops.sigma_plus_1 + ops.sigma_plus_2;

  CMatrix h = kron(ladder.creator, sigma_plus);
  h += h.adjoint().eval();
  const CMatrix ising = params.lambda_s() * (ops.sigma_z_1 * ops.sigma_z_2);
  for (int n = 0; n < spec.field_dim(); ++n)
    h.block(spec.index(n, 0), spec.index(n, 0), kAtomicDim, kAtomicDim) += ising;

  return {std::move(h), spec, params.lambda_s()};
}

CMatrix SectorPropagator::assemble() const {
  CMatrix u = CMatrix::Zero(space.dim(), space.dim());
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const auto& m = (*sectors)[s].members;
    u(m, m) = blocks[s];
  }
  return u;
}

SectorEigensystem::SectorEigensystem(const HamiltonianMatrix& hamiltonian)
    : space_(hamiltonian.space),
      sectors_(std::make_shared<const std::vector<SectorIndex>>(sector_decompose(hamiltonian.space))) {
  energies_.reserve(sectors_->size());
  eigenvectors_.reserve(sectors_->size());
  for (const auto& sector : *sectors_) {
    const CMatrix block = hamiltonian.entries(sector.members, sector.members);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(block);
    energies_.push_back(solver.eigenvalues());
    eigenvectors_.push_back(solver.eigenvectors());
  }
}

SectorPropagator SectorEigensystem::propagator(Real tau) const {
  SectorPropagator p{space_, sectors_, {}, tau};
  p.blocks.reserve(energies_.size());
  for (std::size_t s = 0; s < energies_.size(); ++s) {
    const CVector phases = (energies_[s] * (-tau)).unaryExpr([](Real x) { return std::polar(1.0, x); });
    p.blocks.push_back(eigenvectors_[s] * phases.asDiagonal() * eigenvectors_[s].adjoint());
  }
  return p;
}

SectorPropagator propagate_sectors(const HamiltonianMatrix& hamiltonian, Real tau) {
  return SectorEigensystem(hamiltonian).propagator(tau);
}

CMatrix dense_propagator_oracle(const HamiltonianMatrix& hamiltonian, Real tau) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian.entries);
  const CVector phases = (solver.eigenvalues() * (-tau)).unaryExpr([](Real x) { return std::polar(1.0, x); });
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

DensityMatrix evolve_state(const DensityMatrix& rho0, const SectorPropagator& propagator) {
  const Eigen::Index dim = propagator.space.dim();
  if (rho0.entries.rows() != dim || rho0.entries.cols() != dim)
    throw std::invalid_argument("evolve_state: state dimension does not match propagator space");

  const auto& sectors = *propagator.sectors;
  CMatrix left(dim, dim);
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto& m = sectors[s].members;
    left(m, Eigen::all) = propagator.blocks[s] * rho0.entries(m, Eigen::all);
  }
  DensityMatrix out{CMatrix(dim, dim), rho0.space, rho0.trace_deficit};
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto& m = sectors[s].members;
    out.entries(Eigen::all, m) = left(Eigen::all, m) * propagator.blocks[s].adjoint();
  }
  return out;
}

Eigen::VectorXd sector_populations(const DensityMatrix& rho, const std::vector<SectorIndex>& sectors) {
  Eigen::VectorXd pops(static_cast<Eigen::Index>(sectors.size()));
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    Real p = 0.0;
    for (auto i : sectors[s].members) p += rho.entries(i, i).real();
    pops(static_cast<Eigen::Index>(s)) = p;
  }
  return pops;
}

ElementOperators element_operators(const CMatrix& composite, const HilbertSpec& spec) {
  if (composite.rows() != spec.dim() || composite.cols() != spec.dim())
    throw std::invalid_argument("element_operators: operator dimension does not match space");
  const Eigen::Index n = spec.field_dim();
  ElementOperators out;
  for (int i = 0; i < kAtomicDim; ++i)
    for (int j = 0; j < kAtomicDim; ++j)
      out[i][j] = composite(Eigen::seqN(i, n, kAtomicDim), Eigen::seqN(j, n, kAtomicDim));
  return out;
}

ElementOperators element_operators(const SectorPropagator& propagator) {
  const HilbertSpec& spec = propagator.space;
  const Eigen::Index n = spec.field_dim();
  ElementOperators out;
  for (auto& row : out)
    for (auto& e : row) e = CMatrix::Zero(n, n);
  const auto& sectors = *propagator.sectors;
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto& m = sectors[s].members;
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < m.size(); ++c)
        out[spec.atomic_index(m[r])][spec.atomic_index(m[c])](spec.fock_level(m[r]), spec.fock_level(m[c])) =
            propagator.blocks[s](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return out;
}

CMatrix assemble_elements(const ElementOperators& elements) {
  const Eigen::Index n = elements[0][0].rows();
  CMatrix u(kAtomicDim * n, kAtomicDim * n);
  for (int i = 0; i < kAtomicDim; ++i)
    for (int j = 0; j < kAtomicDim; ++j)
      u(Eigen::seqN(i, n, kAtomicDim), Eigen::seqN(j, n, kAtomicDim)) = elements[i][j];
  return u;
}

}  // namespace ajcm
