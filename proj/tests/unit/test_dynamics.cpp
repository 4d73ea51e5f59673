#include <doctest.h>

#include <numbers>
#include <random>

#include "ajcm/dynamics.hpp"
#include "ajcm/reduced_state.hpp"
#include "test_support.hpp"

using namespace ajcm;
using ajcm::test::max_abs_diff;

TEST_CASE("Hamiltonian matrix elements") {
  const HilbertSpec spec(6);
  const Real ls = 3.5;
  const auto h = build_hamiltonian(ModelParams::scaled(ls, 1.0, 0.0), spec);
  CHECK(h.entries(spec.index(1, kEE), spec.index(0, kGE)).real() == doctest::Approx(1.0));
  CHECK(h.entries(spec.index(1, kEE), spec.index(0, kEG)).real() == doctest::Approx(1.0));
  CHECK(h.entries(spec.index(3, kEG), spec.index(2, kGG)).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK(h.entries(spec.index(0, kEE), spec.index(0, kEE)).real() == doctest::Approx(ls));
  CHECK(h.entries(spec.index(0, kEG), spec.index(0, kEG)).real() == doctest::Approx(-ls));
  CHECK(h.entries(spec.index(4, kGG), spec.index(4, kGG)).real() == doctest::Approx(ls));
  // Omega_s and lambda enter only through their ratio.
  const auto h2 = build_hamiltonian(ModelParams{2.0, 2.0 * ls, 1.0, 0.0}, spec);
  CHECK(max_abs_diff(h.entries, h2.entries) == 0.0);
}

TEST_CASE("Hamiltonian is Hermitian and vanishes between sectors") {
  for (Real ls : {0.0, 5.0, 10.0}) {
    const HilbertSpec spec(12);
    const auto h = build_hamiltonian(ModelParams::scaled(ls, 0.0, 0.0), spec);
    CHECK(max_abs_diff(h.entries, h.entries.adjoint()) < 1e-14);
    for (Eigen::Index i = 0; i < spec.dim(); ++i)
      for (Eigen::Index j = 0; j < spec.dim(); ++j)
        if (spec.sector_label(i) != spec.sector_label(j)) REQUIRE(h.entries(i, j) == Complex(0.0));
  }
}

TEST_CASE("sector propagator basics") {
  const HilbertSpec spec(8);
  const Real ls = 5.0;
  const auto h = build_hamiltonian(ModelParams::scaled(ls, 0.0, 0.0), spec);
  const SectorEigensystem eig(h);

  const auto p0 = eig.propagator(0.0);
  for (const auto& b : p0.blocks) CHECK(max_abs_diff(b, CMatrix::Identity(b.rows(), b.cols())) < 1e-14);

  const Real tau = 1.3;
  const auto p = eig.propagator(tau);
  REQUIRE(p.blocks.front().rows() == 1);
  const Complex phase = std::polar(1.0, -ls * tau);
  CHECK(std::abs(p.blocks.front()(0, 0) - phase) < 1e-14);

  for (Real t : {0.5, 7.0, 25.0}) {
    for (const auto& b : eig.propagator(t).blocks)
      CHECK((b.adjoint() * b - CMatrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("sector propagator agrees with the dense oracle") {
  const HilbertSpec spec(30);
  for (Real ls : {0.0, 5.0, 10.0}) {
    const auto h = build_hamiltonian(ModelParams::scaled(ls, 0.0, 0.0), spec);
    const SectorEigensystem eig(h);
    for (Real tau : {1.0, 5.0, 25.0}) {
      const CMatrix dense = dense_propagator_oracle(h, tau);
      CHECK(max_abs_diff(eig.propagator(tau).assemble(), dense) < 1e-10);
      CHECK((dense.adjoint() * dense - CMatrix::Identity(spec.dim(), spec.dim())).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  const auto h = build_hamiltonian(ModelParams::scaled(2.0, 0.0, 0.0), spec);
  CHECK(max_abs_diff(dense_propagator_oracle(h, 0.0), CMatrix::Identity(spec.dim(), spec.dim())) < 1e-12);
}

TEST_CASE("element operators") {
  const HilbertSpec spec(3);
  const auto h = build_hamiltonian(ModelParams::scaled(0.0, 0.0, 0.0), spec);
  const auto prop = propagate_sectors(h, 1.0);
  const auto from_sectors = element_operators(prop);
  const auto from_dense = element_operators(prop.assemble(), spec);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(max_abs_diff(from_sectors[i][j], from_dense[i][j]) == 0.0);
  CHECK(max_abs_diff(assemble_elements(from_sectors), prop.assemble()) == 0.0);

  // <0|U21|1> = <0,eg|U|1,ee> = -i sin(sqrt 2) / sqrt 2 (frozen from a scipy expm of the k = 0 block).
  CHECK(std::abs(from_sectors[kEG][kEE](0, 1) - Complex(0.0, -0.6984559986366085)) < 1e-12);
  // |1,eg> and |0,ee> lie in different sectors.
  CHECK(from_sectors[kEG][kEE](1, 0) == Complex(0.0));
}

TEST_CASE("evolve_state") {
  SUBCASE("tau = 0 returns the initial state") {
    const HilbertSpec spec(choose_truncation(1.0, 1e-12));
    const auto params = ModelParams::scaled(5.0, 1.0, 0.7);
    const auto rho0 = composite_initial(params, spec);
    const auto rho = evolve_state(rho0, propagate_sectors(build_hamiltonian(params, spec), 0.0));
    CHECK(max_abs_diff(rho.entries, rho0.entries) < 1e-15);
  }
  SUBCASE("vacuum with both atoms excited is stationary") {
    const HilbertSpec spec(4);
    const auto params = ModelParams::scaled(10.0, 0.0, 0.0);
    const auto rho0 = composite_initial(params, spec);
    const SectorEigensystem eig(build_hamiltonian(params, spec));
    for (Real tau : {0.3, 2.0, 25.0}) CHECK(max_abs_diff(evolve_state(rho0, eig.propagator(tau)).entries, rho0.entries) < 1e-12);
  }
  SUBCASE("dimension mismatch") {
    const auto prop = propagate_sectors(build_hamiltonian(ModelParams::scaled(0, 0, 0), HilbertSpec(3)), 1.0);
    DensityMatrix wrong{CMatrix::Identity(8, 8), SpaceTag::composite, 0.0};
    CHECK_THROWS_AS(evolve_state(wrong, prop), std::invalid_argument);
  }
}

TEST_CASE("evolved reduced state matches frozen dense-oracle values") {
  // theta = 0, n_bar = 1, lambda_s = 0, tau = 1; frozen from scipy expm + partial trace at n_max = 18.
  const Eigen::Matrix4cd expected = [] {
    using C = Complex;
    Eigen::Matrix4cd m;
    m << C(0.38551280016135686, 0), C(0, 0.27392409236187182), C(0, 0.27392409236187187), C(-0.22934581187060679, 0),
        C(0, -0.27392409236187182), C(0.20667507100376381, 0), C(0.20667507100376387, 0), C(0, 0.18778401962418501),
        C(0, -0.27392409236187187), C(0.20667507100376384, 0), C(0.20667507100376389, 0), C(0, 0.18778401962418506),
        C(-0.22934581187060679, 0), C(0, -0.18778401962418498), C(0, -0.18778401962418503), C(0.20113705783111516, 0);
    return m;
  }();
  const HilbertSpec spec(18);
  const auto params = ModelParams::scaled(0.0, 1.0, 0.0);
  const auto rho = evolve_state(composite_initial(params, spec), propagate_sectors(build_hamiltonian(params, spec), 1.0));
  CHECK(max_abs_diff(partial_trace_field(rho, spec), expected) < 1e-10);
}

TEST_CASE("evolution invariants over random parameters") {
  std::mt19937_64 rng(20241015);
  std::uniform_real_distribution<Real> u01(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const Real n_bar = 4.0 * u01(rng);
    const Real ls = 10.0 * u01(rng);
    const Real theta = std::numbers::pi * u01(rng);
    const auto params = ModelParams::scaled(ls, n_bar, theta);
    const HilbertSpec spec(choose_truncation(n_bar, 1e-12));
    const SectorEigensystem eig(build_hamiltonian(params, spec));
    const auto rho0 = composite_initial(params, spec);
    const auto pops0 = sector_populations(rho0, eig.sectors());
    const Real purity0 = (rho0.entries * rho0.entries).trace().real();
    for (int k = 0; k < 5; ++k) {
      const Real tau = 25.0 * u01(rng);
      const auto rho = evolve_state(rho0, eig.propagator(tau));
      CHECK((sector_populations(rho, eig.sectors()) - pops0).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(std::abs((rho.entries * rho.entries).trace().real() - purity0) < 1e-9);
      CHECK(std::abs(rho.entries.trace().real() - (1.0 - rho.trace_deficit)) < 1e-12);
      CHECK(max_abs_diff(rho.entries, rho.entries.adjoint()) < 1e-10);
    }
  }
}
