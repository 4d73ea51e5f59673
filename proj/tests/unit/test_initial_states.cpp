#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ajcm/initial_states.hpp"

using namespace ajcm;

namespace {

/// Brute-force Poisson tail: 1 - partial sum in long double, factorials built iteratively.
long double brute_tail(long double n_bar, int n_max) {
  long double term = std::exp(-n_bar), sum = 0.0L;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) term *= n_bar / n;
    sum += term;
  }
  return 1.0L - sum;
}

int brute_truncation(long double n_bar, long double tol) {
  int n = 0;
  while (brute_tail(n_bar, n) >= tol) ++n;
  return n + 4;
}

}  // namespace

TEST_CASE("atomic_initial examples") {
  const AtomicState e = atomic_initial(0.0);
  CHECK((e - Eigen::Matrix4cd(Eigen::Vector4cd(1, 0, 0, 0).asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);

  const AtomicState bell = atomic_initial(std::numbers::pi / 4);
  for (int a : {kEE, kGG})
    for (int b : {kEE, kGG}) CHECK(bell(a, b).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bell(kEG, kEG) == Complex(0.0));

  const AtomicState g = atomic_initial(std::numbers::pi / 2);
  CHECK(g(kGG, kGG).real() == doctest::Approx(1.0));
  CHECK(std::abs(g(kEE, kEE)) < 1e-15);

  CHECK_THROWS_AS(atomic_initial(-0.1), std::domain_error);
  CHECK_THROWS_AS(atomic_initial(3.2), std::domain_error);
  CHECK_NOTHROW(atomic_initial(std::numbers::pi));
}

TEST_CASE("atomic_initial is pure for every theta") {
  for (int k = 0; k <= 64; ++k) {
    const Real theta = std::numbers::pi * k / 64;
    const AtomicState rho = atomic_initial(theta);
    CHECK(std::abs((rho * rho).trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("coherent_field examples") {
  SUBCASE("vacuum") {
    const auto rho = coherent_field(0.0, HilbertSpec(5));
    CHECK(rho.entries(0, 0) == Complex(1.0));
    CHECK(rho.entries.cwiseAbs().sum() == 1.0);
    CHECK(rho.trace_deficit == 0.0);
  }
  SUBCASE("n_bar = 1") {
    const auto rho = coherent_field(1.0, HilbertSpec(18));
    CHECK(rho.entries(0, 0).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(rho.entries(0, 0).real() == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(rho.entries(0, 1).real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(rho.space == SpaceTag::field);
  }
}

TEST_CASE("coherent_field diagonal is Poisson; state is rank one; deficit recorded") {
  for (Real n_bar : {0.1, 1.0, 3.5, 25.0}) {
    const int n_max = choose_truncation(n_bar, 1e-12);
    const auto rho = coherent_field(n_bar, HilbertSpec(n_max));
    for (int n = 0; n <= n_max; ++n) {
      const Real poisson = std::exp(-n_bar + n * std::log(n_bar) - std::lgamma(n + 1.0));
      CHECK(rho.entries(n, n).real() == doctest::Approx(poisson).epsilon(1e-12));
    }
    CHECK(rho.trace_deficit == 1.0 - rho.entries.trace().real());
    CHECK(rho.trace_deficit < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.entries);
    const auto ev = solver.eigenvalues();
    CHECK(ev(ev.size() - 1) == doctest::Approx(rho.entries.trace().real()).epsilon(1e-12));
    CHECK(ev.head(ev.size() - 1).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("poisson_tail agrees with brute-force partial sums") {
  for (Real n_bar : {0.1, 1.0, 25.0})
    for (int n_max : {0, 3, 10, 40}) {
      const auto oracle = static_cast<Real>(brute_tail(n_bar, n_max));
      CHECK(std::abs(poisson_tail(n_bar, n_max) - oracle) <= 1e-13 * oracle + 1e-18);
    }
}

TEST_CASE("choose_truncation") {
  CHECK(choose_truncation(0.0, 1e-12) == 4);
  CHECK(choose_truncation(0.0, 0.5) == 4);
  // Frozen from an independent Poisson survival-function oracle.
  CHECK(choose_truncation(0.1, 1e-12) == 11);
  CHECK(choose_truncation(1.0, 1e-12) == 18);
  CHECK(choose_truncation(25.0, 1e-12) == 72);
  for (Real n_bar : {0.1, 1.0, 2.5, 25.0})
    for (Real tol : {1e-6, 1e-9, 1e-12}) CHECK(choose_truncation(n_bar, tol) == brute_truncation(n_bar, tol));
  CHECK_THROWS_AS(choose_truncation(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(choose_truncation(1.0, 1.0), std::domain_error);
}

TEST_CASE("composite_initial") {
  SUBCASE("vacuum times |ee>") {
    const HilbertSpec spec(4);
    const auto rho = composite_initial(ModelParams::scaled(0.0, 0.0, 0.0), spec);
    const auto i = spec.index(0, kEE);
    CHECK(rho.entries(i, i) == Complex(1.0));
    CHECK(rho.entries.cwiseAbs().sum() == 1.0);
  }
  SUBCASE("trace and purity multiply") {
    for (Real theta : {0.0, 0.3, std::numbers::pi / 4, 2.0}) {
      const Real n_bar = 1.7;
      const HilbertSpec spec(choose_truncation(n_bar, 1e-12));
      const auto field = coherent_field(n_bar, spec);
      const auto rho = composite_initial(ModelParams::scaled(5.0, n_bar, theta), spec);
      CHECK(rho.entries.trace().real() == doctest::Approx(field.entries.trace().real()).epsilon(1e-14));
      CHECK(rho.trace_deficit == field.trace_deficit);
      const Real purity_field = (field.entries * field.entries).trace().real();
      CHECK((rho.entries * rho.entries).trace().real() == doctest::Approx(purity_field).epsilon(1e-12));
    }
  }
  SUBCASE("invalid params") {
    CHECK_THROWS_AS(composite_initial(ModelParams{0.0, 0.0, 1.0, 0.0}, HilbertSpec(3)), std::domain_error);
    CHECK_THROWS_AS(composite_initial(ModelParams::scaled(0.0, -1.0, 0.0), HilbertSpec(3)), std::domain_error);
  }
}

TEST_CASE("lambda_s is derived, not stored") {
  ModelParams p{2.0, 10.0, 1.0, 0.0};
  CHECK(p.lambda_s() == 5.0);
  p.omega_s = 4.0;
  CHECK(p.lambda_s() == 2.0);
}
