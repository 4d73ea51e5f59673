#include <atomic>
#include <chrono>
#include <exception>
#include <sstream>
#include <thread>

#include "ajcm/dynamics.hpp"
#include "ajcm/measures.hpp"
#include "ajcm/reduced_state.hpp"
#include "ajcm/runner.hpp"

namespace ajcm {

namespace {

constexpr Real kTraceTolerance = 1e-9;
constexpr Real kStateHermitianTolerance = 1e-10;
constexpr Real kPopulationTolerance = 1e-10;

std::string short_number(Real x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

struct CombinationResult {
  CombinationInfo info;
  std::vector<std::vector<Real>> values;  // parallel to config.measures
  InvariantSummary invariants;
};

bool composite_floor_holds(const CMatrix& rho) {
  const CMatrix shifted = rho + kEigenNoiseFloor * CMatrix::Identity(rho.rows(), rho.cols());
  Eigen::LLT<CMatrix> llt(shifted);
  return llt.info() == Eigen::Success;
}

void check_state(const DensityMatrix& rho, const AtomicState& atoms, const Eigen::VectorXd& pops0,
                 const std::vector<SectorIndex>& sectors, const RunOptions& options, InvariantSummary& inv) {
  ++inv.states_checked;
  const Real trace = rho.entries.trace().real();
  inv.max_trace_excess = std::max(inv.max_trace_excess, std::abs(1.0 - trace) - rho.trace_deficit);
  inv.max_hermiticity_error = std::max(inv.max_hermiticity_error, hermiticity_error(rho.entries));
  inv.max_population_drift =
      std::max(inv.max_population_drift, (sector_populations(rho, sectors) - pops0).cwiseAbs().maxCoeff());
  Eigen::SelfAdjointEigenSolver<AtomicState> solver(atoms, Eigen::EigenvaluesOnly);
  inv.min_atomic_eigenvalue = std::min(inv.min_atomic_eigenvalue, solver.eigenvalues().minCoeff());
  if (options.certify_composite_floor) {
    ++inv.composite_floor_checked;
    if (!composite_floor_holds(rho.entries)) ++inv.composite_floor_failures;
  }
}

CombinationResult run_combination(const RunConfig& config, Real lambda_s, Real n_bar, const std::vector<Real>& taus,
                                  const RunOptions& options) {
  const HilbertSpec spec(choose_truncation(n_bar, config.tail_tol));
  const ModelParams params = ModelParams::scaled(lambda_s, n_bar, config.theta);
  const SectorEigensystem eigensystem(build_hamiltonian(params, spec));
  const DensityMatrix field = coherent_field(n_bar, spec);

  bool needs_state = false;
  bool needs_power = false;
  for (Measure m : config.measures) (m == Measure::entangling_power ? needs_power : needs_state) = true;

  CombinationResult result;
  result.info = {n_bar, lambda_s, spec.n_max(), field.trace_deficit};
  result.values.assign(config.measures.size(), std::vector<Real>(taus.size()));

  DensityMatrix rho0;
  Eigen::VectorXd pops0;
  if (needs_state) {
    rho0 = composite_initial(params, spec);
    pops0 = sector_populations(rho0, eigensystem.sectors());
  }

  auto& inv = result.invariants;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    const SectorPropagator propagator = eigensystem.propagator(taus[t]);
    AtomicState atoms;
    if (needs_state) {
      const DensityMatrix rho = evolve_state(rho0, propagator);
      atoms = partial_trace_field(rho, spec);
      check_state(rho, atoms, pops0, eigensystem.sectors(), options, inv);
    }
    for (std::size_t m = 0; m < config.measures.size(); ++m) {
      Real value = 0.0;
      switch (config.measures[m]) {
        case Measure::entangling_power:
          value = entangling_power({element_operators(propagator), field.entries});
          inv.min_entangling_power = std::min(inv.min_entangling_power, value);
          inv.max_entangling_power = std::max(inv.max_entangling_power, value);
          break;
        case Measure::concurrence:
          value = concurrence(atoms);
          inv.min_concurrence = std::min(inv.min_concurrence, value);
          inv.max_concurrence = std::max(inv.max_concurrence, value);
          break;
        case Measure::capacity:
          value = channel_capacity(atoms);
          inv.min_capacity = std::min(inv.min_capacity, value);
          inv.max_capacity = std::max(inv.max_capacity, value);
          break;
      }
      result.values[m][t] = value;
    }
  }
  return result;
}

}  // namespace

const char* measure_tag(Measure m) {
  switch (m) {
    case Measure::entangling_power: return "Ep";
    case Measure::concurrence: return "C";
    case Measure::capacity: return "chi";
  }
  return "?";
}

void InvariantSummary::merge(const InvariantSummary& o) {
  states_checked += o.states_checked;
  max_trace_excess = std::max(max_trace_excess, o.max_trace_excess);
  max_hermiticity_error = std::max(max_hermiticity_error, o.max_hermiticity_error);
  min_atomic_eigenvalue = std::min(min_atomic_eigenvalue, o.min_atomic_eigenvalue);
  composite_floor_failures += o.composite_floor_failures;
  composite_floor_checked += o.composite_floor_checked;
  max_population_drift = std::max(max_population_drift, o.max_population_drift);
  min_concurrence = std::min(min_concurrence, o.min_concurrence);
  max_concurrence = std::max(max_concurrence, o.max_concurrence);
  min_capacity = std::min(min_capacity, o.min_capacity);
  max_capacity = std::max(max_capacity, o.max_capacity);
  min_entangling_power = std::min(min_entangling_power, o.min_entangling_power);
  max_entangling_power = std::max(max_entangling_power, o.max_entangling_power);
}

std::string InvariantSummary::violation() const {
  std::ostringstream s;
  if (max_trace_excess > kTraceTolerance) s << "trace off by " << max_trace_excess << " beyond tail deficit";
  else if (max_hermiticity_error > kStateHermitianTolerance) s << "Hermiticity error " << max_hermiticity_error;
  else if (min_atomic_eigenvalue < -kEigenNoiseFloor) s << "atomic eigenvalue " << min_atomic_eigenvalue;
  else if (composite_floor_failures > 0) s << composite_floor_failures << " composite states below eigenvalue floor";
  else if (max_population_drift > kPopulationTolerance) s << "sector population drift " << max_population_drift;
  else if (min_concurrence < 0.0 || max_concurrence > 1.0) s << "concurrence outside [0,1]";
  else if (min_capacity < 0.0 || max_capacity > 2.0) s << "capacity outside [0,2]";
  else if (min_entangling_power < 0.0 || max_entangling_power > 1.0) s << "entangling power outside [0,1]";
  return s.str();
}

MeasureSeries MeasureSeries::only(Measure m) const {
  MeasureSeries out = *this;
  out.columns.clear();
  for (const auto& c : columns)
    if (c.measure == m) out.columns.push_back(c);
  return out;
}

MeasureSeries run_time_series(const RunConfig& config, const RunOptions& options) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  MeasureSeries series;
  series.name = config.name;
  series.theta = config.theta;
  series.tau = config.tau.values();

  struct Task {
    Real lambda_s;
    Real n_bar;
  };
  std::vector<Task> tasks;
  for (Real ls : config.omega_s_over_lambda)
    for (Real nb : config.n_bar) tasks.push_back({ls, nb});

  std::vector<CombinationResult> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = run_combination(config, tasks[i].lambda_s, tasks[i].n_bar, series.tau, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(options.threads, 1, static_cast<int>(std::max<std::size_t>(tasks.size(), 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (std::size_t m = 0; m < config.measures.size(); ++m) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      SeriesColumn col;
      col.measure = config.measures[m];
      col.n_bar = tasks[i].n_bar;
      col.lambda_s = tasks[i].lambda_s;
      col.name = std::string(measure_tag(col.measure)) + "[nbar=" + short_number(col.n_bar) +
                 ",ls=" + short_number(col.lambda_s) + "]";
      col.values = std::move(results[i].values[m]);
      series.columns.push_back(std::move(col));
    }
  }
  for (const auto& r : results) {
    series.combinations.push_back(r.info);
    series.invariants.merge(r.invariants);
  }
  series.wall_seconds = std::chrono::duration<Real>(std::chrono::steady_clock::now() - started).count();

  if (const std::string v = series.invariants.violation(); !v.empty())
    throw InvariantViolation("run '" + config.name + "': " + v);
  return series;
}

}  // namespace ajcm
