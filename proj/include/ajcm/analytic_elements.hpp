#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ajcm/dynamics.hpp"

namespace ajcm {

/// Scalar functions of the photon number that build the closed-form propagator.
/// Arguments are real so that shifted evaluations (n - 1, n + 1) need no special casing.
struct AnalyticCoefficients {
  Real lambda_s = 0.0;
  Real tau = 0.0;

  Real f1_squared(Real n) const { return 2.0 * (2.0 * n + 1.0); }
  Real f1(Real n) const { return std::sqrt(f1_squared(n)); }
  Real M(Real n) const { return std::sqrt(f1_squared(n) + lambda_s * lambda_s); }
  Real C_ls() const { return std::cos(lambda_s * tau); }
  Real S_ls() const { return std::sin(lambda_s * tau); }
  Real C_M(Real n) const { return std::cos(M(n) * tau); }
  Real S_M(Real n) const { return std::sin(M(n) * tau); }
  Real C_M_ls(Real n) const { return C_M(n) - C_ls(); }

  Real alpha(Real n) const { return (S_ls() - lambda_s * S_M(n) / M(n)) / f1_squared(n); }
  Real beta(Real n) const { return S_M(n) / M(n); }
  Real gamma(Real n) const { return C_M_ls(n) / f1_squared(n); }
  // Defined alongside the others but unused by the theta = 0 closed form.
  Real delta(Real n) const { return 0.5 * C_M_ls(n); }
};

enum class Ladder { identity, annihilate, create };

/// left · kernel(n̂) · right
struct OperatorTerm {
  Ladder left = Ladder::identity;
  std::function<Complex(const AnalyticCoefficients&, Real)> kernel;
  Ladder right = Ladder::identity;
  std::string kernel_name;
};

/// scalar · I + sum of operator terms.
struct ElementForm {
  std::function<Complex(const AnalyticCoefficients&)> scalar;
  std::string scalar_name;
  std::vector<OperatorTerm> terms;
};

/// Closed-form elements as written, indexed [row][col] in the atomic basis.
const std::array<std::array<ElementForm, kAtomicDim>, kAtomicDim>& literal_element_forms();

/// A candidate correction of one operator term.
struct TermVariant {
  int shift = 0;  // kernel evaluated at n̂ + shift
  bool flip_sign = false;
  bool swap_left = false;  // a <-> a†
  bool swap_right = false;

  int edits() const { return (shift != 0) + flip_sign + swap_left + swap_right; }
  friend bool operator==(const TermVariant&, const TermVariant&) = default;
};

using ElementVariant = std::vector<TermVariant>;
using VariantTable = std::array<std::array<ElementVariant, kAtomicDim>, kAtomicDim>;

std::string describe_form(const ElementForm& form, const ElementVariant& variant = {});

/// Field-space matrix of one element on Fock levels 0..n_max.
CMatrix realize_element(const ElementForm& form, const AnalyticCoefficients& coeffs, const HilbertSpec& spec,
                        const ElementVariant& variant = {});

/// Literal forms.
ElementOperators analytic_propagator_elements(const ModelParams& params, const HilbertSpec& spec, Real tau);

/// Literal forms with per-element corrections applied (empty variant = literal).
ElementOperators analytic_propagator_elements(const ModelParams& params, const HilbertSpec& spec, Real tau,
                                              const VariantTable& variants);

struct ElementValidation {
  int row = 0;
  int col = 0;
  std::string literal_form;
  Real literal_deviation = 0.0;
  bool verified = false;  // literal form within tolerance
  bool repaired = false;  // some variant within tolerance
  ElementVariant variant;
  std::string repaired_form;
  Real repaired_deviation = 0.0;

  bool explained() const { return verified || repaired; }
};

struct ValidationReport {
  Real lambda_s = 0.0;
  Real tau = 0.0;
  int n_max = 0;
  Real tolerance = 0.0;
  std::array<ElementValidation, kAtomicDim * kAtomicDim> elements;

  bool all_explained() const;
  VariantTable variants() const;
};

/// Compares every literal element against the dense oracle on unclipped sectors; when the literal
/// form misses, searches shifts {-1, 0, +1}, sign flips and a <-> a† swaps per term and keeps the
/// variant with fewest edits.
ValidationReport validate_analytic_elements(Real lambda_s, const HilbertSpec& spec, Real tau, Real tolerance = 1e-8);

void write_validation_report(std::ostream& out, std::span<const ValidationReport> reports);

}  // namespace ajcm
