#include "ajcm/analytic_elements.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace ajcm {

namespace {

constexpr Complex kI{0.0, 1.0};

using Coeffs = AnalyticCoefficients;

Complex cos_minus_i_sin(const Coeffs& c) { return {c.C_ls(), -c.S_ls()}; }

OperatorTerm term(Ladder left, std::function<Complex(const Coeffs&, Real)> kernel, Ladder right, std::string name) {
  return {left, std::move(kernel), right, std::move(name)};
}

std::array<std::array<ElementForm, kAtomicDim>, kAtomicDim> make_literal_forms() {
  using L = Ladder;
  const auto zero = [](const Coeffs&) { return Complex{}; };
  const auto two_gamma_alpha = [](const Coeffs& c, Real n) { return 2.0 * c.gamma(n) + 2.0 * kI * c.alpha(n); };
  const auto minus_i_beta = [](const Coeffs& c, Real n) { return -kI * c.beta(n); };
  const auto diag_kernel = [](const Coeffs& c, Real n) {
    return c.delta(n) + 0.5 * kI * (c.S_ls() + c.lambda_s * c.beta(n));
  };
  const auto cross_kernel = [](const Coeffs& c, Real n) {
    return c.delta(n) - 0.5 * kI * (c.S_ls() - c.lambda_s * c.beta(n));
  };

  std::array<std::array<ElementForm, kAtomicDim>, kAtomicDim> f;
  f[0][0] = {cos_minus_i_sin, "(C_ls - i S_ls)", {term(L::create, two_gamma_alpha, L::annihilate, "(2γ + 2iα)")}};
  f[0][1] = {zero, "", {term(L::create, minus_i_beta, L::identity, "(-iβ)")}};
  f[0][2] = f[0][1];
  f[0][3] = {zero,
             "",
             {term(L::create, [](const Coeffs& c, Real n) { return Complex{2.0 * c.gamma(n)}; }, L::annihilate, "(2γ)"),
              term(L::create, [](const Coeffs& c, Real n) { return -2.0 * kI * c.alpha(n); }, L::create, "(-2iα)")}};
  f[1][0] = {zero, "", {term(L::identity, minus_i_beta, L::annihilate, "(-iβ)")}};
  f[1][1] = {[](const Coeffs& c) { return Complex{c.C_ls()}; },
             "C_ls",
             {term(L::identity, diag_kernel, L::identity, "(δ + i(S_ls + λs β)/2)")}};
  f[1][2] = {zero, "", {term(L::identity, cross_kernel, L::identity, "(δ - i(S_ls - λs β)/2)")}};
  f[1][3] = {zero, "", {term(L::identity, minus_i_beta, L::create, "(-iβ)")}};
  f[2][0] = f[1][0];
  f[2][1] = f[1][2];
  f[2][2] = f[1][1];
  f[2][3] = f[1][3];
  f[3][0] = {zero, "", {term(L::annihilate, two_gamma_alpha, L::annihilate, "(2γ + 2iα)")}};
  f[3][1] = {zero, "", {term(L::annihilate, minus_i_beta, L::identity, "(-iβ)")}};
  f[3][2] = f[3][1];
  f[3][3] = {cos_minus_i_sin, "(C_ls - i S_ls)", {term(L::annihilate, two_gamma_alpha, L::create, "(2γ + 2iα)")}};
  return f;
}

Ladder swapped(Ladder l, bool swap) {
  if (!swap || l == Ladder::identity) return l;
  return l == Ladder::create ? Ladder::annihilate : Ladder::create;
}

const char* ladder_symbol(Ladder l) {
  switch (l) {
    case Ladder::annihilate: return "a";
    case Ladder::create: return "a†";
    default: return "";
  }
}

CMatrix ladder_matrix(Ladder l, const LadderPair<Real>& ladder, Eigen::Index n) {
  switch (l) {
    case Ladder::annihilate: return ladder.annihilator;
    case Ladder::create: return ladder.creator;
    default: return CMatrix::Identity(n, n);
  }
}

CMatrix realize_term(const OperatorTerm& t, const TermVariant& v, const Coeffs& coeffs, const HilbertSpec& spec,
                     const LadderPair<Real>& ladder) {
  const Eigen::Index n = spec.field_dim();
  CVector diag(n);
  for (Eigen::Index k = 0; k < n; ++k) diag(k) = t.kernel(coeffs, static_cast<Real>(k + v.shift));
  if (v.flip_sign) diag = -diag;
  const CMatrix left = ladder_matrix(swapped(t.left, v.swap_left), ladder, n);
  const CMatrix right = ladder_matrix(swapped(t.right, v.swap_right), ladder, n);
  return left * diag.asDiagonal() * right;
}

std::vector<TermVariant> candidate_variants(const OperatorTerm& t) {
  std::vector<TermVariant> out;
  const bool can_swap_left = t.left != Ladder::identity;
  const bool can_swap_right = t.right != Ladder::identity;
  for (int shift : {0, -1, 1})
    for (bool flip : {false, true})
      for (bool sl : {false, true})
        for (bool sr : {false, true}) {
          if ((sl && !can_swap_left) || (sr && !can_swap_right)) continue;
          out.push_back({shift, flip, sl, sr});
        }
  return out;
}

/// Max deviation over entries whose composite row and column both lie in unclipped sectors.
Real masked_deviation(const CMatrix& element, const CMatrix& reference, int row, int col,
                      const std::vector<bool>& exact, const HilbertSpec& spec) {
  Real worst = 0.0;
  for (Eigen::Index m = 0; m < element.rows(); ++m) {
    if (!exact[spec.index(static_cast<int>(m), row)]) continue;
    for (Eigen::Index n = 0; n < element.cols(); ++n) {
      if (!exact[spec.index(static_cast<int>(n), col)]) continue;
      const Real d = std::abs(element(m, n) - reference(m, n));
      if (!std::isfinite(d)) return std::numeric_limits<Real>::infinity();
      worst = std::max(worst, d);
    }
  }
  return worst;
}

std::string format_deviation(Real d) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << d;
  return s.str();
}

}  // namespace

const std::array<std::array<ElementForm, kAtomicDim>, kAtomicDim>& literal_element_forms() {
  static const auto forms = make_literal_forms();
  return forms;
}

std::string describe_form(const ElementForm& form, const ElementVariant& variant) {
  std::ostringstream s;
  bool first = true;
  if (!form.scalar_name.empty()) {
    s << form.scalar_name;
    first = false;
  }
  for (std::size_t t = 0; t < form.terms.size(); ++t) {
    const auto& term = form.terms[t];
    const TermVariant v = t < variant.size() ? variant[t] : TermVariant{};
    s << (first ? (v.flip_sign ? "-" : "") : (v.flip_sign ? " - " : " + "));
    first = false;
    const char* l = ladder_symbol(swapped(term.left, v.swap_left));
    const char* r = ladder_symbol(swapped(term.right, v.swap_right));
    if (*l) s << l << " ";
    s << term.kernel_name << "(n̂";
    if (v.shift > 0) s << "+" << v.shift;
    if (v.shift < 0) s << v.shift;
    s << ")";
    if (*r) s << " " << r;
  }
  return s.str();
}

CMatrix realize_element(const ElementForm& form, const AnalyticCoefficients& coeffs, const HilbertSpec& spec,
                        const ElementVariant& variant) {
  const auto ladder = ladder_matrices(spec);
  const Eigen::Index n = spec.field_dim();
  CMatrix out = form.scalar(coeffs) * CMatrix::Identity(n, n);
  for (std::size_t t = 0; t < form.terms.size(); ++t)
    out += realize_term(form.terms[t], t < variant.size() ? variant[t] : TermVariant{}, coeffs, spec, ladder);
  return out;
}

ElementOperators analytic_propagator_elements(const ModelParams& params, const HilbertSpec& spec, Real tau) {
  return analytic_propagator_elements(params, spec, tau, VariantTable{});
}

ElementOperators analytic_propagator_elements(const ModelParams& params, const HilbertSpec& spec, Real tau,
                                              const VariantTable& variants) {
  const AnalyticCoefficients coeffs{params.lambda_s(), tau};
  const auto& forms = literal_element_forms();
  ElementOperators out;
  for (int i = 0; i < kAtomicDim; ++i)
    for (int j = 0; j < kAtomicDim; ++j) out[i][j] = realize_element(forms[i][j], coeffs, spec, variants[i][j]);
  return out;
}

bool ValidationReport::all_explained() const {
  for (const auto& e : elements)
    if (!e.explained()) return false;
  return true;
}

VariantTable ValidationReport::variants() const {
  VariantTable table;
  for (const auto& e : elements)
    if (!e.verified && e.repaired) table[e.row][e.col] = e.variant;
  return table;
}

ValidationReport validate_analytic_elements(Real lambda_s, const HilbertSpec& spec, Real tau, Real tolerance) {
  const ModelParams params = ModelParams::scaled(lambda_s, 0.0, 0.0);
  const HamiltonianMatrix h = build_hamiltonian(params, spec);
  const ElementOperators oracle = element_operators(dense_propagator_oracle(h, tau), spec);

  std::vector<bool> exact(static_cast<std::size_t>(spec.dim()), false);
  for (const auto& sector : sector_decompose(spec))
    if (!sector.clipped)
      for (auto i : sector.members) exact[static_cast<std::size_t>(i)] = true;

  const AnalyticCoefficients coeffs{lambda_s, tau};
  const auto ladder = ladder_matrices(spec);
  const auto& forms = literal_element_forms();
  const Eigen::Index n = spec.field_dim();

  ValidationReport report;
  report.lambda_s = lambda_s;
  report.tau = tau;
  report.n_max = spec.n_max();
  report.tolerance = tolerance;

  for (int i = 0; i < kAtomicDim; ++i) {
    for (int j = 0; j < kAtomicDim; ++j) {
      const ElementForm& form = forms[i][j];
      auto& ev = report.elements[static_cast<std::size_t>(i * kAtomicDim + j)];
      ev.row = i;
      ev.col = j;
      ev.literal_form = describe_form(form);

      const CMatrix scalar_part = form.scalar(coeffs) * CMatrix::Identity(n, n);
      // Candidate matrices per term, candidates[t][0] is the literal reading.
      std::vector<std::vector<TermVariant>> cands;
      std::vector<std::vector<CMatrix>> mats;
      for (const auto& t : form.terms) {
        cands.push_back(candidate_variants(t));
        auto& row = mats.emplace_back();
        for (const auto& v : cands.back()) row.push_back(realize_term(t, v, coeffs, spec, ladder));
      }

      CMatrix literal = scalar_part;
      for (const auto& row : mats) literal += row.front();
      ev.literal_deviation = masked_deviation(literal, oracle[i][j], i, j, exact, spec);
      ev.verified = ev.literal_deviation <= tolerance;
      if (ev.verified) continue;

      // Exhaustive search over the product of per-term candidates.
      std::vector<std::size_t> pick(form.terms.size(), 0);
      int best_edits = std::numeric_limits<int>::max();
      Real best_dev = std::numeric_limits<Real>::infinity();
      for (;;) {
        CMatrix trial = scalar_part;
        ElementVariant variant;
        int edits = 0;
        for (std::size_t t = 0; t < pick.size(); ++t) {
          trial += mats[t][pick[t]];
          variant.push_back(cands[t][pick[t]]);
          edits += variant.back().edits();
        }
        const Real dev = masked_deviation(trial, oracle[i][j], i, j, exact, spec);
        if (dev <= tolerance && (edits < best_edits || (edits == best_edits && dev < best_dev))) {
          best_edits = edits;
          best_dev = dev;
          ev.variant = variant;
        }
        std::size_t t = 0;
        while (t < pick.size() && ++pick[t] == cands[t].size()) pick[t++] = 0;
        if (t == pick.size()) break;
      }
      if (best_edits != std::numeric_limits<int>::max()) {
        ev.repaired = true;
        ev.repaired_deviation = best_dev;
        ev.repaired_form = describe_form(form, ev.variant);
      }
    }
  }
  return report;
}

void write_validation_report(std::ostream& out, std::span<const ValidationReport> reports) {
  out << "Analytic propagator elements vs dense exponential oracle\n";
  out << "(deviations: max |analytic - oracle| over unclipped sectors)\n";
  for (const auto& r : reports) {
    out << "\nlambda_s = " << r.lambda_s << ", tau = " << r.tau << ", n_max = " << r.n_max
        << ", tolerance = " << format_deviation(r.tolerance) << "\n";
    for (const auto& e : r.elements) {
      out << "  U" << e.row + 1 << e.col + 1 << "  ";
      if (e.verified) {
        out << "VERIFIED   dev=" << format_deviation(e.literal_deviation) << "  " << e.literal_form << "\n";
      } else if (e.repaired) {
        out << "REPAIRED   literal_dev=" << format_deviation(e.literal_deviation)
            << "  repaired_dev=" << format_deviation(e.repaired_deviation) << "\n"
            << "       literal:  " << e.literal_form << "\n"
            << "       matching: " << e.repaired_form << "\n";
      } else {
        out << "UNEXPLAINED literal_dev=" << format_deviation(e.literal_deviation) << "  " << e.literal_form << "\n";
      }
    }
    out << "  summary: " << (r.all_explained() ? "all elements explained" : "UNEXPLAINED elements present") << "\n";
  }
}

}  // namespace ajcm
