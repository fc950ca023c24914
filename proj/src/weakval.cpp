#include "lglab/weakval.hpp"

#include <cmath>

namespace lglab {

namespace {

WeakValueResult classify(Complex value, double prob) {
  WeakValueResult r;
  r.value = value;
  r.postselect_prob = prob;
  // Range from the dichotomic labels, not from a spectral decomposition.
  r.anomalous_real = value.real() > DichotomicObservable::kPlus ||
                     value.real() < DichotomicObservable::kMinus;
  r.nonzero_imag = std::abs(value.imag()) > kStructuralTol;
  return r;
}

Complex closed_form_w3(const MZConfig& cfg) {
  if (cfg.phi == 0.0) return (cfg.alpha - cfg.beta) / (cfg.alpha + cfg.beta);
  const Complex b = cfg.beta * std::polar(1.0, -cfg.phi);
  return (cfg.alpha - b) / (cfg.alpha + b);
}

Complex closed_form_w4(const MZConfig& cfg) {
  if (cfg.phi == 0.0) return (cfg.alpha + cfg.beta) / (cfg.alpha - cfg.beta);
  const Complex b = cfg.beta * std::polar(1.0, -cfg.phi);
  return (cfg.alpha + b) / (cfg.alpha - b);
}

}  // namespace

WeakValueResult weak_value(const Operator& a, const StateVector& pre,
                           const StateVector& post) {
  require_same_dim(a.dim(), pre.dim(), "weak_value");
  require_same_dim(pre.dim(), post.dim(), "weak_value");
  if (!a.is_hermitian()) throw NotHermitian("weak_value: operator is not Hermitian");
  const Complex overlap = inner_product(pre, post);
  const double prob = std::norm(overlap);
  if (prob <= kZeroOverlapTol) {
    throw OrthogonalPostSelection(
        "weak_value: pre- and post-selected states are orthogonal "
        "(zero post-selection probability)");
  }
  return classify(matrix_element(pre, a, post) / overlap, prob);
}

ExpectationDecomposition expectation_decomposition(const Operator& a,
                                                   const StateVector& pre,
                                                   const DichotomicObservable& basis) {
  require_same_dim(a.dim(), pre.dim(), "expectation_decomposition");
  require_same_dim(basis.dim(), pre.dim(), "expectation_decomposition");
  if (!a.is_hermitian()) {
    throw NotHermitian("expectation_decomposition: operator is not Hermitian");
  }
  // <pre|A|f><f|pre> = p(f) (A)_w^f, written without the division.
  const Complex term_f = matrix_element(pre, a * basis.plus_projector(), pre);
  const Complex term_fperp = matrix_element(pre, a * basis.minus_projector(), pre);
  const Complex total = term_f + term_fperp;
  if (std::abs(total.imag()) >= kStructuralTol) {
    throw InvariantError("expectation_decomposition: total has imaginary part");
  }
  return {term_f, term_fperp, total.real()};
}

WeakValueResult mz_weak_value_3(const MZConfig& cfg) {
  return weak_value(path_observable().matrix(), input_state(cfg),
                    postselect_psi3(cfg.phi));
}

WeakValueResult mz_weak_value_4(const MZConfig& cfg) {
  return weak_value(path_observable().matrix(), input_state(cfg),
                    postselect_psi4(cfg.phi));
}

MZWeakValues mz_weak_values(const MZConfig& cfg) {
  return {mz_weak_value_3(cfg), mz_weak_value_4(cfg)};
}

Complex mz_weak_value_3_closed_form(const MZConfig& cfg) {
  cfg.validate();
  return closed_form_w3(cfg);
}

Complex mz_weak_value_4_closed_form(const MZConfig& cfg) {
  cfg.validate();
  return closed_form_w4(cfg);
}

}  // namespace lglab
