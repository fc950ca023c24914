// weakval.hpp
// Weak values with pre- and post-selection, and the decomposition of an
// expectation value into post-selected sub-ensembles.

#pragma once

#include <stdexcept>

#include "lglab/interferometer.hpp"
#include "lglab/qcore.hpp"

namespace lglab {

/// |<pre|post>|^2 at or below this is treated as exact orthogonality.
inline constexpr double kZeroOverlapTol = 1e-15;

struct OrthogonalPostSelection : std::domain_error {
  using std::domain_error::domain_error;
};

struct WeakValueResult {
  Complex value;
  double postselect_prob = 0.0;
  /// Re(value) outside the observable's eigenvalue range [-1, +1].
  bool anomalous_real = false;
  /// |Im(value)| > 1e-12; reported separately, never counted as anomalous.
  bool nonzero_imag = false;
};

/// (A)_w = <pre|A|post> / <pre|post>. Throws OrthogonalPostSelection when
/// |<pre|post>|^2 <= 1e-15. Near-orthogonal inputs give large finite values.
WeakValueResult weak_value(const Operator& a, const StateVector& pre,
                           const StateVector& post);

struct ExpectationDecomposition {
  Complex term_f;      // p(f) (A)_w^f
  Complex term_fperp;  // p(f') (A)_w^{f'}
  double total;
};

/// Splits <pre|A|pre> over the two outcomes of `basis` (f = +1 eigenvector,
/// f' = -1 eigenvector). Each term is evaluated as <pre|A P|pre>, which is
/// p(f) (A)_w^f whenever the weak value exists and stays finite otherwise.
ExpectationDecomposition expectation_decomposition(const Operator& a,
                                                   const StateVector& pre,
                                                   const DichotomicObservable& basis);

struct MZWeakValues {
  WeakValueResult w3;  // post-selection on psi3
  WeakValueResult w4;  // post-selection on psi4
};

/// Weak values of the path observable M2 for the two output ports, with the
/// un-phased preparation alpha|psi1> + beta|psi2>. At phi = 0 these are
/// (a-b)/(a+b) and (a+b)/(a-b). Throws OrthogonalPostSelection if either
/// port is dark; use mz_weak_value_3 / mz_weak_value_4 for one port.
MZWeakValues mz_weak_values(const MZConfig& cfg);
WeakValueResult mz_weak_value_3(const MZConfig& cfg);
WeakValueResult mz_weak_value_4(const MZConfig& cfg);

/// Closed forms at general phi:
///   w3 = (a - b e^{-i phi}) / (a + b e^{-i phi}),  w4 = 1 / w3.
Complex mz_weak_value_3_closed_form(const MZConfig& cfg);
Complex mz_weak_value_4_closed_form(const MZConfig& cfg);

}  // namespace lglab
