// quasiprob.hpp
// Symmetrized two-time quasiprobabilities
//   q(m_i, m_j) = 1/2 Tr[(P_{m_j} P_{m_i} + P_{m_i} P_{m_j}) rho],
// their marginals (no-signaling in time), the moment expansion, and the
// link to the four two-time LG expressions.

#pragma once

#include <array>

#include "lglab/interferometer.hpp"
#include "lglab/lgi.hpp"
#include "lglab/qcore.hpp"

namespace lglab {

struct QuasiprobTable {
  /// Entries ordered (+,+), (+,-), (-,+), (-,-) in (m_i, m_j).
  std::array<double, 4> q{};
  double negativity = 0.0;     // sum of |negative entries|
  double nsit_residual = 0.0;  // max marginal deviation, both directions

  static std::size_t index(int m_i, int m_j);
  double at(int m_i, int m_j) const { return q[index(m_i, m_j)]; }
  double sum() const { return q[0] + q[1] + q[2] + q[3]; }
  double min_entry() const;
  bool has_negative(double tol = kStructuralTol) const { return min_entry() < -tol; }
  /// Sum m_i m_j q(m_i, m_j).
  double correlation() const { return q[0] - q[1] - q[2] + q[3]; }
};

/// General rho (Hermitian, unit trace).
QuasiprobTable quasi(const Operator& rho, const DichotomicObservable& mi,
                     const DichotomicObservable& mj);
/// Pure state via rho = |s><s|.
QuasiprobTable quasi(const StateVector& state, const DichotomicObservable& mi,
                     const DichotomicObservable& mj);

struct NsitResiduals {
  double residual_i;  // max_m |sum_{m_j} q(m, m_j) - Tr[P_i(m) rho]|
  double residual_j;  // max_m |sum_{m_i} q(m_i, m) - Tr[P_j(m) rho]|
};

NsitResiduals nsit_check(const Operator& rho, const DichotomicObservable& mi,
                         const DichotomicObservable& mj);
NsitResiduals nsit_check(const StateVector& state, const DichotomicObservable& mi,
                         const DichotomicObservable& mj);

struct CorrelationPair {
  double corr_quasi;
  double corr_seq;
};

/// Quasiprobability correlation versus the sequential (Luders) correlation
/// with M_i measured first.
CorrelationPair correlation_equivalence(const StateVector& state,
                                        const DichotomicObservable& mi,
                                        const DichotomicObservable& mj);

/// q = 1/4 (1 + m_i e_i + m_j e_j + m_i m_j e_ij). Inputs must lie in
/// [-1, 1] (within 1e-9).
QuasiprobTable mr_reading(double e_i, double e_j, double e_ij);

/// K = 4 q(m2, m3) with (m_i, m_j) = (m2, m3) and the sign labelling of lgi.hpp.
TwoTimeLGReport lg_from_quasi(const QuasiprobTable& table);

/// The interferometer's (M2, M3) quasiprobability table.
QuasiprobTable mz_quasi(const MZConfig& cfg);

/// |p_seq(psi3) - p(psi3)|, where p_seq includes an intervening projective
/// path measurement. Equals |alpha beta| at phi = 0.
double signaling_gap_projective(const MZConfig& cfg);

struct ThreeTimeSuite {
  QuasiprobTable q12;
  QuasiprobTable q13;
  QuasiprobTable q23;
  /// q12, q13, q23 entries in that order.
  std::array<double, 12> entries{};
  /// All twelve entries >= -1e-12.
  bool weak_macrorealism = false;
};

ThreeTimeSuite three_time_suite(const StateVector& state, const DichotomicObservable& m1,
                                const DichotomicObservable& m2,
                                const DichotomicObservable& m3);

}  // namespace lglab
