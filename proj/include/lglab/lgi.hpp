// lgi.hpp
// Leggett-Garg expressions: the three-time K3, the four two-time K31..K34
// (direct-moment and weak-value routes), the interferometer closed forms and
// the beta sweep.
//
// Two-time labelling by outcome signs (m2, m3):
//   K31: (-, +)   K32: (+, +)   K33: (-, -)   K34: (+, -)
//   K = 1 + m2 <M2> + m3 <M3> + m2 m3 <M2 M3>  >= 0 for a macrorealist.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lglab/interferometer.hpp"
#include "lglab/qcore.hpp"

namespace lglab {

/// Outcome signs (m2, m3) for K31..K34 in listing order.
inline constexpr std::array<std::array<int, 2>, 4> kTwoTimeSigns{{
    {-1, +1}, {+1, +1}, {-1, -1}, {+1, -1}}};
inline constexpr std::array<int, 4> kTwoTimeLabels{31, 32, 33, 34};

struct TwoTimeLGReport {
  std::array<double, 4> k{};  // K31, K32, K33, K34
  std::optional<int> violated_index;
  double margin = 0.0;  // |most negative K|, or 0

  double k31() const { return k[0]; }
  double k32() const { return k[1]; }
  double k33() const { return k[2]; }
  double k34() const { return k[3]; }
  double min_k() const;
  int negative_count(double tol = kStructuralTol) const;
};

/// Fills violated_index (set iff min K < -1e-12) and margin.
TwoTimeLGReport make_two_time_report(const std::array<double, 4>& k);

/// Four K values from the moments <M2>, <M3>, <M2 M3>.
std::array<double, 4> two_time_from_moments(double e2, double e3, double e23);

/// p(m_first, m_second) = || P_second P_first |state> ||^2 (Luders rule).
double sequential_joint_probability(const StateVector& state,
                                    const DichotomicObservable& first, int m_first,
                                    const DichotomicObservable& second, int m_second);

/// Sum over outcomes of m_i m_j p(m_i, m_j) with the two-step projective rule.
double sequential_correlation(const StateVector& state, const DichotomicObservable& first,
                              const DichotomicObservable& second);

struct ThreeTimeSpec {
  StateVector state;
  DichotomicObservable m1;
  DichotomicObservable m2;
  DichotomicObservable m3;
  std::array<int, 3> signs{+1, +1, +1};
};

/// K3 = m1 m2 <M1M2> + m2 m3 <M2M3> - m1 m3 <M1M3> - 1 (macrorealist bound K3 <= 0).
double k3(const ThreeTimeSpec& spec);

/// Qubit precessing about y by angle theta between measurements; the
/// Heisenberg observables are M_k = cos((k-1) theta) Z + sin((k-1) theta) X and
/// the preparation is the +1 eigenstate of Z.
ThreeTimeSpec precession_spec(double theta);

/// K31..K34 for the preparation |+m1> = pre_state, computed from the moments
/// and again from 2 p(+-m3) [1 -+ (M2)_w]; throws InvariantError if the two
/// routes differ by more than 1e-12. Zero-probability post-selections use the
/// product form <pre|M2 P|pre>.
TwoTimeLGReport two_time_lg(const StateVector& pre_state, const DichotomicObservable& m2,
                            const DichotomicObservable& m3);

/// The weak-value route alone.
std::array<double, 4> two_time_lg_weak_form(const StateVector& pre_state,
                                            const DichotomicObservable& m2,
                                            const DichotomicObservable& m3);

/// Interferometer closed forms (|+m3> = psi4, |-m3> = psi3, |+m1> = psi_i):
///   K31 = 2b(b - a c), K32 = 2a(a - b c), K33 = 2b(b + a c), K34 = 2a(a + b c)
/// with c = cos(phi); at phi = 0 these are 2b(b-a), 2a(a-b), 2b(a+b), 2a(a+b).
TwoTimeLGReport mz_lg_closed_form(const MZConfig& cfg);

/// Same configuration evaluated through two_time_lg on explicit matrices.
TwoTimeLGReport mz_lg_matrix(const MZConfig& cfg);

/// beta in {0, +-1/sqrt2, +-1} within 1e-12: every K >= 0 with one saturated.
bool is_exceptional_beta(double beta, double tol = kStructuralTol);

struct SweepRow {
  double beta;
  double alpha;
  std::array<double, 4> k;
  std::optional<double> w3;  // empty when the port is dark
  std::optional<double> w4;
  double p3;
  double p4;
  std::optional<int> violated_index;
};

/// Closed-form row at phi = 0 with alpha = +sqrt(1 - beta^2).
SweepRow sweep_row(double beta);
/// One row per grid point, in grid order. Rows at exceptional beta report no
/// violation.
std::vector<SweepRow> sweep_beta(std::span<const double> grid);

/// n >= 2 points from lo to hi inclusive, lo + (hi - lo) * i / (n - 1).
std::vector<double> uniform_grid(std::size_t n, double lo, double hi);

}  // namespace lglab
