// mrcheck.hpp
// Macrorealist feasibility: does a nonnegative joint distribution over
// deterministic outcome assignments reproduce the given moments?
//
// Two independent routes for the two-time case:
//   macrorealist_feasible  - moment expansion q = 1/4(1 + m2 e2 + m3 e3 + m2 m3 e23)
//   feasibility_oracle     - linear system over the four deterministic vertices
// and a generic nonnegative-solution search that also covers the three-time
// pairwise-moment problem (eight vertices, seven constraints).

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lglab/interferometer.hpp"
#include "lglab/quasiprob.hpp"

namespace lglab {

/// Moments <M2>, <M3>, <M2 M3>, each validated to lie in [-1, 1].
class CorrelationTriple {
 public:
  CorrelationTriple(double e2, double e3, double e23);
  double e2() const { return e2_; }
  double e3() const { return e3_; }
  double e23() const { return e23_; }

 private:
  double e2_;
  double e3_;
  double e23_;
};

struct FeasibilityVerdict {
  bool feasible = false;
  /// The unique moment-matching joint; present only when feasible.
  std::optional<QuasiprobTable> witness;
  /// Minimum entry of the candidate joint.
  double margin = 0.0;
};

/// Entries of the candidate joint at or above -1e-12 count as nonnegative.
inline constexpr double kFeasibilityTol = 1e-12;

FeasibilityVerdict macrorealist_feasible(const CorrelationTriple& t);
FeasibilityVerdict feasibility_oracle(const CorrelationTriple& t);

/// Quantum triple (a^2 - b^2, p4 - p3, <M2 M3>_seq) run through
/// macrorealist_feasible.
FeasibilityVerdict mz_verdict(const MZConfig& cfg);

/// Dense row-major constraint matrix.
struct LinearSystem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // rows x cols
  std::vector<double> b;  // rows

  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

/// Square solve by Gaussian elimination with partial pivoting; empty when the
/// matrix is numerically singular.
std::optional<std::vector<double>> solve_square(const LinearSystem& sys);

struct NonnegativeSolution {
  bool feasible = false;
  std::vector<double> x;  // a feasible point when feasible
};

/// Phase-one simplex (Bland's rule) for A x = b, x >= 0.
NonnegativeSolution find_nonnegative_solution(const LinearSystem& sys,
                                              double tol = kFeasibilityTol);

/// Deterministic assignments (m_1, ..., m_n) in {+1,-1}^n, +1 first,
/// lexicographic in the outcome index.
std::vector<std::vector<int>> deterministic_vertices(std::size_t n_times);

/// Normalization plus first and pairwise second moments over the vertices.
/// `first` has n entries, `second` holds pairs (i<j) in lexicographic order.
LinearSystem moment_system(std::size_t n_times, const std::vector<double>& first,
                           const std::vector<double>& second);

struct ThreeTimeMoments {
  std::array<double, 3> first;   // <M1>, <M2>, <M3>
  std::array<double, 3> second;  // <M1M2>, <M1M3>, <M2M3>
};

/// Existence of a nonnegative joint p(m1, m2, m3) matching all seven moments.
NonnegativeSolution three_time_feasible(const ThreeTimeMoments& m);

}  // namespace lglab
