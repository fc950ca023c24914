#include "lglab/lgi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lglab/weakval.hpp"

namespace lglab {

double TwoTimeLGReport::min_k() const { return *std::min_element(k.begin(), k.end()); }

int TwoTimeLGReport::negative_count(double tol) const {
  return static_cast<int>(std::count_if(k.begin(), k.end(), [tol](double v) { return v < -tol; }));
}

TwoTimeLGReport make_two_time_report(const std::array<double, 4>& k) {
  TwoTimeLGReport r;
  r.k = k;
  const auto it = std::min_element(k.begin(), k.end());
  if (*it < -kStructuralTol) {
    r.violated_index = kTwoTimeLabels[static_cast<std::size_t>(it - k.begin())];
    r.margin = -*it;
  }
  return r;
}

std::array<double, 4> two_time_from_moments(double e2, double e3, double e23) {
  std::array<double, 4> k{};
  for (std::size_t i = 0; i < 4; ++i) {
    const int m2 = kTwoTimeSigns[i][0];
    const int m3 = kTwoTimeSigns[i][1];
    k[i] = 1.0 + m2 * e2 + m3 * e3 + m2 * m3 * e23;
  }
  return k;
}

double sequential_joint_probability(const StateVector& state,
                                    const DichotomicObservable& first, int m_first,
                                    const DichotomicObservable& second, int m_second) {
  require_same_dim(state.dim(), first.dim(), "sequential_joint_probability");
  require_same_dim(state.dim(), second.dim(), "sequential_joint_probability");
  const auto after_first = multiply(first.projector(m_first), state.amps());
  return norm_squared(multiply(second.projector(m_second), after_first));
}

double sequential_correlation(const StateVector& state, const DichotomicObservable& first,
                              const DichotomicObservable& second) {
  double corr = 0.0;
  for (int mi : {+1, -1})
    for (int mj : {+1, -1})
      corr += mi * mj * sequential_joint_probability(state, first, mi, second, mj);
  return std::clamp(corr, -1.0, 1.0);
}

double k3(const ThreeTimeSpec& spec) {
  const auto [s1, s2, s3] = spec.signs;
  for (int s : spec.signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("k3: signs must be +1 or -1");
  }
  const double c12 = sequential_correlation(spec.state, spec.m1, spec.m2);
  const double c23 = sequential_correlation(spec.state, spec.m2, spec.m3);
  const double c13 = sequential_correlation(spec.state, spec.m1, spec.m3);
  return s1 * s2 * c12 + s2 * s3 * c23 - s1 * s3 * c13 - 1.0;
}

ThreeTimeSpec precession_spec(double theta) {
  // +1 eigenvector of cos(a) Z + sin(a) X is (cos(a/2), sin(a/2)).
  auto axis = [](double angle) {
    return DichotomicObservable::from_plus_state(
        StateVector({std::cos(angle / 2.0), std::sin(angle / 2.0)}));
  };
  return ThreeTimeSpec{StateVector::basis(2, 0), axis(0.0), axis(theta), axis(2.0 * theta),
                       {+1, +1, +1}};
}

std::array<double, 4> two_time_lg_weak_form(const StateVector& pre_state,
                                            const DichotomicObservable& m2,
                                            const DichotomicObservable& m3) {
  require_same_dim(pre_state.dim(), m2.dim(), "two_time_lg");
  require_same_dim(pre_state.dim(), m3.dim(), "two_time_lg");
  const Operator m2_matrix = m2.matrix();

  // p(m3) * Re (M2)_w for each outcome of M3. For a rank-1 post-selection the
  // weak value route applies; the product form covers dark ports and
  // degenerate projectors.
  auto weighted = [&](int m3_outcome) -> std::pair<double, double> {
    const Operator& p = m3.projector(m3_outcome);
    const double prob = expectation(p, pre_state);
    const bool rank_one = std::abs(p.trace().real() - 1.0) < kStructuralTol;
    if (rank_one && prob > kZeroOverlapTol) {
      // Recover the post-selected state as the normalized column of P with
      // the largest weight.
      std::size_t best = 0;
      for (std::size_t c = 1; c < p.dim(); ++c)
        if (std::abs(p(c, c)) > std::abs(p(best, best))) best = c;
      std::vector<Complex> col(p.dim());
      for (std::size_t r = 0; r < p.dim(); ++r) col[r] = p(r, best);
      const StateVector post(std::move(col), NormPolicy::renormalize);
      const auto w = weak_value(m2_matrix, pre_state, post);
      return {w.postselect_prob, w.postselect_prob * w.value.real()};
    }
    return {prob, matrix_element(pre_state, m2_matrix * p, pre_state).real()};
  };

  const auto [p_plus, pw_plus] = weighted(+1);
  const auto [p_minus, pw_minus] = weighted(-1);
  // K = 2 p(m3) [1 + m2 Re (M2)_w^{m3}]
  return {
      2.0 * (p_plus - pw_plus),    // K31: 2 p(+m3) [1 - w+]
      2.0 * (p_plus + pw_plus),    // K32: 2 p(+m3) [1 + w+]
      2.0 * (p_minus - pw_minus),  // K33: 2 p(-m3) [1 - w-]
      2.0 * (p_minus + pw_minus),  // K34: 2 p(-m3) [1 + w-]
  };
}

TwoTimeLGReport two_time_lg(const StateVector& pre_state, const DichotomicObservable& m2,
                            const DichotomicObservable& m3) {
  require_same_dim(pre_state.dim(), m2.dim(), "two_time_lg");
  require_same_dim(pre_state.dim(), m3.dim(), "two_time_lg");
  const double e2 = expectation(m2.matrix(), pre_state);
  const double e3 = expectation(m3.matrix(), pre_state);
  const double e23 = sequential_correlation(pre_state, m2, m3);
  const auto direct = two_time_from_moments(e2, e3, e23);
  const auto weak = two_time_lg_weak_form(pre_state, m2, m3);
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(direct[i] - weak[i]) > kStructuralTol) {
      throw InvariantError("two_time_lg: K" + std::to_string(kTwoTimeLabels[i]) +
                           " differs between moment and weak-value routes");
    }
  }
  return make_two_time_report(direct);
}

TwoTimeLGReport mz_lg_closed_form(const MZConfig& cfg) {
  cfg.validate();
  const double a = cfg.alpha;
  const double b = cfg.beta;
  const double c = cfg.phi == 0.0 ? 1.0 : std::cos(cfg.phi);
  return make_two_time_report({2.0 * b * (b - a * c), 2.0 * a * (a - b * c),
                               2.0 * b * (b + a * c), 2.0 * a * (a + b * c)});
}

TwoTimeLGReport mz_lg_matrix(const MZConfig& cfg) {
  return two_time_lg(input_state(cfg), path_observable(), output_observable(cfg.phi));
}

bool is_exceptional_beta(double beta, double tol) {
  const double b = std::abs(beta);
  return b < tol || std::abs(b - 1.0 / std::numbers::sqrt2) < tol || std::abs(b - 1.0) < tol;
}

SweepRow sweep_row(double beta) {
  const MZConfig cfg = MZConfig::from_beta(beta);
  const auto report = mz_lg_closed_form(cfg);
  const auto probs = detection_probabilities(cfg);
  SweepRow row{beta, cfg.alpha, report.k, std::nullopt, std::nullopt,
               probs.p3, probs.p4, report.violated_index};
  if (probs.p3 > kZeroOverlapTol) row.w3 = mz_weak_value_3_closed_form(cfg).real();
  if (probs.p4 > kZeroOverlapTol) row.w4 = mz_weak_value_4_closed_form(cfg).real();
  if (is_exceptional_beta(beta)) row.violated_index.reset();
  return row;
}

std::vector<SweepRow> sweep_beta(std::span<const double> grid) {
  for (double b : grid) {
    if (!(b >= -1.0 && b <= 1.0)) throw std::invalid_argument("sweep_beta: grid values must lie in [-1, 1]");
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double b : grid) rows.push_back(sweep_row(b));
  return rows;
}

std::vector<double> uniform_grid(std::size_t n, double lo, double hi) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  if (!(lo < hi)) throw std::invalid_argument("uniform_grid: min must be less than max");
  std::vector<double> g(n);
  const double span = hi - lo;
  for (std::size_t i = 0; i < n; ++i)
    g[i] = lo + span * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = hi;
  return g;
}

}  // namespace lglab
