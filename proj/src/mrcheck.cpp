#include "lglab/mrcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lglab/lgi.hpp"

namespace lglab {

CorrelationTriple::CorrelationTriple(double e2, double e3, double e23)
    : e2_(e2), e3_(e3), e23_(e23) {
  for (double e : {e2, e3, e23}) {
    if (!std::isfinite(e) || e < -1.0 || e > 1.0) {
      throw std::invalid_argument("CorrelationTriple: each moment must lie in [-1, 1]");
    }
  }
}

FeasibilityVerdict macrorealist_feasible(const CorrelationTriple& t) {
  const QuasiprobTable joint = mr_reading(t.e2(), t.e3(), t.e23());
  FeasibilityVerdict v;
  v.margin = joint.min_entry();
  v.feasible = v.margin >= -kFeasibilityTol;
  if (v.feasible) v.witness = joint;
  return v;
}

FeasibilityVerdict feasibility_oracle(const CorrelationTriple& t) {
  const LinearSystem sys = moment_system(2, {t.e2(), t.e3()}, {t.e23()});
  const auto solution = solve_square(sys);
  if (!solution) throw InvariantError("feasibility_oracle: vertex system is singular");
  const auto vertices = deterministic_vertices(2);
  QuasiprobTable joint;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    joint.q[QuasiprobTable::index(vertices[v][0], vertices[v][1])] = (*solution)[v];
  for (double x : joint.q)
    if (x < 0.0) joint.negativity -= x;

  FeasibilityVerdict verdict;
  verdict.margin = joint.min_entry();
  verdict.feasible = verdict.margin >= -kFeasibilityTol;
  if (verdict.feasible) verdict.witness = joint;
  return verdict;
}

FeasibilityVerdict mz_verdict(const MZConfig& cfg) {
  const StateVector pre = input_state(cfg);
  const DichotomicObservable m2 = path_observable();
  const DichotomicObservable m3 = output_observable(cfg.phi);
  const auto probs = detection_probabilities(cfg);
  const double e2 = cfg.alpha * cfg.alpha - cfg.beta * cfg.beta;
  const double e3 = probs.p4 - probs.p3;
  const double e23 = sequential_correlation(pre, m2, m3);
  auto clamp = [](double e) { return std::clamp(e, -1.0, 1.0); };
  return macrorealist_feasible(CorrelationTriple(clamp(e2), clamp(e3), clamp(e23)));
}

std::optional<std::vector<double>> solve_square(const LinearSystem& sys) {
  if (sys.rows != sys.cols) throw std::invalid_argument("solve_square: system is not square");
  const std::size_t n = sys.rows;
  std::vector<double> m(sys.a);
  std::vector<double> rhs(sys.b);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
    if (std::abs(m[pivot * n + col]) < 1e-14) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m[col * n + c], m[pivot * n + c]);
      std::swap(rhs[col], rhs[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r * n + col] / m[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r * n + c] -= f * m[col * n + c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = rhs[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i * n + c] * x[c];
    x[i] = acc / m[i * n + i];
  }
  return x;
}

NonnegativeSolution find_nonnegative_solution(const LinearSystem& sys, double tol) {
  // Phase one: minimize the sum of artificials in [A | I] y = b, b >= 0.
  const std::size_t m = sys.rows;
  const std::size_t n = sys.cols;
  const std::size_t width = n + m + 1;  // variables + rhs
  std::vector<double> tab((m + 1) * width, 0.0);
  auto cell = [&](std::size_t r, std::size_t c) -> double& { return tab[r * width + c]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    const double sign = sys.b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) cell(r, c) = sign * sys.at(r, c);
    cell(r, n + r) = 1.0;
    cell(r, width - 1) = sign * sys.b[r];
    basis[r] = n + r;
  }
  // Objective row holds reduced costs of -sum(artificials).
  for (std::size_t c = 0; c < width; ++c) {
    if (c >= n && c < n + m) continue;
    double acc = 0.0;
    for (std::size_t r = 0; r < m; ++r) acc += cell(r, c);
    cell(m, c) = acc;
  }

  constexpr double kPivotTol = 1e-12;
  const std::size_t max_iter = 50 * (n + m) + 100;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::size_t enter = width;
    for (std::size_t c = 0; c + 1 < width; ++c) {
      if (cell(m, c) > kPivotTol) {
        enter = c;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m; ++r) {
      if (cell(r, enter) > kPivotTol) {
        const double ratio = cell(r, width - 1) / cell(r, enter);
        if (ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol && leave < m && basis[r] < basis[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase one
    const double piv = cell(leave, enter);
    for (std::size_t c = 0; c < width; ++c) cell(leave, c) /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = cell(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) cell(r, c) -= f * cell(leave, c);
    }
    basis[leave] = enter;
  }

  NonnegativeSolution out;
  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) out.x[basis[r]] = cell(r, width - 1);
  // Verify the candidate against the original constraints.
  double residual = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c) acc += sys.at(r, c) * out.x[c];
    residual = std::max(residual, std::abs(acc - sys.b[r]));
  }
  const double min_x = n == 0 ? 0.0 : *std::min_element(out.x.begin(), out.x.end());
  out.feasible = residual <= 1e-9 && min_x >= -tol;
  return out;
}

std::vector<std::vector<int>> deterministic_vertices(std::size_t n_times) {
  std::vector<std::vector<int>> out;
  const std::size_t count = std::size_t{1} << n_times;
  out.reserve(count);
  for (std::size_t bits = 0; bits < count; ++bits) {
    std::vector<int> v(n_times);
    for (std::size_t t = 0; t < n_times; ++t)
      v[t] = (bits >> (n_times - 1 - t)) & 1U ? -1 : +1;
    out.push_back(std::move(v));
  }
  return out;
}

LinearSystem moment_system(std::size_t n_times, const std::vector<double>& first,
                           const std::vector<double>& second) {
  const std::size_t n_pairs = n_times * (n_times - 1) / 2;
  if (first.size() != n_times || second.size() != n_pairs) {
    throw std::invalid_argument("moment_system: wrong number of moments");
  }
  const auto vertices = deterministic_vertices(n_times);
  LinearSystem sys;
  sys.rows = 1 + n_times + n_pairs;
  sys.cols = vertices.size();
  sys.a.assign(sys.rows * sys.cols, 0.0);
  sys.b.assign(sys.rows, 0.0);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    std::size_t row = 0;
    sys.a[row++ * sys.cols + v] = 1.0;
    for (std::size_t t = 0; t < n_times; ++t) sys.a[row++ * sys.cols + v] = vertices[v][t];
    for (std::size_t i = 0; i < n_times; ++i)
      for (std::size_t j = i + 1; j < n_times; ++j)
        sys.a[row++ * sys.cols + v] = vertices[v][i] * vertices[v][j];
  }
  std::size_t row = 0;
  sys.b[row++] = 1.0;
  for (double e : first) sys.b[row++] = e;
  for (double e : second) sys.b[row++] = e;
  return sys;
}

NonnegativeSolution three_time_feasible(const ThreeTimeMoments& m) {
  const LinearSystem sys =
      moment_system(3, {m.first.begin(), m.first.end()}, {m.second.begin(), m.second.end()});
  return find_nonnegative_solution(sys);
}

}  // namespace lglab
