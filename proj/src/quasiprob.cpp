#include "lglab/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lglab {

namespace {

constexpr std::array<std::array<int, 2>, 4> kOutcomes{{{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}}};

void fill_diagnostics(QuasiprobTable& t, std::array<double, 2> p_i, std::array<double, 2> p_j) {
  t.negativity = 0.0;
  for (double v : t.q)
    if (v < 0.0) t.negativity -= v;
  // p_i / p_j indexed by outcome +1 -> 0, -1 -> 1.
  double worst = 0.0;
  for (int m : {+1, -1}) {
    const std::size_t k = m == +1 ? 0 : 1;
    worst = std::max(worst, std::abs(t.at(m, +1) + t.at(m, -1) - p_i[k]));
    worst = std::max(worst, std::abs(t.at(+1, m) + t.at(-1, m) - p_j[k]));
  }
  t.nsit_residual = worst;
}

double trace_real(const Operator& m) { return m.trace().real(); }

void require_density(const Operator& rho) {
  if (!rho.is_hermitian()) throw NotHermitian("quasi: rho must be Hermitian");
  if (std::abs(rho.trace() - Complex{1.0}) > kInputTol) {
    throw std::invalid_argument("quasi: rho must have unit trace");
  }
}

}  // namespace

std::size_t QuasiprobTable::index(int m_i, int m_j) {
  if ((m_i != 1 && m_i != -1) || (m_j != 1 && m_j != -1)) {
    throw std::invalid_argument("QuasiprobTable: outcomes must be +1 or -1");
  }
  return (m_i == +1 ? 0 : 2) + (m_j == +1 ? 0 : 1);
}

double QuasiprobTable::min_entry() const { return *std::min_element(q.begin(), q.end()); }

QuasiprobTable quasi(const Operator& rho, const DichotomicObservable& mi,
                     const DichotomicObservable& mj) {
  require_same_dim(rho.dim(), mi.dim(), "quasi");
  require_same_dim(rho.dim(), mj.dim(), "quasi");
  require_density(rho);
  QuasiprobTable t;
  for (std::size_t k = 0; k < 4; ++k) {
    const Operator& pi = mi.projector(kOutcomes[k][0]);
    const Operator& pj = mj.projector(kOutcomes[k][1]);
    const Complex v = 0.5 * ((pj * pi + pi * pj) * rho).trace();
    if (std::abs(v.imag()) > kStructuralTol) {
      throw InvariantError("quasi: symmetrized trace has an imaginary part");
    }
    t.q[k] = v.real();
  }
  std::array<double, 2> p_i{trace_real(mi.plus_projector() * rho),
                            trace_real(mi.minus_projector() * rho)};
  std::array<double, 2> p_j{trace_real(mj.plus_projector() * rho),
                            trace_real(mj.minus_projector() * rho)};
  fill_diagnostics(t, p_i, p_j);
  return t;
}

QuasiprobTable quasi(const StateVector& state, const DichotomicObservable& mi,
                     const DichotomicObservable& mj) {
  return quasi(density(state), mi, mj);
}

NsitResiduals nsit_check(const Operator& rho, const DichotomicObservable& mi,
                         const DichotomicObservable& mj) {
  const QuasiprobTable t = quasi(rho, mi, mj);
  NsitResiduals r{0.0, 0.0};
  for (int m : {+1, -1}) {
    const double born_i = trace_real(mi.projector(m) * rho);
    const double born_j = trace_real(mj.projector(m) * rho);
    r.residual_i = std::max(r.residual_i, std::abs(t.at(m, +1) + t.at(m, -1) - born_i));
    r.residual_j = std::max(r.residual_j, std::abs(t.at(+1, m) + t.at(-1, m) - born_j));
  }
  return r;
}

NsitResiduals nsit_check(const StateVector& state, const DichotomicObservable& mi,
                         const DichotomicObservable& mj) {
  return nsit_check(density(state), mi, mj);
}

CorrelationPair correlation_equivalence(const StateVector& state,
                                        const DichotomicObservable& mi,
                                        const DichotomicObservable& mj) {
  return {quasi(state, mi, mj).correlation(), sequential_correlation(state, mi, mj)};
}

QuasiprobTable mr_reading(double e_i, double e_j, double e_ij) {
  for (double e : {e_i, e_j, e_ij}) {
    if (!std::isfinite(e) || std::abs(e) > 1.0 + kInputTol) {
      throw std::invalid_argument("mr_reading: moments must lie in [-1, 1]");
    }
  }
  QuasiprobTable t;
  for (std::size_t k = 0; k < 4; ++k) {
    const int mi = kOutcomes[k][0];
    const int mj = kOutcomes[k][1];
    t.q[k] = 0.25 * (1.0 + mi * e_i + mj * e_j + mi * mj * e_ij);
  }
  fill_diagnostics(t, {(1.0 + e_i) / 2.0, (1.0 - e_i) / 2.0},
                   {(1.0 + e_j) / 2.0, (1.0 - e_j) / 2.0});
  return t;
}

TwoTimeLGReport lg_from_quasi(const QuasiprobTable& table) {
  std::array<double, 4> k{};
  for (std::size_t i = 0; i < 4; ++i)
    k[i] = 4.0 * table.at(kTwoTimeSigns[i][0], kTwoTimeSigns[i][1]);
  return make_two_time_report(k);
}

QuasiprobTable mz_quasi(const MZConfig& cfg) {
  return quasi(input_state(cfg), path_observable(), output_observable(cfg.phi));
}

double signaling_gap_projective(const MZConfig& cfg) {
  const StateVector pre = input_state(cfg);
  const DichotomicObservable m2 = path_observable();
  const DichotomicObservable m3 = output_observable(cfg.phi);
  constexpr int kPsi3 = -1;  // psi3 carries the -1 outcome of M3
  double p_seq = 0.0;
  for (int m : {+1, -1}) p_seq += sequential_joint_probability(pre, m2, m, m3, kPsi3);
  const double p_direct = born_probability(m3.projector(kPsi3), pre);
  return std::abs(p_seq - p_direct);
}

ThreeTimeSuite three_time_suite(const StateVector& state, const DichotomicObservable& m1,
                                const DichotomicObservable& m2,
                                const DichotomicObservable& m3) {
  ThreeTimeSuite s{quasi(state, m1, m2), quasi(state, m1, m3), quasi(state, m2, m3), {}, false};
  std::size_t n = 0;
  for (const auto* t : {&s.q12, &s.q13, &s.q23})
    for (double v : t->q) s.entries[n++] = v;
  s.weak_macrorealism = std::all_of(s.entries.begin(), s.entries.end(),
                                    [](double v) { return v >= -kStructuralTol; });
  return s;
}

}  // namespace lglab
