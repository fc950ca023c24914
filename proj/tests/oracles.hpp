// oracles.hpp
// Test-only reference computations on explicit 2x2 complex matrices. Nothing
// here calls into lglab; the helpers at the bottom only convert oracle
// objects into lglab inputs.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "lglab/qcore.hpp"

namespace oracle {

using C = std::complex<double>;
using Vec = std::array<C, 2>;

struct Mat {
  C a, b, c, d;  // [[a, b], [c, d]]
};

inline Mat mul(const Mat& x, const Mat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
inline Vec mul(const Mat& m, const Vec& v) {
  return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]};
}
inline C dot(const Vec& x, const Vec& y) { return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]; }
inline double norm2(const Vec& v) { return std::norm(v[0]) + std::norm(v[1]); }
inline Mat outer(const Vec& x) {
  return {x[0] * std::conj(x[0]), x[0] * std::conj(x[1]), x[1] * std::conj(x[0]),
          x[1] * std::conj(x[1])};
}

/// n . sigma for a unit Bloch vector.
inline Mat bloch(double nx, double ny, double nz) {
  return {C(nz, 0), C(nx, -ny), C(nx, ny), C(-nz, 0)};
}
/// (I + m M) / 2
inline Mat proj(const Mat& m, int outcome) {
  const double s = outcome;
  return {0.5 * (1.0 + s * m.a), 0.5 * s * m.b, 0.5 * s * m.c, 0.5 * (1.0 + s * m.d)};
}

/// Brute-force joint enumeration for the Luders two-step rule.
inline double joint(const Vec& s, const Mat& mi, int a, const Mat& mj, int b) {
  return norm2(mul(proj(mj, b), mul(proj(mi, a), s)));
}
inline double seq_corr(const Vec& s, const Mat& mi, const Mat& mj) {
  double acc = 0.0;
  for (int a : {1, -1})
    for (int b : {1, -1}) acc += a * b * joint(s, mi, a, mj, b);
  return acc;
}
inline double expect(const Mat& m, const Vec& s) { return dot(s, mul(m, s)).real(); }

/// 1/2 <s|P_j P_i + P_i P_j|s>
inline double quasi(const Vec& s, const Mat& mi, int a, const Mat& mj, int b) {
  const Mat pi = proj(mi, a), pj = proj(mj, b);
  return 0.5 * (dot(s, mul(mul(pj, pi), s)) + dot(s, mul(mul(pi, pj), s))).real();
}

struct Random {
  std::mt19937_64 gen;
  explicit Random(std::uint64_t seed) : gen(seed) {}
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  Vec state() {
    Vec v{C(normal(), normal()), C(normal(), normal())};
    const double n = std::sqrt(norm2(v));
    return {v[0] / n, v[1] / n};
  }
  std::array<double, 3> unit3() {
    double x = normal(), y = normal(), z = normal();
    const double n = std::sqrt(x * x + y * y + z * z);
    return {x / n, y / n, z / n};
  }
  Mat dichotomic() {
    const auto n = unit3();
    return bloch(n[0], n[1], n[2]);
  }
  Mat hermitian() {
    return {C(normal(), 0), C(normal(), normal()), C(0, 0), C(normal(), 0)};
  }
};

inline Mat hermitian_fix(Mat m) {
  m.c = std::conj(m.b);
  return m;
}

// ---- conversion into lglab inputs

inline lglab::StateVector to_state(const Vec& v) { return lglab::StateVector({v[0], v[1]}); }
inline lglab::Operator to_op(const Mat& m) { return lglab::Operator(2, {m.a, m.b, m.c, m.d}); }
inline lglab::DichotomicObservable to_obs(const Mat& m) {
  return lglab::DichotomicObservable(to_op(proj(m, +1)), to_op(proj(m, -1)));
}

}  // namespace oracle
