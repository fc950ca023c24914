#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lglab/interferometer.hpp"
#include "lglab/weakval.hpp"
#include "oracles.hpp"

using namespace lglab;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST_CASE("weak_value") {
  const auto& b = mz_basis();
  const auto pre = input_state(MZConfig::from_beta(0.5));

  const auto unit = weak_value(Operator::identity(2), pre, b.psi3);
  CHECK(std::abs(unit.value - Complex{1.0}) < 1e-15);
  CHECK_FALSE(unit.anomalous_real);

  // Oracle: closed form (a+b)/(a-b) and direct 2x2 evaluation.
  const oracle::Vec pre_o{kSqrt3 / 2.0, 0.5};
  const oracle::Vec p4_o{kInvSqrt2, -kInvSqrt2};
  const oracle::Mat m2_o{1.0, 0.0, 0.0, -1.0};
  const Complex direct = oracle::dot(pre_o, oracle::mul(m2_o, p4_o)) / oracle::dot(pre_o, p4_o);
  CHECK(std::abs(direct - Complex{2.0 + kSqrt3}) < 1e-14);

  const auto w = weak_value(path_observable().matrix(), pre, b.psi4);
  CHECK(std::abs(w.value.real() - 3.7320508075688773) < 1e-13);
  CHECK(std::abs(w.value - direct) < 1e-13);
  CHECK(w.anomalous_real);
  CHECK_FALSE(w.nonzero_imag);
  CHECK(std::abs(w.postselect_prob - born_probability(Operator::projector(b.psi4), pre)) < 1e-12);

  const auto balanced = input_state(MZConfig{kInvSqrt2, kInvSqrt2});
  CHECK_THROWS_AS(weak_value(path_observable().matrix(), balanced, b.psi4),
                  OrthogonalPostSelection);
  CHECK_THROWS_AS(weak_value(Operator(2, {0.0, 1.0, 0.0, 0.0}), pre, b.psi3), NotHermitian);
}

TEST_CASE("near-orthogonal post-selection gives huge finite weak values") {
  const double beta = kInvSqrt2 - 1e-6;
  const auto w = weak_value(path_observable().matrix(), input_state(MZConfig::from_beta(beta)),
                            mz_basis().psi4);
  CHECK(std::isfinite(w.value.real()));
  CHECK(w.value.real() > 1e5);
  CHECK(w.postselect_prob > 0.0);
}

TEST_CASE("complex weak values are flagged separately") {
  const StateVector pre({Complex(0.6, 0.0), Complex(0.0, 0.8)});
  const auto w = weak_value(path_observable().matrix(), pre, mz_basis().psi3);
  CHECK(w.nonzero_imag);
  CHECK(std::abs(w.value.real()) <= 1.0);
  CHECK_FALSE(w.anomalous_real);
}

TEST_CASE("expectation_decomposition") {
  const auto m2 = path_observable().matrix();
  const auto m3 = output_observable();
  const auto pre = input_state(MZConfig::from_beta(0.5));
  const auto d = expectation_decomposition(m2, pre, m3);
  CHECK(std::abs(d.total - 0.5) < 1e-12);
  // term_f = p(psi4) (M2)_w^{psi4}
  const auto w4 = weak_value(m2, pre, mz_basis().psi4);
  CHECK(std::abs(d.term_f - w4.postselect_prob * w4.value) < 1e-12);

  const auto id = expectation_decomposition(Operator::identity(2), pre, m3);
  CHECK(std::abs(id.term_f.real() - (2.0 - kSqrt3) / 4.0) < 1e-15);
  CHECK(std::abs(id.term_fperp.real() - (2.0 + kSqrt3) / 4.0) < 1e-15);
  CHECK(std::abs(id.total - 1.0) < 1e-15);

  CHECK(std::abs(expectation_decomposition(m2, mz_basis().psi3, m3).total) < 1e-15);

  SUBCASE("zero-probability branch stays finite") {
    const auto bal = input_state(MZConfig{kInvSqrt2, kInvSqrt2});
    const auto z = expectation_decomposition(m2, bal, m3);
    CHECK(std::abs(z.term_f) < 1e-15);
    CHECK(std::abs(z.total) < 1e-15);
  }

  SUBCASE("identity over random instances") {
    oracle::Random rng(21);
    for (int i = 0; i < 1000; ++i) {
      const auto a = oracle::hermitian_fix(rng.hermitian());
      const auto s = rng.state();
      const auto basis = oracle::to_obs(rng.dichotomic());
      const auto dd = expectation_decomposition(oracle::to_op(a), oracle::to_state(s), basis);
      CHECK(std::abs(dd.total - oracle::expect(a, s)) < 1e-12);
    }
  }
}

TEST_CASE("mz_weak_values") {
  SUBCASE("single path input") {
    const auto w = mz_weak_values(MZConfig{1.0, 0.0});
    CHECK(w.w3.value == Complex{1.0});
    CHECK(w.w4.value == Complex{1.0});
    CHECK(w.w3.postselect_prob == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w.w4.postselect_prob == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(w.w3.anomalous_real);
  }
  SUBCASE("balanced input") {
    const MZConfig cfg{kInvSqrt2, kInvSqrt2};
    CHECK(std::abs(mz_weak_value_3(cfg).value) < 1e-15);
    CHECK_THROWS_AS(mz_weak_value_4(cfg), OrthogonalPostSelection);
    CHECK_THROWS_AS(mz_weak_values(cfg), OrthogonalPostSelection);
  }
  SUBCASE("beta = 1/2") {
    const auto w = mz_weak_values(MZConfig::from_beta(0.5));
    CHECK(std::abs(w.w3.value.real() - 0.26794919243112271) < 1e-14);
    CHECK(std::abs(w.w4.value.real() - 3.7320508075688773) < 1e-13);
    CHECK_FALSE(w.w3.anomalous_real);
    CHECK(w.w4.anomalous_real);
  }
  SUBCASE("matrix route matches closed forms, reciprocal identity, probabilities") {
    for (int i = 1; i < 1000; ++i) {
      const double beta = -1.0 + 2.0 * i / 1000.0;
      const auto cfg = MZConfig::from_beta(beta);
      const auto p = detection_probabilities(cfg);
      if (p.p3 <= kZeroOverlapTol || p.p4 <= kZeroOverlapTol) continue;
      const auto w = mz_weak_values(cfg);
      const Complex c3 = mz_weak_value_3_closed_form(cfg);
      const Complex c4 = mz_weak_value_4_closed_form(cfg);
      CHECK(std::abs(w.w3.value - c3) <= 1e-12 * std::max(1.0, std::abs(c3)));
      CHECK(std::abs(w.w4.value - c4) <= 1e-12 * std::max(1.0, std::abs(c4)));
      CHECK(std::abs(w.w3.value * w.w4.value - Complex{1.0}) < 1e-12);
      CHECK(std::abs(w.w3.postselect_prob - p.p3) < 1e-12);
      CHECK(std::abs(w.w4.postselect_prob - p.p4) < 1e-12);
    }
  }
  SUBCASE("phase shifter: post-selection probabilities track detection") {
    for (double phi : {0.3, 1.2, -2.5}) {
      const auto cfg = MZConfig::from_beta(0.4, phi);
      const auto w = mz_weak_values(cfg);
      const auto p = detection_probabilities(cfg);
      CHECK(std::abs(w.w3.postselect_prob - p.p3) < 1e-12);
      CHECK(std::abs(w.w4.postselect_prob - p.p4) < 1e-12);
      CHECK(std::abs(w.w3.value - mz_weak_value_3_closed_form(cfg)) < 1e-12);
      CHECK(w.w3.nonzero_imag);
    }
  }
}

TEST_CASE("anomaly structure over the beta grid") {
  int checked = 0;
  for (int i = 0; i <= 10000; ++i) {
    const double beta = -1.0 + 2.0 * i / 10000.0;
    const auto cfg = MZConfig::from_beta(beta);
    const auto p = detection_probabilities(cfg);
    const bool has3 = p.p3 > kZeroOverlapTol;
    const bool has4 = p.p4 > kZeroOverlapTol;
    const bool anom3 = has3 && std::abs(mz_weak_value_3(cfg).value.real()) > 1.0;
    const bool anom4 = has4 && std::abs(mz_weak_value_4(cfg).value.real()) > 1.0;
    CHECK_FALSE((anom3 && anom4));
    if (beta > 0.0 && cfg.alpha > 0.0 && std::abs(cfg.alpha - beta) > 1e-9 && has3 && has4) {
      CHECK(mz_weak_value_3(cfg).anomalous_real != mz_weak_value_4(cfg).anomalous_real);
      ++checked;
    }
  }
  CHECK(checked > 4000);
}
