#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lglab/lgi.hpp"
#include "lglab/weakval.hpp"
#include "oracles.hpp"

using namespace lglab;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Independent closed forms written out from the moment expansion:
// <M2> = a^2 - b^2, <M3> = p4 - p3 = -2ab, <M2M3> = 0 for the sequential
// correlation at phi = 0.
std::array<double, 4> oracle_k(double beta) {
  const double a = std::sqrt(1.0 - beta * beta);
  const double e2 = a * a - beta * beta, e3 = -2.0 * a * beta, e23 = 0.0;
  std::array<double, 4> k{};
  const int s[4][2] = {{-1, 1}, {1, 1}, {-1, -1}, {1, -1}};
  for (int i = 0; i < 4; ++i)
    k[i] = 1.0 + s[i][0] * e2 + s[i][1] * e3 + s[i][0] * s[i][1] * e23;
  return k;
}

}  // namespace

TEST_CASE("two-time report") {
  const auto r = make_two_time_report({0.5, -0.2, 1.0, -0.3});
  REQUIRE(r.violated_index.has_value());
  CHECK(*r.violated_index == 34);
  CHECK(r.margin == doctest::Approx(0.3));
  CHECK(r.negative_count() == 2);
  const auto ok = make_two_time_report({0.0, -1e-13, 1.0, 1.0});
  CHECK_FALSE(ok.violated_index.has_value());
  CHECK(ok.margin == 0.0);
}

TEST_CASE("two_time_from_moments") {
  const auto k = two_time_from_moments(0.0, 0.0, 0.0);
  for (double v : k) CHECK(v == 1.0);
  const auto k2 = two_time_from_moments(0.5, -0.25, 0.1);
  CHECK(k2[0] == doctest::Approx(1.0 - 0.5 - 0.25 - 0.1));
  CHECK(k2[1] == doctest::Approx(1.0 + 0.5 - 0.25 + 0.1));
  CHECK(k2[2] == doctest::Approx(1.0 - 0.5 + 0.25 + 0.1));
  CHECK(k2[3] == doctest::Approx(1.0 + 0.5 + 0.25 - 0.1));
}

TEST_CASE("sequential correlation") {
  // Z then X on |0>: outcomes of X are unbiased after the update.
  const auto z = oracle::to_obs(oracle::bloch(0, 0, 1));
  const auto x = oracle::to_obs(oracle::bloch(1, 0, 0));
  const StateVector zero = StateVector::basis(2, 0);
  CHECK(std::abs(sequential_correlation(zero, z, x)) < 1e-15);
  CHECK(std::abs(sequential_correlation(zero, z, z) - 1.0) < 1e-15);
  // (Z + X)/sqrt2 after Z: correlation 1/sqrt2.
  const auto d = oracle::to_obs(oracle::bloch(kInvSqrt2, 0, kInvSqrt2));
  CHECK(std::abs(sequential_correlation(zero, z, d) - kInvSqrt2) < 1e-12);

  oracle::Random rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto s = rng.state();
    const auto mi = rng.dichotomic(), mj = rng.dichotomic();
    CHECK(std::abs(sequential_correlation(oracle::to_state(s), oracle::to_obs(mi),
                                          oracle::to_obs(mj)) -
                   oracle::seq_corr(s, mi, mj)) < 1e-12);
    double total = 0.0;
    for (int a : {1, -1})
      for (int b : {1, -1}) {
        const double p = sequential_joint_probability(oracle::to_state(s), oracle::to_obs(mi),
                                                      a, oracle::to_obs(mj), b);
        CHECK(std::abs(p - oracle::joint(s, mi, a, mj, b)) < 1e-12);
        total += p;
      }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}

TEST_CASE("three-time K3 for precession") {
  CHECK(std::abs(k3(precession_spec(std::numbers::pi / 3.0)) - 0.5) < 1e-12);
  CHECK(std::abs(k3(precession_spec(std::numbers::pi / 2.0))) < 1e-12);
  CHECK(std::abs(k3(precession_spec(std::numbers::pi)) + 4.0) < 1e-12);
  CHECK(std::abs(k3(precession_spec(0.0)) - 0.0) < 1e-12);
  for (int i = 0; i < 1000; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / 999.0;
    const double expected = 2.0 * std::cos(theta) - std::cos(2.0 * theta) - 1.0;
    const double got = k3(precession_spec(theta));
    CHECK(std::abs(got - expected) < 1e-12);
    CHECK(got <= 0.5 + 1e-9);
  }
}

TEST_CASE("interferometer LG: closed form, matrix route and oracle") {
  SUBCASE("beta = 1/2 frozen values") {
    const auto r = mz_lg_closed_form(MZConfig::from_beta(0.5));
    CHECK(std::abs(r.k31() + 0.366025403784438647) < 1e-15);
    CHECK(std::abs(r.k32() - 0.633974596215561353) < 1e-15);
    CHECK(std::abs(r.k33() - 1.36602540378443865) < 1e-15);
    CHECK(std::abs(r.k34() - 2.36602540378443865) < 1e-14);
    REQUIRE(r.violated_index.has_value());
    CHECK(*r.violated_index == 31);
  }
  SUBCASE("beta = 0.9 violates K32") {
    const auto r = mz_lg_closed_form(MZConfig::from_beta(0.9));
    REQUIRE(r.violated_index.has_value());
    CHECK(*r.violated_index == 32);
    CHECK(std::abs(r.k32() + 0.404601809837321239) < 1e-14);
    CHECK(std::abs(r.margin - 0.404601809837321239) < 1e-14);
  }
  SUBCASE("three routes agree across the grid") {
    for (int i = 0; i <= 1000; ++i) {
      const double beta = -1.0 + 2.0 * i / 1000.0;
      const auto cfg = MZConfig::from_beta(beta);
      const auto closed = mz_lg_closed_form(cfg);
      const auto matrix = mz_lg_matrix(cfg);
      const auto ref = oracle_k(beta);
      for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(closed.k[j] - ref[j]) < 1e-12);
        CHECK(std::abs(matrix.k[j] - ref[j]) < 1e-12);
      }
    }
  }
  SUBCASE("phase shifter: routes still agree") {
    for (double phi : {0.5, 1.7, 3.0}) {
      for (double beta : {-0.8, -0.2, 0.3, 0.6}) {
        const auto cfg = MZConfig::from_beta(beta, phi);
        const auto closed = mz_lg_closed_form(cfg);
        const auto matrix = mz_lg_matrix(cfg);
        for (int j = 0; j < 4; ++j) CHECK(std::abs(closed.k[j] - matrix.k[j]) < 1e-12);
      }
    }
  }
}

TEST_CASE("weak-value route equals the moment route") {
  oracle::Random rng(99);
  for (int i = 0; i < 500; ++i) {
    const auto s = oracle::to_state(rng.state());
    const auto m2 = oracle::to_obs(rng.dichotomic());
    const auto m3 = oracle::to_obs(rng.dichotomic());
    const auto weak = two_time_lg_weak_form(s, m2, m3);
    const auto direct = two_time_lg(s, m2, m3);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(weak[j] - direct.k[j]) < 1e-12);
  }
}

TEST_CASE("exceptional beta") {
  for (double b : {0.0, kInvSqrt2, -kInvSqrt2, 1.0, -1.0}) CHECK(is_exceptional_beta(b));
  CHECK_FALSE(is_exceptional_beta(0.5));
  CHECK_FALSE(is_exceptional_beta(1e-6));
}

TEST_CASE("sweep pattern") {
  const auto grid = uniform_grid(1001, -1.0, 1.0);
  REQUIRE(grid.size() == 1001);
  CHECK(grid.front() == -1.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[500] == 0.0);
  const auto rows = sweep_beta(grid);
  for (const auto& row : rows) {
    const double b = row.beta;
    int expected = 0;
    if (!is_exceptional_beta(b)) {
      if (b > 0 && b < kInvSqrt2) expected = 31;
      else if (b > kInvSqrt2) expected = 32;
      else if (b < 0 && b > -kInvSqrt2) expected = 33;
      else expected = 34;
    }
    CHECK(row.violated_index.value_or(0) == expected);
    const auto r = make_two_time_report(row.k);
    if (expected != 0) {
      CHECK(r.negative_count() == 1);
    } else {
      CHECK(r.min_k() >= -1e-12);
      CHECK(r.min_k() <= 1e-12);
    }
  }
  SUBCASE("five-point grid") {
    const auto small = sweep_beta(uniform_grid(5, 0.0, 1.0));
    const int want[5] = {0, 31, 31, 32, 0};
    for (int i = 0; i < 5; ++i) CHECK(small[i].violated_index.value_or(0) == want[i]);
  }
  SUBCASE("dark port rows") {
    const auto row = sweep_row(kInvSqrt2);
    CHECK_FALSE(row.w4.has_value());
    CHECK(row.w3.has_value());
    CHECK_FALSE(row.violated_index.has_value());
  }
  CHECK_THROWS_AS(uniform_grid(1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("violation occurs iff the matching weak value is anomalous") {
  for (const auto& row : sweep_beta(uniform_grid(1001, -1.0, 1.0))) {
    if (is_exceptional_beta(row.beta)) continue;
    const bool anom3 = row.w3 && std::abs(*row.w3) > 1.0;
    const bool anom4 = row.w4 && std::abs(*row.w4) > 1.0;
    // K31, K32 carry the psi4 weak value; K33, K34 carry psi3.
    const bool v3132 = row.k[0] < -1e-12 || row.k[1] < -1e-12;
    const bool v3334 = row.k[2] < -1e-12 || row.k[3] < -1e-12;
    CHECK(v3132 == anom4);
    CHECK(v3334 == anom3);
    if (anom4) {
      CHECK((row.k[0] < 0) == (*row.w4 > 1.0));
      CHECK((row.k[1] < 0) == (*row.w4 < -1.0));
    }
    if (anom3) {
      CHECK((row.k[2] < 0) == (*row.w3 > 1.0));
      CHECK((row.k[3] < 0) == (*row.w3 < -1.0));
    }
  }
}
