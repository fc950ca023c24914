// experiment.hpp
// Finite-shot emulation of the interferometer runs: interference (output
// ports), path (which arm), and sequential (path measurement followed by the
// output ports). Sampling is driven by CounterRng, so counts depend only on
// (spec, seed) and never on how the shots are partitioned across threads.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lglab/interferometer.hpp"
#include "lglab/lgi.hpp"

namespace lglab {

enum class RunKind { interference, path, sequential };

const char* to_string(RunKind kind);
RunKind parse_run_kind(const std::string& name);

struct RunSpec {
  MZConfig cfg;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  RunKind kind = RunKind::interference;
  /// Worker threads used for sampling; results do not depend on it.
  unsigned partitions = 1;
};

struct SampleEstimate {
  std::vector<std::string> outcomes;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::vector<double> estimates;  // counts / total
  std::vector<double> stderrs;    // sqrt(p(1-p)/N)
  /// 3/N for outcomes never observed (rule of three, ~95% upper bound),
  /// empty otherwise.
  std::vector<std::optional<double>> zero_count_upper_bound;

  std::size_t index_of(const std::string& outcome) const;
  double estimate(const std::string& outcome) const { return estimates[index_of(outcome)]; }
  double stderr_of(const std::string& outcome) const { return stderrs[index_of(outcome)]; }
  std::uint64_t count(const std::string& outcome) const { return counts[index_of(outcome)]; }
};

/// Outcome labels for each kind. Sequential outcomes name the path first:
/// psi1 <-> m2 = +1, psi2 <-> m2 = -1, psi4 <-> m3 = +1, psi3 <-> m3 = -1.
std::vector<std::string> outcome_labels(RunKind kind);
/// Exact outcome probabilities in label order.
std::vector<double> outcome_probabilities(const MZConfig& cfg, RunKind kind);

/// Throws std::invalid_argument for zero shots or an invalid configuration.
SampleEstimate run(const RunSpec& spec);

struct EmpiricalLG {
  TwoTimeLGReport report;        // from the point estimates
  std::array<double, 4> stderrs{};
  double e2 = 0.0, e3 = 0.0, e23 = 0.0;
  double e2_stderr = 0.0, e3_stderr = 0.0, e23_stderr = 0.0;

  /// K_i + nsigma * stderr_i < 0.
  bool significantly_negative(std::size_t i, double nsigma = 4.0) const;
  /// Label (31..34) of a K that is negative at nsigma, if any.
  std::optional<int> significant_violation(double nsigma = 4.0) const;
};

/// <M3> from the interference run, <M2> from the path run, <M2M3> from the
/// sequential run; errors combined in quadrature.
EmpiricalLG empirical_lg(const MZConfig& cfg, std::uint64_t shots, std::uint64_t seed,
                         unsigned partitions = 1);

struct EmpiricalNsit {
  double gap_estimate;  // p(psi3 | interference) - p(psi3 | sequential)
  double gap_stderr;
};

/// True gap is alpha * beta at phi = 0.
EmpiricalNsit empirical_nsit(const MZConfig& cfg, std::uint64_t shots, std::uint64_t seed,
                             unsigned partitions = 1);

}  // namespace lglab
