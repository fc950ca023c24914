#include "lglab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lglab/counter_rng.hpp"

namespace lglab {

namespace {

std::uint64_t stream_id(RunKind kind) { return static_cast<std::uint64_t>(kind) + 1; }

/// Cumulative thresholds where zero-probability outcomes can never be drawn:
/// the last outcome with positive weight closes the range at exactly 1.
std::vector<double> cumulative(const std::vector<double>& probs) {
  double total = 0.0;
  for (double p : probs) total += std::max(0.0, p);
  std::vector<double> cum(probs.size());
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += std::max(0.0, probs[i]) / total;
    cum[i] = acc;
    if (probs[i] > 0.0) last_positive = i;
  }
  for (std::size_t i = last_positive; i < cum.size(); ++i) cum[i] = 1.0;
  return cum;
}

void count_range(const CounterRng& rng, const std::vector<double>& cum, std::uint64_t begin,
                 std::uint64_t end, std::vector<std::uint64_t>& counts) {
  for (std::uint64_t k = begin; k < end; ++k) {
    const double u = rng.uniform(k);
    std::size_t c = 0;
    while (c + 1 < cum.size() && !(u < cum[c])) ++c;
    ++counts[c];
  }
}

}  // namespace

const char* to_string(RunKind kind) {
  switch (kind) {
    case RunKind::interference: return "interference";
    case RunKind::path: return "path";
    case RunKind::sequential: return "sequential";
  }
  return "unknown";
}

RunKind parse_run_kind(const std::string& name) {
  if (name == "interference") return RunKind::interference;
  if (name == "path") return RunKind::path;
  if (name == "sequential") return RunKind::sequential;
  throw std::invalid_argument("run kind must be interference, path or sequential");
}

std::size_t SampleEstimate::index_of(const std::string& outcome) const {
  const auto it = std::find(outcomes.begin(), outcomes.end(), outcome);
  if (it == outcomes.end()) throw std::out_of_range("SampleEstimate: unknown outcome " + outcome);
  return static_cast<std::size_t>(it - outcomes.begin());
}

std::vector<std::string> outcome_labels(RunKind kind) {
  switch (kind) {
    case RunKind::interference: return {"psi3", "psi4"};
    case RunKind::path: return {"psi1", "psi2"};
    case RunKind::sequential: return {"psi1_psi4", "psi1_psi3", "psi2_psi4", "psi2_psi3"};
  }
  return {};
}

std::vector<double> outcome_probabilities(const MZConfig& cfg, RunKind kind) {
  cfg.validate();
  switch (kind) {
    case RunKind::interference: {
      const auto p = detection_probabilities(cfg);
      return {p.p3, p.p4};
    }
    case RunKind::path:
      return {cfg.alpha * cfg.alpha, cfg.beta * cfg.beta};
    case RunKind::sequential: {
      const StateVector pre = input_state(cfg);
      const auto m2 = path_observable();
      const auto m3 = output_observable(cfg.phi);
      std::vector<double> p;
      for (int a : {+1, -1})
        for (int b : {+1, -1}) p.push_back(sequential_joint_probability(pre, m2, a, m3, b));
      return p;
    }
  }
  return {};
}

SampleEstimate run(const RunSpec& spec) {
  if (spec.shots == 0) throw std::invalid_argument("run: shots must be at least 1");
  const auto probs = outcome_probabilities(spec.cfg, spec.kind);
  const auto cum = cumulative(probs);
  const CounterRng rng(spec.seed, stream_id(spec.kind));

  const unsigned parts =
      static_cast<unsigned>(std::clamp<std::uint64_t>(spec.partitions, 1, spec.shots));
  std::vector<std::vector<std::uint64_t>> partial(parts,
                                                  std::vector<std::uint64_t>(probs.size(), 0));
  if (parts == 1) {
    count_range(rng, cum, 0, spec.shots, partial[0]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(parts);
    for (unsigned w = 0; w < parts; ++w) {
      const std::uint64_t begin = spec.shots * w / parts;
      const std::uint64_t end = spec.shots * (w + 1) / parts;
      workers.emplace_back(count_range, std::cref(rng), std::cref(cum), begin, end,
                           std::ref(partial[w]));
    }
    for (auto& t : workers) t.join();
  }

  SampleEstimate est;
  est.outcomes = outcome_labels(spec.kind);
  est.counts.assign(probs.size(), 0);
  for (const auto& part : partial)
    for (std::size_t c = 0; c < part.size(); ++c) est.counts[c] += part[c];
  est.total = spec.shots;
  const double n = static_cast<double>(spec.shots);
  for (std::size_t c = 0; c < est.counts.size(); ++c) {
    const double p = static_cast<double>(est.counts[c]) / n;
    est.estimates.push_back(p);
    est.stderrs.push_back(std::sqrt(p * (1.0 - p) / n));
    est.zero_count_upper_bound.push_back(est.counts[c] == 0 ? std::optional<double>(3.0 / n)
                                                            : std::nullopt);
  }
  return est;
}

bool EmpiricalLG::significantly_negative(std::size_t i, double nsigma) const {
  return report.k[i] + nsigma * stderrs[i] < 0.0;
}

std::optional<int> EmpiricalLG::significant_violation(double nsigma) const {
  for (std::size_t i = 0; i < 4; ++i)
    if (significantly_negative(i, nsigma)) return kTwoTimeLabels[i];
  return std::nullopt;
}

EmpiricalLG empirical_lg(const MZConfig& cfg, std::uint64_t shots, std::uint64_t seed,
                         unsigned partitions) {
  const auto interference = run({cfg, shots, seed, RunKind::interference, partitions});
  const auto path = run({cfg, shots, seed, RunKind::path, partitions});
  const auto seq = run({cfg, shots, seed, RunKind::sequential, partitions});
  const double n = static_cast<double>(shots);

  EmpiricalLG out;
  // Dichotomic +-1 estimators: Var = (1 - E^2) / N.
  out.e3 = interference.estimate("psi4") - interference.estimate("psi3");
  out.e2 = path.estimate("psi1") - path.estimate("psi2");
  out.e23 = seq.estimate("psi1_psi4") - seq.estimate("psi1_psi3") -
            seq.estimate("psi2_psi4") + seq.estimate("psi2_psi3");
  out.e3_stderr = std::sqrt(std::max(0.0, 1.0 - out.e3 * out.e3) / n);
  out.e2_stderr = std::sqrt(std::max(0.0, 1.0 - out.e2 * out.e2) / n);
  out.e23_stderr = std::sqrt(std::max(0.0, 1.0 - out.e23 * out.e23) / n);

  out.report = make_two_time_report(two_time_from_moments(out.e2, out.e3, out.e23));
  const double sigma = std::sqrt(out.e2_stderr * out.e2_stderr + out.e3_stderr * out.e3_stderr +
                                 out.e23_stderr * out.e23_stderr);
  out.stderrs.fill(sigma);
  return out;
}

EmpiricalNsit empirical_nsit(const MZConfig& cfg, std::uint64_t shots, std::uint64_t seed,
                             unsigned partitions) {
  const auto interference = run({cfg, shots, seed, RunKind::interference, partitions});
  const auto seq = run({cfg, shots, seed, RunKind::sequential, partitions});
  const double n = static_cast<double>(shots);
  const double p_direct = interference.estimate("psi3");
  const double p_seq = seq.estimate("psi1_psi3") + seq.estimate("psi2_psi3");
  return {p_direct - p_seq,
          std::sqrt(p_direct * (1.0 - p_direct) / n + p_seq * (1.0 - p_seq) / n)};
}

}  // namespace lglab
