#include "lglab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "lglab/counter_rng.hpp"
#include "lglab/experiment.hpp"
#include "lglab/interferometer.hpp"
#include "lglab/lgi.hpp"
#include "lglab/mrcheck.hpp"
#include "lglab/quasiprob.hpp"
#include "lglab/records.hpp"
#include "lglab/weakval.hpp"

namespace lglab::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Defaults, then config file, then command-line flags.
struct Options {
  std::optional<double> beta;
  std::optional<double> alpha;
  double phi = 0.0;
  std::size_t grid = 1001;
  double min = -1.0;
  double max = 1.0;
  std::string output;
  std::string format = "csv";
  std::optional<double> e2, e3, e23;
  std::uint64_t shots = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::string kind = "interference";
  unsigned threads = 1;
  double theta = std::numbers::pi / 3.0;
};

std::uint64_t seed_from_env() {
  const char* env = std::getenv("LGLAB_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
    throw UsageError("LGLAB_SEED must be an unsigned 64-bit integer");
  }
  return v;
}

template <class T>
void take(const nlohmann::json& obj, const char* key, T& dst) {
  if (obj.contains(key)) dst = obj.at(key).get<T>();
}

template <class T>
void take(const nlohmann::json& obj, const char* key, std::optional<T>& dst) {
  if (obj.contains(key)) dst = obj.at(key).get<T>();
}

void apply_config_section(const nlohmann::json& obj, Options& o) {
  take(obj, "beta", o.beta);
  take(obj, "alpha", o.alpha);
  take(obj, "phi", o.phi);
  take(obj, "grid", o.grid);
  take(obj, "min", o.min);
  take(obj, "max", o.max);
  take(obj, "output", o.output);
  take(obj, "format", o.format);
  take(obj, "e2", o.e2);
  take(obj, "e3", o.e3);
  take(obj, "e23", o.e23);
  take(obj, "shots", o.shots);
  take(obj, "seed", o.seed);
  take(obj, "kind", o.kind);
  take(obj, "threads", o.threads);
  take(obj, "theta", o.theta);
}

/// Finds --config in the raw arguments.
std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

void load_config(const std::string& path, const std::vector<std::string>& args, Options& o) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    apply_config_section(doc, o);
    // A section named after the subcommand overrides top-level keys.
    for (const auto& a : args) {
      if (doc.contains(a) && doc.at(a).is_object()) {
        apply_config_section(doc.at(a), o);
        break;
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config value has the wrong type: " + std::string(e.what()));
  }
}

MZConfig make_config(const Options& o) {
  if (!o.beta) throw UsageError("--beta is required");
  const double b = *o.beta;
  if (!std::isfinite(b) || std::abs(b) > 1.0) {
    throw UsageError("--beta must satisfy |beta| <= 1");
  }
  if (!std::isfinite(o.phi)) throw UsageError("--phi must be finite");
  if (!o.alpha) return MZConfig::from_beta(b, o.phi);
  MZConfig cfg{*o.alpha, b, o.phi, PropagationMode::closed_form};
  if (!std::isfinite(cfg.alpha) ||
      std::abs(cfg.alpha * cfg.alpha + b * b - 1.0) > kInputTol) {
    throw UsageError("--alpha and --beta must satisfy alpha^2 + beta^2 = 1 (within 1e-9)");
  }
  return cfg;
}

void base_fields(OutputRecord& r, const MZConfig& cfg) {
  r.set("beta", cfg.beta).set("alpha", cfg.alpha).set("phi", cfg.phi);
}

FieldValue violated_value(const std::optional<int>& v) {
  if (v) return static_cast<std::int64_t>(*v);
  return std::string("none");
}

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& out) : opts_(o), out_(out) {
    if (o.format != "csv" && o.format != "json") {
      throw UsageError("--format must be csv or json");
    }
  }

  void emit(const std::vector<OutputRecord>& records, bool single) {
    if (opts_.output.empty() || opts_.output == "-") {
      write(out_, records, single);
      return;
    }
    std::ofstream file(opts_.output, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write output file " + opts_.output);
    write(file, records, single);
    file.flush();
    if (!file) throw UsageError("failed while writing " + opts_.output);
  }

 private:
  void write(std::ostream& os, const std::vector<OutputRecord>& records, bool single) {
    if (opts_.format == "json") {
      if (single && records.size() == 1) {
        write_json_object(os, records.front());
      } else {
        write_json(os, records);
      }
    } else {
      write_csv(os, records);
    }
  }

  const Options& opts_;
  std::ostream& out_;
};

// ------------------------------------------------------------------ commands

OutputRecord cmd_probabilities(const Options& o) {
  const MZConfig cfg = make_config(o);
  const auto p = detection_probabilities(cfg);
  OutputRecord r;
  base_fields(r, cfg);
  r.set("p3", p.p3).set("p4", p.p4);
  return r;
}

void weak_fields(OutputRecord& r, const char* name, const MZConfig& cfg,
                 WeakValueResult (*fn)(const MZConfig&)) {
  const std::string n(name);
  try {
    const auto w = fn(cfg);
    r.set(n, w.value.real())
        .set(n + "_imag", w.value.imag())
        .set(n + "_anomalous", w.anomalous_real)
        .set(n + "_nonzero_imag", w.nonzero_imag);
  } catch (const OrthogonalPostSelection&) {
    r.set(n, std::string("undefined"))
        .set(n + "_imag", std::string("undefined"))
        .set(n + "_anomalous", false)
        .set(n + "_nonzero_imag", false);
  }
}

OutputRecord cmd_weak_values(const Options& o) {
  const MZConfig cfg = make_config(o);
  OutputRecord r;
  base_fields(r, cfg);
  weak_fields(r, "w3", cfg, &mz_weak_value_3);
  weak_fields(r, "w4", cfg, &mz_weak_value_4);
  const auto p = detection_probabilities(cfg);
  r.set("p3", p.p3).set("p4", p.p4);
  return r;
}

OutputRecord cmd_lg(const Options& o) {
  const MZConfig cfg = make_config(o);
  const auto closed = mz_lg_closed_form(cfg);
  const auto matrix = mz_lg_matrix(cfg);
  OutputRecord r;
  base_fields(r, cfg);
  for (std::size_t i = 0; i < 4; ++i)
    r.set("K" + std::to_string(kTwoTimeLabels[i]), closed.k[i]);
  double dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dev = std::max(dev, std::abs(closed.k[i] - matrix.k[i]));
  if (dev > kStructuralTol) throw InvariantError("closed-form and matrix K values disagree");
  r.set("violated", violated_value(closed.violated_index))
      .set("margin", closed.margin)
      .set("matrix_deviation", dev);
  return r;
}

std::vector<OutputRecord> sweep_records(const Options& o) {
  if (o.grid < 2) throw UsageError("--grid must be at least 2");
  if (!std::isfinite(o.min) || !std::isfinite(o.max) || o.min < -1.0 || o.max > 1.0) {
    throw UsageError("--min and --max must lie in [-1, 1]");
  }
  if (!(o.min < o.max)) throw UsageError("--min must be strictly less than --max");
  const auto grid = uniform_grid(o.grid, o.min, o.max);
  const auto rows = sweep_beta(grid);
  std::vector<OutputRecord> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    OutputRecord r;
    r.set("beta", row.beta).set("alpha", row.alpha);
    for (std::size_t i = 0; i < 4; ++i)
      r.set("K" + std::to_string(kTwoTimeLabels[i]), row.k[i]);
    r.set("w3", row.w3 ? FieldValue(*row.w3) : FieldValue(std::string("undefined")))
        .set("w4", row.w4 ? FieldValue(*row.w4) : FieldValue(std::string("undefined")))
        .set("p3", row.p3)
        .set("p4", row.p4)
        .set("violated", violated_value(row.violated_index));
    out.push_back(std::move(r));
  }
  return out;
}

OutputRecord cmd_quasiprob(const Options& o) {
  const MZConfig cfg = make_config(o);
  const auto t = mz_quasi(cfg);
  const auto nsit = nsit_check(input_state(cfg), path_observable(), output_observable(cfg.phi));
  const auto lg = lg_from_quasi(t);
  OutputRecord r;
  base_fields(r, cfg);
  r.set("q_pp", t.at(+1, +1))
      .set("q_pm", t.at(+1, -1))
      .set("q_mp", t.at(-1, +1))
      .set("q_mm", t.at(-1, -1))
      .set("sum", t.sum())
      .set("negativity", t.negativity)
      .set("nsit_residual_m2", nsit.residual_i)
      .set("nsit_residual_m3", nsit.residual_j)
      .set("violated", violated_value(lg.violated_index));
  return r;
}

OutputRecord cmd_mr_check(const Options& o) {
  if (!o.e2 || !o.e3 || !o.e23) throw UsageError("--e2, --e3 and --e23 are required");
  const CorrelationTriple t(*o.e2, *o.e3, *o.e23);
  const auto v = macrorealist_feasible(t);
  const auto oracle = feasibility_oracle(t);
  if (v.feasible != oracle.feasible || std::abs(v.margin - oracle.margin) > kStructuralTol) {
    throw InvariantError("moment and vertex routes disagree");
  }
  const auto candidate = mr_reading(t.e2(), t.e3(), t.e23());
  OutputRecord r;
  r.set("e2", t.e2()).set("e3", t.e3()).set("e23", t.e23());
  r.set("feasible", v.feasible).set("margin", v.margin);
  r.set("q_pp", candidate.at(+1, +1))
      .set("q_pm", candidate.at(+1, -1))
      .set("q_mp", candidate.at(-1, +1))
      .set("q_mm", candidate.at(-1, -1));
  return r;
}

OutputRecord cmd_simulate(const Options& o) {
  const MZConfig cfg = make_config(o);
  if (o.shots == 0) throw UsageError("--shots must be at least 1");
  const RunKind kind = parse_run_kind(o.kind);
  const auto est = lglab::run(RunSpec{cfg, o.shots, o.seed, kind, std::max(1u, o.threads)});
  OutputRecord r;
  base_fields(r, cfg);
  r.set("kind", std::string(to_string(kind)))
      .set("shots", static_cast<std::int64_t>(o.shots))
      .set("seed", std::to_string(o.seed))
      .set("rng", std::string(kRngAlgorithm) + "/v" + std::to_string(kRngVersion));
  for (std::size_t c = 0; c < est.outcomes.size(); ++c) {
    const auto& name = est.outcomes[c];
    r.set("count_" + name, static_cast<std::int64_t>(est.counts[c]))
        .set("estimate_" + name, est.estimates[c])
        .set("stderr_" + name, est.stderrs[c])
        .set("zero_count_upper_" + name,
             est.zero_count_upper_bound[c] ? FieldValue(*est.zero_count_upper_bound[c])
                                           : FieldValue(std::string("n/a")));
  }
  return r;
}

OutputRecord cmd_nsit(const Options& o) {
  const MZConfig cfg = make_config(o);
  if (o.shots == 0) throw UsageError("--shots must be at least 1");
  const auto gap = empirical_nsit(cfg, o.shots, o.seed, std::max(1u, o.threads));
  const auto residuals =
      nsit_check(input_state(cfg), path_observable(), output_observable(cfg.phi));
  OutputRecord r;
  base_fields(r, cfg);
  r.set("shots", static_cast<std::int64_t>(o.shots))
      .set("seed", std::to_string(o.seed))
      .set("gap_estimate", gap.gap_estimate)
      .set("gap_stderr", gap.gap_stderr)
      .set("gap_projective_exact", signaling_gap_projective(cfg))
      .set("quasi_nsit_residual", std::max(residuals.residual_i, residuals.residual_j));
  return r;
}

OutputRecord cmd_three_time(const Options& o) {
  if (!std::isfinite(o.theta)) throw UsageError("--theta must be finite");
  const auto spec = precession_spec(o.theta);
  const auto suite = three_time_suite(spec.state, spec.m1, spec.m2, spec.m3);
  OutputRecord r;
  r.set("theta", o.theta).set("K3", k3(spec));
  const char* pairs[] = {"12", "13", "23"};
  const char* cells[] = {"pp", "pm", "mp", "mm"};
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t c = 0; c < 4; ++c)
      r.set(std::string("q") + pairs[p] + "_" + cells[c], suite.entries[p * 4 + c]);
  r.set("weak_macrorealism", suite.weak_macrorealism);
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  try {
    o.seed = seed_from_env();
    if (auto path = find_config_path(args)) load_config(*path, args, o);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  CLI::App app{"lglab: interferometric Leggett-Garg and weak-value toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default flag values");

  auto add_mz = [&](CLI::App* sub) {
    sub->add_option("--beta", o.beta, "Amplitude on path psi2, |beta| <= 1");
    sub->add_option("--alpha", o.alpha, "Amplitude on path psi1 (default +sqrt(1-beta^2))");
    sub->add_option("--phi", o.phi, "Phase shifter setting in radians");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "Output file ('-' for stdout)");
    sub->add_option("--format", o.format, "csv or json");
  };

  auto* probabilities = app.add_subcommand("probabilities", "Output-port detection probabilities");
  add_mz(probabilities);
  add_output(probabilities);

  auto* weak = app.add_subcommand("weak-values", "Path weak values for both output ports");
  add_mz(weak);
  add_output(weak);

  auto* lg = app.add_subcommand("lg", "Two-time LG quantities K31..K34");
  add_mz(lg);
  add_output(lg);

  auto* sweep = app.add_subcommand("lgi-sweep", "Closed-form beta sweep of K31..K34");
  sweep->add_option("--grid", o.grid, "Number of grid points (>= 2)");
  sweep->add_option("--min", o.min, "Lowest beta");
  sweep->add_option("--max", o.max, "Highest beta");
  add_output(sweep);

  auto* fig2 = app.add_subcommand("reproduce-fig2", "lgi-sweep over 1001 points in [-1, 1]");
  add_output(fig2);

  auto* quasi_cmd = app.add_subcommand("quasiprob", "Quasiprobabilities of (M2, M3)");
  add_mz(quasi_cmd);
  add_output(quasi_cmd);

  auto* mr = app.add_subcommand("mr-check", "Macrorealist feasibility of a moment triple");
  mr->add_option("--e2", o.e2, "<M2>");
  mr->add_option("--e3", o.e3, "<M3>");
  mr->add_option("--e23", o.e23, "<M2 M3>");
  add_output(mr);

  auto* sim = app.add_subcommand("simulate", "Finite-shot run");
  add_mz(sim);
  sim->add_option("--shots", o.shots, "Number of shots");
  sim->add_option("--seed", o.seed, "RNG seed (default: LGLAB_SEED or 1)");
  sim->add_option("--kind", o.kind, "interference, path or sequential");
  sim->add_option("--threads", o.threads, "Sampling threads (does not change results)");
  add_output(sim);

  auto* nsit = app.add_subcommand("nsit", "Empirical signaling gap under projective intervention");
  add_mz(nsit);
  nsit->add_option("--shots", o.shots, "Number of shots per run");
  nsit->add_option("--seed", o.seed, "RNG seed (default: LGLAB_SEED or 1)");
  nsit->add_option("--threads", o.threads, "Sampling threads (does not change results)");
  add_output(nsit);

  auto* three = app.add_subcommand("three-time", "Qubit precession K3 and the twelve quasiprobabilities");
  three->add_option("--theta", o.theta, "Rotation angle between measurements");
  add_output(three);

  std::vector<std::string> argv_storage{"lglab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_msg, e_msg;
    const int code = app.exit(e, o_msg, e_msg);
    out << o_msg.str();
    err << e_msg.str();
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (fig2->parsed()) {
      o.grid = 1001;
      o.min = -1.0;
      o.max = 1.0;
      if (o.output.empty()) o.output = "fig2." + o.format;
    }
    Emitter emitter(o, out);
    if (probabilities->parsed()) {
      emitter.emit({cmd_probabilities(o)}, true);
    } else if (weak->parsed()) {
      emitter.emit({cmd_weak_values(o)}, true);
    } else if (lg->parsed()) {
      emitter.emit({cmd_lg(o)}, true);
    } else if (sweep->parsed() || fig2->parsed()) {
      if (o.output.empty()) throw UsageError("--output is required");
      emitter.emit(sweep_records(o), false);
    } else if (quasi_cmd->parsed()) {
      emitter.emit({cmd_quasiprob(o)}, true);
    } else if (mr->parsed()) {
      emitter.emit({cmd_mr_check(o)}, true);
    } else if (sim->parsed()) {
      emitter.emit({cmd_simulate(o)}, true);
    } else if (nsit->parsed()) {
      emitter.emit({cmd_nsit(o)}, true);
    } else if (three->parsed()) {
      emitter.emit({cmd_three_time(o)}, true);
    }
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kSuccess;
}

}  // namespace lglab::cli
