#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lglab/experiment.hpp"
#include "lglab/interferometer.hpp"
#include "lglab/lgi.hpp"
#include "lglab/mrcheck.hpp"
#include "lglab/quasiprob.hpp"
#include "lglab/weakval.hpp"

namespace py = pybind11;
using namespace lglab;

namespace {

MZConfig make_cfg(double beta, std::optional<double> alpha, double phi, const std::string& mode) {
  PropagationMode m;
  if (mode == "closed_form") {
    m = PropagationMode::closed_form;
  } else if (mode == "unitary") {
    m = PropagationMode::unitary;
  } else {
    throw std::invalid_argument("mode must be 'closed_form' or 'unitary'");
  }
  if (!alpha) return MZConfig::from_beta(beta, phi, m);
  MZConfig cfg{*alpha, beta, phi, m};
  cfg.validate();
  return cfg;
}

py::dict report_dict(const TwoTimeLGReport& r) {
  py::dict d;
  for (std::size_t i = 0; i < 4; ++i) d[py::str("K" + std::to_string(kTwoTimeLabels[i]))] = r.k[i];
  d["violated"] = r.violated_index ? py::object(py::int_(*r.violated_index)) : py::none();
  d["margin"] = r.margin;
  return d;
}

py::dict weak_dict(const WeakValueResult& w) {
  py::dict d;
  d["value"] = w.value;
  d["postselect_prob"] = w.postselect_prob;
  d["anomalous_real"] = w.anomalous_real;
  d["nonzero_imag"] = w.nonzero_imag;
  return d;
}

py::dict quasi_dict(const QuasiprobTable& t) {
  py::dict d;
  d["q_pp"] = t.at(+1, +1);
  d["q_pm"] = t.at(+1, -1);
  d["q_mp"] = t.at(-1, +1);
  d["q_mm"] = t.at(-1, -1);
  d["negativity"] = t.negativity;
  d["nsit_residual"] = t.nsit_residual;
  return d;
}

StateVector to_state(const std::vector<Complex>& v) { return StateVector(v); }

DichotomicObservable to_obs(const std::vector<Complex>& plus_state) {
  return DichotomicObservable::from_plus_state(StateVector(plus_state));
}

}  // namespace

PYBIND11_MODULE(_lglab, m) {
  m.doc() = "Mach-Zehnder Leggett-Garg, weak-value and quasiprobability toolkit";

  static py::exception<OrthogonalPostSelection> orthogonal(m, "OrthogonalPostSelection",
                                                           PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const OrthogonalPostSelection& e) {
      py::set_error(orthogonal, e.what());
    }
  });

  m.def(
      "detection_probabilities",
      [](double beta, std::optional<double> alpha, double phi, const std::string& mode) {
        const auto p = detection_probabilities(make_cfg(beta, alpha, phi, mode));
        return py::make_tuple(p.p3, p.p4);
      },
      py::arg("beta"), py::arg("alpha") = py::none(), py::arg("phi") = 0.0,
      py::arg("mode") = "closed_form", "(p3, p4) at the two output ports.");

  m.def(
      "propagate",
      [](double beta, std::optional<double> alpha, double phi, const std::string& mode) {
        return propagate(make_cfg(beta, alpha, phi, mode)).amps();
      },
      py::arg("beta"), py::arg("alpha") = py::none(), py::arg("phi") = 0.0,
      py::arg("mode") = "closed_form", "Output state in path coordinates.");

  m.def(
      "weak_values",
      [](double beta, std::optional<double> alpha, double phi) {
        const auto cfg = make_cfg(beta, alpha, phi, "closed_form");
        py::dict d;
        for (int port : {3, 4}) {
          try {
            d[py::str("w" + std::to_string(port))] =
                weak_dict(port == 3 ? mz_weak_value_3(cfg) : mz_weak_value_4(cfg));
          } catch (const OrthogonalPostSelection&) {
            d[py::str("w" + std::to_string(port))] = py::none();
          }
        }
        return d;
      },
      py::arg("beta"), py::arg("alpha") = py::none(), py::arg("phi") = 0.0,
      "Path weak values for both ports; None where the port is dark.");

  m.def(
      "weak_value",
      [](const std::vector<Complex>& a, const std::vector<Complex>& pre,
         const std::vector<Complex>& post) {
        const auto dim = pre.size();
        return weak_dict(weak_value(Operator(dim, a), to_state(pre), to_state(post)));
      },
      py::arg("observable"), py::arg("pre"), py::arg("post"),
      "Weak value of a Hermitian matrix (row-major, flattened).");

  m.def(
      "lg",
      [](double beta, std::optional<double> alpha, double phi) {
        return report_dict(mz_lg_matrix(make_cfg(beta, alpha, phi, "closed_form")));
      },
      py::arg("beta"), py::arg("alpha") = py::none(), py::arg("phi") = 0.0);

  m.def(
      "lg_closed_form",
      [](double beta, std::optional<double> alpha, double phi) {
        return report_dict(mz_lg_closed_form(make_cfg(beta, alpha, phi, "closed_form")));
      },
      py::arg("beta"), py::arg("alpha") = py::none(), py::arg("phi") = 0.0);

  m.def(
      "two_time_lg",
      [](const std::vector<Complex>& pre, const std::vector<Complex>& m2_plus,
         const std::vector<Complex>& m3_plus) {
        return report_dict(two_time_lg(to_state(pre), to_obs(m2_plus), to_obs(m3_plus)));
      },
      py::arg("pre"), py::arg("m2_plus_state"), py::arg("m3_plus_state"));

  m.def(
      "lgi_sweep",
      [](std::size_t grid, double lo, double hi) {
        py::list rows;
        for (const auto& r : sweep_beta(uniform_grid(grid, lo, hi))) {
          py::dict d;
          d["beta"] = r.beta;
          d["alpha"] = r.alpha;
          for (std::size_t i = 0; i < 4; ++i)
            d[py::str("K" + std::to_string(kTwoTimeLabels[i]))] = r.k[i];
          d["w3"] = r.w3 ? py::object(py::float_(*r.w3)) : py::none();
          d["w4"] = r.w4 ? py::object(py::float_(*r.w4)) : py::none();
          d["p3"] = r.p3;
          d["p4"] = r.p4;
          d["violated"] = r.violated_index ? py::object(py::int_(*r.violated_index)) : py::none();
          rows.append(d);
        }
        return rows;
      },
      py::arg("grid") = 1001, py::arg("min") = -1.0, py::arg("max") = 1.0);

  m.def("is_exceptional_beta", [](double b) { return is_exceptional_beta(b); });

  m.def(
      "quasiprob",
      [](double beta, std::optional<double> alpha, double phi) {
        return quasi_dict(mz_quasi(make_cfg(beta, alpha, phi, "closed_form")));
      },
      py::arg("beta"), py::arg("alpha") = py::none(), py::arg("phi") = 0.0);

  m.def(
      "quasi",
      [](const std::vector<Complex>& state, const std::vector<Complex>& mi_plus,
         const std::vector<Complex>& mj_plus) {
        return quasi_dict(quasi(to_state(state), to_obs(mi_plus), to_obs(mj_plus)));
      },
      py::arg("state"), py::arg("mi_plus_state"), py::arg("mj_plus_state"));

  m.def(
      "signaling_gap",
      [](double beta, std::optional<double> alpha, double phi) {
        return signaling_gap_projective(make_cfg(beta, alpha, phi, "closed_form"));
      },
      py::arg("beta"), py::arg("alpha") = py::none(), py::arg("phi") = 0.0);

  m.def(
      "mr_check",
      [](double e2, double e3, double e23) {
        const auto v = macrorealist_feasible(CorrelationTriple(e2, e3, e23));
        py::dict d;
        d["feasible"] = v.feasible;
        d["margin"] = v.margin;
        d["oracle_feasible"] = feasibility_oracle(CorrelationTriple(e2, e3, e23)).feasible;
        return d;
      },
      py::arg("e2"), py::arg("e3"), py::arg("e23"));

  m.def("k3", [](double theta) { return k3(precession_spec(theta)); }, py::arg("theta"),
        "K3 for the precessing qubit.");

  m.def(
      "three_time_suite",
      [](double theta) {
        const auto spec = precession_spec(theta);
        const auto s = three_time_suite(spec.state, spec.m1, spec.m2, spec.m3);
        py::dict d;
        d["q12"] = quasi_dict(s.q12);
        d["q13"] = quasi_dict(s.q13);
        d["q23"] = quasi_dict(s.q23);
        d["weak_macrorealism"] = s.weak_macrorealism;
        return d;
      },
      py::arg("theta"));

  m.def(
      "simulate",
      [](double beta, std::uint64_t shots, std::uint64_t seed, const std::string& kind,
         unsigned threads) {
        SampleEstimate est;
        {
          py::gil_scoped_release release;
          est = run(RunSpec{MZConfig::from_beta(beta), shots, seed, parse_run_kind(kind),
                            std::max(1u, threads)});
        }
        py::dict d;
        for (std::size_t i = 0; i < est.outcomes.size(); ++i) {
          py::dict o;
          o["count"] = est.counts[i];
          o["estimate"] = est.estimates[i];
          o["stderr"] = est.stderrs[i];
          o["zero_count_upper"] = est.zero_count_upper_bound[i]
                                      ? py::object(py::float_(*est.zero_count_upper_bound[i]))
                                      : py::none();
          d[py::str(est.outcomes[i])] = o;
        }
        return d;
      },
      py::arg("beta"), py::arg("shots"), py::arg("seed"), py::arg("kind") = "interference",
      py::arg("threads") = 1);

  m.def(
      "nsit",
      [](double beta, std::uint64_t shots, std::uint64_t seed, unsigned threads) {
        EmpiricalNsit g;
        {
          py::gil_scoped_release release;
          g = empirical_nsit(MZConfig::from_beta(beta), shots, seed, std::max(1u, threads));
        }
        return py::make_tuple(g.gap_estimate, g.gap_stderr);
      },
      py::arg("beta"), py::arg("shots"), py::arg("seed"), py::arg("threads") = 1,
      "(gap estimate, standard error) under a projective path measurement.");

  m.attr("__version__") = "0.1.0";
}
