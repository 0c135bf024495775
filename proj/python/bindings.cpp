#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "vass_asym/errors.hpp"
#include "vass_asym/graph.hpp"
#include "vass_asym/model.hpp"
#include "vass_asym/onedim.hpp"
#include "vass_asym/report.hpp"
#include "vass_asym/sim.hpp"
#include "vass_asym/verify.hpp"

namespace py = pybind11;
using namespace vass;

namespace {

std::vector<ComplexityMeasure> measures_of(const VassMdp& m, const std::vector<std::string>& names) {
  std::vector<ComplexityMeasure> out;
  for (const auto& s : names) out.push_back(parse_measure(s, m));
  return out.empty() ? report::all_measures(m) : out;
}

std::string analyze(const std::string& model, const std::vector<std::string>& measures, std::size_t max_type_len) {
  const auto m = parse_vass(model);
  const auto fs = measures_of(m, measures);
  py::gil_scoped_release release;
  return report::analyze(m, fs, max_type_len).dump();
}

std::string simulate(const std::string& model, const std::optional<std::string>& strategy,
                     const std::vector<std::uint64_t>& n, std::size_t runs, std::uint64_t seed,
                     const std::vector<double>& theta, const std::string& init_state,
                     const std::vector<std::string>& measures, const std::vector<std::string>& condition,
                     const std::vector<std::uint64_t>& horizons, std::uint64_t min_cap, std::size_t threads) {
  const auto m = parse_vass(model);
  const auto s = strategy ? sim::parse_strategy(*strategy, m) : sim::witness_strategy(m);
  sim::TailOptions opt;
  opt.init_state = init_state;
  opt.min_cap = min_cap;
  opt.threads = threads;
  opt.horizons = horizons;
  if (!measures.empty()) {
    opt.measures.clear();
    for (const auto& x : measures) opt.measures.push_back(parse_measure(x, m));
  }
  if (!condition.empty()) {
    const auto mecs = graph::mec_decomposition(m);
    std::vector<std::size_t> seq;
    for (const auto& id : condition) {
      const auto it = std::find_if(mecs.begin(), mecs.end(), [&](const auto& x) { return x.id == id; });
      if (it == mecs.end()) throw ValidationError("unknown MEC '" + id + "'");
      seq.push_back(static_cast<std::size_t>(it - mecs.begin()));
    }
    opt.condition_on = seq;
  }
  sim::SimReport rep;
  {
    py::gil_scoped_release release;
    rep = sim::estimate_tails(m, s, n, runs, theta, seed, opt);
  }
  nlohmann::json j = {{"tool", report::kToolName},
                      {"version", report::kToolVersion},
                      {"model_digest", report::model_digest(m)},
                      {"strategy", sim::strategy_to_json(s)},
                      {"init_state", init_state.empty() ? m.state(0).name : init_state},
                      {"report", sim::to_json(rep, m)}};
  return j.dump();
}

std::string verify_report(const std::string& model, const std::string& report) {
  const auto m = parse_vass(model);
  const auto out = verify::verify_report(m, nlohmann::json::parse(report));
  return nlohmann::json{{"checked", out.checked}, {"failures", out.failures}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Asymptotic complexity of VASS Markov decision processes";
  m.attr("__version__") = report::kToolVersion;

  static py::exception<ValidationFailure> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<ScopeFailure> scope(m, "ScopeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationFailure& e) {
      py::set_error(validation, e.what());
    } catch (const ScopeFailure& e) {
      py::set_error(scope, e.what());
    }
  });

  m.def("canonical_model", [](const std::string& model) { return serialize_vass(parse_vass(model)); },
        py::arg("model"));
  m.def("model_digest", [](const std::string& model) { return report::model_digest(parse_vass(model)); },
        py::arg("model"));
  m.def("analyze", &analyze, py::arg("model"), py::arg("measures") = std::vector<std::string>{},
        py::arg("max_type_len") = report::kDefaultMaxTypeLength);
  m.def("mecs", [](const std::string& model) { return report::mecs_report(parse_vass(model)).dump(); },
        py::arg("model"));
  m.def("types",
        [](const std::string& model, std::size_t max_type_len) {
          return report::types_report(parse_vass(model), max_type_len).dump();
        },
        py::arg("model"), py::arg("max_type_len") = report::kDefaultMaxTypeLength);
  m.def("energy",
        [](const std::string& model, std::uint64_t bound) {
          return report::energy_report(parse_vass(model), bound).dump();
        },
        py::arg("model"), py::arg("bound") = onedim::kDefaultStrategyBound);
  m.def("simulate", &simulate, py::arg("model"), py::arg("strategy") = std::nullopt,
        py::arg("n") = std::vector<std::uint64_t>{8, 16, 32}, py::arg("runs") = 1000, py::arg("seed") = 1,
        py::arg("theta") = std::vector<double>{1.5, 2.0}, py::arg("init_state") = "",
        py::arg("measures") = std::vector<std::string>{}, py::arg("condition") = std::vector<std::string>{},
        py::arg("horizons") = std::vector<std::uint64_t>{}, py::arg("min_cap") = 0, py::arg("threads") = 0);
  m.def("gen_hamiltonian",
        [](const std::string& graph, const std::string& vertex) {
          return serialize_vass(onedim::hamiltonian_reduction(onedim::parse_graph(graph), vertex));
        },
        py::arg("graph"), py::arg("vertex"));
  m.def("verify_report", &verify_report, py::arg("model"), py::arg("report"));
}
