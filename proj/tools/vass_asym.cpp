// vass-asym: command line front end. Exit codes: 0 ok, 1 validation error,
// 2 outside the supported scope, 3 internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vass_asym/errors.hpp"
#include "vass_asym/model.hpp"
#include "vass_asym/onedim.hpp"
#include "vass_asym/report.hpp"
#include "vass_asym/sim.hpp"

using namespace vass;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const json& j, bool text) {
  if (text) {
    std::cout << report::render_text(j);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

template <class T>
std::vector<T> split_list(const std::string& s, T (*conv)(const std::string&)) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ValidationError("empty item in list '" + s + "'");
    out.push_back(conv(item));
  }
  if (out.empty()) throw ValidationError("empty list");
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || s[0] == '-') throw ValidationError("not a nonnegative integer: '" + s + "'");
  return v;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw ValidationError("not a number: '" + s + "'");
  return v;
}

std::string identity(const std::string& s) { return s; }

struct OutputFlags {
  bool json = false;
  bool text = false;
};

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
  auto* j = cmd->add_flag("--json", f.json, "JSON output (default)");
  auto* t = cmd->add_flag("--text", f.text, "plain text projection of the JSON");
  j->excludes(t);
}

int run(int argc, char** argv) {
  CLI::App app{"Asymptotic complexity analysis of VASS Markov decision processes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(report::kToolVersion));

  std::string model_path;
  OutputFlags out;

  auto* analyze = app.add_subcommand("analyze", "classify L, C[c] and T[t] per type");
  std::vector<std::string> measures;
  std::size_t max_len = report::kDefaultMaxTypeLength;
  analyze->add_option("model", model_path, "model JSON")->required();
  analyze->add_option("--measure", measures, "L, C:<counter> or T:<transition>; repeatable (default: all)");
  analyze->add_option("--max-type-len", max_len, "longest MEC sequence enumerated");
  add_output_flags(analyze, out);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo runs under a strategy");
  std::string strategy = "witness", n_list = "8,16,32", theta_list = "1.5,2", csv_path, init_state, condition,
              horizons;
  std::size_t runs = 1000;
  std::uint64_t seed = 1, min_cap = 0;
  std::vector<std::string> sim_measures;
  simulate->add_option("model", model_path, "model JSON")->required();
  simulate->add_option("--strategy", strategy, "strategy file, or 'witness' for the multicycle strategy");
  simulate->add_option("--n", n_list, "comma separated initial sizes");
  simulate->add_option("--runs", runs, "runs per size");
  simulate->add_option("--seed", seed, "base seed");
  simulate->add_option("--theta", theta_list, "comma separated exponents for tail frequencies");
  simulate->add_option("--csv", csv_path, "write per-run values to this file");
  simulate->add_option("--init-state", init_state, "initial state (default: least name)");
  simulate->add_option("--measure", sim_measures, "measures to summarize; repeatable (default: L)");
  simulate->add_option("--condition", condition, "condition on a realized MEC sequence, e.g. M1,M4");
  simulate->add_option("--horizon", horizons, "comma separated step bounds for termination fractions");
  simulate->add_option("--min-cap", min_cap, "lower bound on the truncation cap");
  add_output_flags(simulate, out);

  auto* mecs = app.add_subcommand("mecs", "maximal end components");
  mecs->add_option("model", model_path, "model JSON")->required();
  add_output_flags(mecs, out);

  auto* types = app.add_subcommand("types", "types with weights");
  types->add_option("model", model_path, "model JSON")->required();
  types->add_option("--max-type-len", max_len, "longest MEC sequence enumerated");
  add_output_flags(types, out);

  auto* energy = app.add_subcommand("energy", "energy safety of a 1-dimensional model");
  std::uint64_t bound = onedim::kDefaultStrategyBound;
  energy->add_option("model", model_path, "model JSON")->required();
  energy->add_option("--bound", bound, "largest number of MD strategies enumerated");
  add_output_flags(energy, out);

  auto* gen = app.add_subcommand("gen-hamiltonian", "1-dimensional model from an undirected graph");
  std::string graph_path, vertex;
  gen->add_option("graph", graph_path, "graph JSON {vertices, edges}")->required();
  gen->add_option("vertex", vertex, "distinguished vertex")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (*gen) {
    const auto g = onedim::parse_graph(read_file(graph_path));
    std::cout << serialize_vass(onedim::hamiltonian_reduction(g, vertex)) << "\n";
    return 0;
  }

  const auto m = parse_vass(read_file(model_path));
  if (*analyze) {
    std::vector<ComplexityMeasure> fs;
    for (const auto& s : measures) fs.push_back(parse_measure(s, m));
    if (fs.empty()) fs = report::all_measures(m);
    emit(report::analyze(m, fs, max_len), out.text);
  } else if (*mecs) {
    emit(report::mecs_report(m), out.text);
  } else if (*types) {
    emit(report::types_report(m, max_len), out.text);
  } else if (*energy) {
    emit(report::energy_report(m, bound), out.text);
  } else if (*simulate) {
    const auto s = strategy == "witness" ? sim::witness_strategy(m) : sim::parse_strategy(read_file(strategy), m);
    const auto ns = split_list<std::uint64_t>(n_list, to_u64);
    const auto theta = split_list<double>(theta_list, to_double);
    sim::TailOptions opt;
    opt.init_state = init_state;
    opt.min_cap = min_cap;
    if (!sim_measures.empty()) {
      opt.measures.clear();
      for (const auto& x : sim_measures) opt.measures.push_back(parse_measure(x, m));
    }
    if (!horizons.empty()) opt.horizons = split_list<std::uint64_t>(horizons, to_u64);
    if (!condition.empty()) {
      const auto all = graph::mec_decomposition(m);
      std::vector<std::size_t> seq;
      for (const auto& id : split_list<std::string>(condition, identity)) {
        const auto it = std::find_if(all.begin(), all.end(), [&](const auto& x) { return x.id == id; });
        if (it == all.end()) throw ValidationError("unknown MEC '" + id + "'");
        seq.push_back(static_cast<std::size_t>(it - all.begin()));
      }
      opt.condition_on = seq;
    }
    for (const auto& f : opt.measures) validate_measure(f, m);
    std::uint64_t cap = sim::truncation_cap(ns, theta, opt.min_cap);
    for (auto h : opt.horizons) cap = std::max(cap, h);
    const auto batch = sim::run_batch(m, s, ns, runs, cap, seed, init_state);
    const auto rep = sim::summarize_batch(m, batch, ns, cap, theta, seed, opt);
    json j = {{"tool", report::kToolName},
              {"version", report::kToolVersion},
              {"model_digest", report::model_digest(m)},
              {"strategy", sim::strategy_to_json(s)},
              {"init_state", init_state.empty() ? m.state(0).name : init_state},
              {"report", sim::to_json(rep, m)}};
    if (!csv_path.empty()) {
      std::ofstream csv(csv_path, std::ios::binary);
      if (!csv) throw ValidationError("cannot write '" + csv_path + "'");
      csv << sim::to_csv(m, ns, batch, opt.measures);
    }
    emit(j, out.text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ScopeFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
