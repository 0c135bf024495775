#include "vass_asym/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "vass_asym/errors.hpp"

namespace vass::sim {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::int64_t kCounterLimit = std::int64_t{1} << 62;

std::int64_t to_i64(const Integer& v, const std::string& what) {
  if (!v.fits_slong_p()) throw ValidationError(what + " does not fit into 64 bits");
  return v.get_si();
}

std::int64_t saturating_threshold(std::int64_t coefficient, unsigned power, std::uint64_t scale) {
  long double v = static_cast<long double>(coefficient);
  for (unsigned i = 0; i < power; ++i) v *= static_cast<long double>(scale);
  if (v >= static_cast<long double>(kCounterLimit)) return kCounterLimit;
  std::int64_t out = coefficient;
  for (unsigned i = 0; i < power; ++i) out *= static_cast<std::int64_t>(scale);
  return out;
}

const std::string& require_out(const VassMdp& m, std::size_t p, const std::string& id) {
  const auto t = m.transition_index(id);
  if (m.source(t) != p) {
    throw StrategyMismatch("transition '" + id + "' does not leave state '" + m.state(p).name + "'");
  }
  return id;
}

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix(state_);
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t n, std::uint64_t run) {
  return SplitMix64(mix(mix(mix(seed) ^ n) ^ run));
}

Strategy Strategy::from_md(const MdStrategy& s) {
  Strategy out;
  for (const auto& [p, t] : s.choice) out.distribution[p] = {{t, Rational(1)}};
  return out;
}

void validate_strategy(const VassMdp& m, const Strategy& s) {
  for (const auto& [name, _] : s.distribution) {
    if (s.guarded.count(name)) throw StrategyMismatch("state '" + name + "' has both a distribution and a guard");
  }
  auto check_state = [&](const std::string& name) {
    const auto p = m.find_state(name);
    if (!p) throw StrategyMismatch("strategy names unknown state '" + name + "'");
    if (m.is_prob(*p)) throw StrategyMismatch("strategy assigns a choice to probabilistic state '" + name + "'");
    return *p;
  };
  for (const auto& [name, dist] : s.distribution) {
    const auto p = check_state(name);
    if (dist.empty()) throw StrategyMismatch("empty distribution at '" + name + "'");
    Rational total = 0;
    for (const auto& [t, w] : dist) {
      require_out(m, p, t);
      if (w <= 0) throw StrategyMismatch("non-positive weight at '" + name + "'");
      total += w;
    }
    if (total != 1) throw StrategyMismatch("distribution at '" + name + "' does not sum to 1");
  }
  for (const auto& [name, g] : s.guarded) {
    const auto p = check_state(name);
    require_out(m, p, g.below);
    require_out(m, p, g.otherwise);
    if (g.counter >= m.dimension()) throw StrategyMismatch("guard on '" + name + "' names a missing counter");
    if (g.coefficient < 0) throw StrategyMismatch("guard on '" + name + "' has a negative coefficient");
  }
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    const auto& name = m.state(p).name;
    if (!m.is_prob(p) && !s.distribution.count(name) && !s.guarded.count(name)) {
      throw IncompleteStrategy("no choice for nondeterministic state '" + name + "'");
    }
  }
}

Strategy parse_strategy(std::string_view text, const VassMdp& m) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("strategy is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("states") || !doc["states"].is_object()) {
    throw SchemaError("strategy needs an object \"states\"");
  }
  Strategy s;
  for (const auto& [name, rule] : doc["states"].items()) {
    if (!rule.is_object() || rule.size() != 1) throw SchemaError("rule for '" + name + "' must have exactly one key");
    if (rule.contains("choose") && rule["choose"].is_string()) {
      s.distribution[name] = {{rule["choose"].get<std::string>(), Rational(1)}};
    } else if (rule.contains("distribution") && rule["distribution"].is_object()) {
      auto& dist = s.distribution[name];
      for (const auto& [t, w] : rule["distribution"].items()) {
        if (!w.is_string()) throw SchemaError("weights must be strings \"a/b\"");
        dist.emplace_back(t, parse_rational(w.get<std::string>()));
      }
    } else if (rule.contains("guard") && rule["guard"].is_object()) {
      const auto& g = rule["guard"];
      Guard out;
      try {
        const auto c = g.at("counter").get<std::int64_t>();
        if (c < 1) throw SchemaError("guard counters are 1-based");
        out.counter = static_cast<std::size_t>(c - 1);
        out.power = g.value("power", 1u);
        out.coefficient = g.value("coefficient", 1L);
        out.below = g.at("below").get<std::string>();
        out.otherwise = g.at("otherwise").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw SchemaError("malformed guard for '" + name + "': " + e.what());
      }
      s.guarded[name] = std::move(out);
    } else {
      throw SchemaError("rule for '" + name + "' must be choose, distribution or guard");
    }
  }
  // States without a real choice need not be listed.
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    const auto& name = m.state(p).name;
    if (!m.is_prob(p) && m.out(p).size() == 1 && !s.distribution.count(name) && !s.guarded.count(name)) {
      s.distribution[name] = {{m.transition(m.out(p)[0]).id, Rational(1)}};
    }
  }
  validate_strategy(m, s);
  return s;
}

nlohmann::json strategy_to_json(const Strategy& s) {
  nlohmann::json states = nlohmann::json::object();
  for (const auto& [name, dist] : s.distribution) {
    if (dist.size() == 1 && dist[0].second == 1) {
      states[name] = {{"choose", dist[0].first}};
      continue;
    }
    nlohmann::json d = nlohmann::json::object();
    for (const auto& [t, w] : dist) d[t] = to_string(w);
    states[name] = {{"distribution", d}};
  }
  for (const auto& [name, g] : s.guarded) {
    states[name] = {{"guard",
                     {{"counter", g.counter + 1},
                      {"power", g.power},
                      {"coefficient", g.coefficient.get_si()},
                      {"below", g.below},
                      {"otherwise", g.otherwise}}}};
  }
  return {{"states", states}};
}

Simulator::Simulator(const VassMdp& m, const Strategy& s) : m_(&m), d_(m.dimension()) {
  validate_strategy(m, s);
  for (std::size_t t = 0; t < m.num_transitions(); ++t) {
    for (const auto& u : m.transition(t).update) {
      const auto v = to_i64(u, "update of '" + m.transition(t).id + "'");
      updates_.push_back(v);
      max_abs_update_ = std::max(max_abs_update_, v < 0 ? -v : v);
    }
    targets_.push_back(static_cast<std::uint32_t>(m.target(t)));
  }
  auto add_branches = [&](Node& node, const std::vector<std::pair<std::size_t, Rational>>& dist) {
    node.first_branch = static_cast<std::uint32_t>(branches_.size());
    node.num_branches = static_cast<std::uint32_t>(dist.size());
    Rational cum = 0;
    for (const auto& [t, w] : dist) {
      cum += w;
      branches_.push_back({scaled_threshold_2_64(cum), static_cast<std::uint32_t>(t)});
    }
  };
  nodes_.resize(m.num_states());
  for (std::size_t p = 0; p < m.num_states(); ++p) {
    auto& node = nodes_[p];
    const auto& name = m.state(p).name;
    std::vector<std::pair<std::size_t, Rational>> dist;
    if (m.is_prob(p)) {
      for (auto t : m.out(p)) dist.emplace_back(t, m.weight(t));
    } else if (auto g = s.guarded.find(name); g != s.guarded.end()) {
      node.guarded = true;
      node.guard_counter = static_cast<std::uint32_t>(g->second.counter);
      node.guard_power = g->second.power;
      node.guard_coefficient = to_i64(g->second.coefficient, "guard coefficient");
      node.guard_below = static_cast<std::uint32_t>(m.transition_index(g->second.below));
      node.guard_otherwise = static_cast<std::uint32_t>(m.transition_index(g->second.otherwise));
      continue;
    } else {
      for (const auto& [id, w] : s.distribution.at(name)) dist.emplace_back(m.transition_index(id), w);
    }
    add_branches(node, dist);
  }
  const auto mecs = graph::mec_decomposition(m);
  mec_of_state_.assign(m.num_states(), -1);
  for (std::size_t i = 0; i < mecs.size(); ++i) {
    for (auto p : mecs[i].states) mec_of_state_[p] = static_cast<std::int64_t>(i);
  }
}

TrajectoryStats Simulator::run(std::size_t init_state, const std::vector<std::int64_t>& init, std::uint64_t scale,
                               std::uint64_t max_steps, SplitMix64& rng) const {
  if (init.size() != d_) throw ValidationError("initial vector has the wrong dimension");
  if (init_state >= nodes_.size()) throw ValidationError("initial state out of range");
  if (max_steps == 0) throw ValidationError("max_steps must be at least 1");
  std::int64_t top = 0;
  for (auto v : init) {
    if (v < 0) throw ValidationError("initial configuration is terminal");
    top = std::max(top, v);
  }
  if (max_abs_update_ > 0 &&
      (static_cast<long double>(max_steps) * max_abs_update_ + top >= static_cast<long double>(kCounterLimit))) {
    throw ValidationError("counter range of the run exceeds 62 bits");
  }

  std::vector<std::int64_t> guard_limit(nodes_.size(), 0);
  for (std::size_t p = 0; p < nodes_.size(); ++p) {
    if (nodes_[p].guarded) {
      guard_limit[p] = saturating_threshold(nodes_[p].guard_coefficient, nodes_[p].guard_power, scale);
    }
  }

  TrajectoryStats st;
  st.max_counter = init;
  st.transition_counts.assign(targets_.size(), 0);
  std::vector<std::int64_t> v = init;
  std::size_t p = init_state;
  std::int64_t last_mec = mec_of_state_[p];
  if (last_mec >= 0) st.mec_sequence.push_back(static_cast<std::size_t>(last_mec));

  bool terminated = false;
  while (st.steps < max_steps) {
    const Node& node = nodes_[p];
    std::uint32_t t;
    if (node.guarded) {
      t = v[node.guard_counter] < guard_limit[p] ? node.guard_below : node.guard_otherwise;
    } else if (node.num_branches == 1) {
      t = branches_[node.first_branch].transition;
    } else {
      const std::uint64_t r = rng.next();
      const Branch* b = &branches_[node.first_branch];
      const Branch* last = b + node.num_branches - 1;
      while (b != last && r >= b->threshold) ++b;
      t = b->transition;
    }
    const std::int64_t* u = &updates_[t * d_];
    bool negative = false;
    for (std::size_t i = 0; i < d_; ++i) {
      v[i] += u[i];
      negative |= v[i] < 0;
    }
    ++st.steps;
    ++st.transition_counts[t];
    p = targets_[t];
    if (negative) {
      terminated = true;
      break;
    }
    for (std::size_t i = 0; i < d_; ++i) st.max_counter[i] = std::max(st.max_counter[i], v[i]);
    const auto mec = mec_of_state_[p];
    if (mec >= 0 && mec != last_mec) {
      st.mec_sequence.push_back(static_cast<std::size_t>(mec));
      last_mec = mec;
    }
  }
  st.truncated = !terminated;
  return st;
}

TrajectoryStats simulate_one(const VassMdp& m, const Strategy& s, const Configuration& init,
                             std::uint64_t max_steps, std::uint64_t seed) {
  const Simulator sim(m, s);
  std::vector<std::int64_t> v;
  for (const auto& c : init.counters) v.push_back(to_i64(c, "initial counter"));
  auto rng = SplitMix64::substream(seed, 0, 0);
  std::uint64_t scale = 0;
  for (auto x : v) scale = std::max<std::uint64_t>(scale, static_cast<std::uint64_t>(x));
  return sim.run(m.state_index(init.state), v, scale, max_steps, rng);
}

std::size_t thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("VASS_ASYM_THREADS")) {
    char* end = nullptr;
    const auto v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::vector<TrajectoryStats>> run_batch(const VassMdp& m, const Strategy& s,
                                                     const std::vector<std::uint64_t>& n_list, std::size_t runs,
                                                     std::uint64_t cap, std::uint64_t seed,
                                                     const std::string& init_state, std::size_t threads) {
  if (runs == 0) throw ValidationError("runs must be at least 1");
  const Simulator sim(m, s);
  const std::size_t p0 = init_state.empty() ? 0 : m.state_index(init_state);
  std::vector<std::vector<TrajectoryStats>> out(n_list.size(), std::vector<TrajectoryStats>(runs));
  const std::size_t total = n_list.size() * runs;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t i = job / runs, r = job % runs;
      const auto n = n_list[i];
      if (n > static_cast<std::uint64_t>(kCounterLimit)) throw ValidationError("n out of range");
      auto rng = SplitMix64::substream(seed, n, r);
      out[i][r] = sim.run(p0, std::vector<std::int64_t>(m.dimension(), static_cast<std::int64_t>(n)), n, cap, rng);
    }
  };
  const std::size_t k = std::min(thread_count(threads), total);
  if (k <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(k);
  for (std::size_t w = 0; w < k; ++w) {
    pool.emplace_back([&, w] {
      try {
        worker();
      } catch (...) {
        errors[w] = std::current_exception();
        next = total;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::int64_t measure_value(const VassMdp& m, const ComplexityMeasure& f, const TrajectoryStats& t) {
  switch (f.kind) {
    case ComplexityMeasure::Kind::Termination: return static_cast<std::int64_t>(t.steps);
    case ComplexityMeasure::Kind::Counter: return t.max_counter.at(f.counter);
    case ComplexityMeasure::Kind::TransitionCount:
      return static_cast<std::int64_t>(t.transition_counts.at(m.transition_index(f.transition)));
  }
  return 0;
}

namespace {

// Truncated runs are censored: their value is only a lower bound, so they sort
// above every terminated run and count as exceeding every threshold below the cap.
MeasureSummary summarize(const VassMdp& m, const ComplexityMeasure& f, const std::vector<const TrajectoryStats*>& ts,
                         std::uint64_t n, std::uint64_t cap, const std::vector<double>& theta) {
  MeasureSummary out;
  out.measure = to_string(f);
  out.tail.assign(theta.size(), 0);
  if (ts.empty()) return out;
  std::vector<std::int64_t> exact;
  std::size_t censored = 0;
  long double sum = 0;
  for (const auto* t : ts) {
    const auto v = measure_value(m, f, *t);
    if (t->truncated) {
      ++censored;
      sum += f.kind == ComplexityMeasure::Kind::Termination ? static_cast<long double>(cap) : v;
    } else {
      exact.push_back(v);
      sum += v;
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const long double thr = std::pow(static_cast<long double>(n), static_cast<long double>(theta[i]));
      if (t->truncated || static_cast<long double>(v) >= thr) out.tail[i] += 1;
    }
  }
  for (auto& x : out.tail) x /= static_cast<double>(ts.size());
  out.mean_capped = static_cast<double>(sum / ts.size());
  std::sort(exact.begin(), exact.end());
  const std::size_t k = ts.size();
  const std::size_t hi = k / 2, lo = (k - 1) / 2;
  if (hi < exact.size()) out.median = (static_cast<double>(exact[lo]) + static_cast<double>(exact[hi])) / 2;
  (void)censored;
  return out;
}

std::string sequence_key(const std::vector<graph::Mec>& mecs, const std::vector<std::size_t>& seq) {
  std::string key;
  for (auto i : seq) {
    if (!key.empty()) key += ",";
    key += mecs[i].id;
  }
  return key;
}

std::map<std::string, double> fit_medians(const std::vector<SizeReport>& sizes, bool conditioned) {
  std::map<std::string, std::vector<std::pair<double, double>>> pts;
  for (const auto& s : sizes) {
    const auto* ms = &s.measures;
    if (conditioned) {
      if (!s.conditioned) continue;
      ms = &s.conditioned->measures;
    }
    for (const auto& mm : *ms) {
      if (mm.median && *mm.median > 0) pts[mm.measure].emplace_back(static_cast<double>(s.n), *mm.median);
    }
  }
  std::map<std::string, double> out;
  for (const auto& [k, p] : pts) {
    try {
      out[k] = fit_exponent(p);
    } catch (const DegenerateInput&) {
    }
  }
  return out;
}

}  // namespace

std::uint64_t truncation_cap(const std::vector<std::uint64_t>& n_list, const std::vector<double>& theta,
                             std::uint64_t min_cap) {
  long double biggest = 1;
  for (auto n : n_list) {
    for (auto th : theta) biggest = std::max(biggest, std::ceil(std::pow(static_cast<long double>(n), th)));
  }
  if (biggest * 4 > static_cast<long double>(std::uint64_t{1} << 62)) throw ValidationError("truncation cap too large");
  return std::max<std::uint64_t>(min_cap, static_cast<std::uint64_t>(biggest) * 4);
}

SimReport estimate_tails(const VassMdp& m, const Strategy& s, const std::vector<std::uint64_t>& n_list,
                         std::size_t runs, const std::vector<double>& theta, std::uint64_t seed,
                         const TailOptions& opt) {
  for (const auto& f : opt.measures) validate_measure(f, m);
  std::uint64_t cap = truncation_cap(n_list, theta, opt.min_cap);
  for (auto h : opt.horizons) cap = std::max(cap, h);
  const auto batch = run_batch(m, s, n_list, runs, cap, seed, opt.init_state, opt.threads);
  return summarize_batch(m, batch, n_list, cap, theta, seed, opt);
}

SimReport summarize_batch(const VassMdp& m, const std::vector<std::vector<TrajectoryStats>>& batch,
                          const std::vector<std::uint64_t>& n_list, std::uint64_t cap,
                          const std::vector<double>& theta, std::uint64_t seed, const TailOptions& opt) {
  const auto mecs = graph::mec_decomposition(m);
  SimReport rep;
  rep.seed = seed;
  rep.theta = theta;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    SizeReport sr;
    sr.n = n_list[i];
    sr.cap = cap;
    sr.runs = batch[i].size();
    std::vector<const TrajectoryStats*> all, cond;
    for (const auto& t : batch[i]) {
      all.push_back(&t);
      (t.truncated ? sr.truncated : sr.terminated) += 1;
      sr.mec_sequences[sequence_key(mecs, t.mec_sequence)] += 1;
      if (opt.condition_on && t.mec_sequence == *opt.condition_on) cond.push_back(&t);
    }
    for (const auto& f : opt.measures) sr.measures.push_back(summarize(m, f, all, sr.n, cap, theta));
    for (auto h : opt.horizons) {
      std::size_t k = 0;
      for (const auto* t : all) k += !t->truncated && t->steps <= h;
      sr.terminated_within.emplace_back(h, static_cast<double>(k) / static_cast<double>(all.size()));
    }
    if (opt.condition_on) {
      Conditioning c;
      c.mecs = *opt.condition_on;
      c.samples = cond.size();
      c.low_sample = cond.size() < 100;
      for (const auto& f : opt.measures) c.measures.push_back(summarize(m, f, cond, sr.n, cap, theta));
      sr.conditioned = std::move(c);
    }
    rep.sizes.push_back(std::move(sr));
  }
  rep.exponent = fit_medians(rep.sizes, false);
  if (opt.condition_on) rep.conditioned_exponent = fit_medians(rep.sizes, true);
  return rep;
}

double fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DegenerateInput("at least 3 points are needed");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0) || !(points[i].second > 0)) throw DegenerateInput("points must be positive");
    if (i > 0 && !(points[i].first > points[i - 1].first)) throw DegenerateInput("n must be strictly increasing");
  }
  const double k = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / k, my = sy / k;
  double sxy = 0, sxx = 0;
  for (const auto& [x, y] : points) {
    sxy += (std::log(x) - mx) * (std::log(y) - my);
    sxx += (std::log(x) - mx) * (std::log(x) - mx);
  }
  return sxy / sxx;
}

Strategy multicycle_strategy_from_x(const VassMdp& m, const graph::Mec& mec, const dichotomy::SystemIWitness& w) {
  Strategy s = Strategy::from_md(default_md_strategy(m));
  bool any = false;
  for (auto p : mec.states) {
    Integer total = 0;
    std::vector<std::pair<std::string, Integer>> outs;
    for (auto t : m.out(p)) {
      if (!mec.contains_transition(t)) continue;
      const auto it = w.x.find(m.transition(t).id);
      if (it == w.x.end() || it->second <= 0) continue;
      outs.emplace_back(m.transition(t).id, it->second);
      total += it->second;
    }
    if (total == 0) continue;
    any = true;
    if (m.is_prob(p)) continue;
    auto& dist = s.distribution[m.state(p).name];
    dist.clear();
    for (auto& [id, x] : outs) {
      Rational r(x, total);
      r.canonicalize();
      dist.emplace_back(id, r);
    }
  }
  if (!any) throw ZeroWitness("the multicycle is zero on " + mec.id);
  return s;
}

Strategy witness_strategy(const VassMdp& m) {
  Strategy s = Strategy::from_md(default_md_strategy(m));
  for (const auto& mec : graph::mec_decomposition(m)) {
    const auto sub = graph::mec_submodel(m, mec);
    const auto sol = dichotomy::compute_maximal_solutions(sub);
    try {
      const auto local = multicycle_strategy_from_x(m, mec, sol.multicycle);
      for (auto p : mec.states) {
        const auto& name = m.state(p).name;
        if (!m.is_prob(p)) s.distribution[name] = local.distribution.at(name);
      }
    } catch (const ZeroWitness&) {
    }
  }
  return s;
}

namespace {

nlohmann::json summary_json(const MeasureSummary& ms, const std::vector<double>& theta) {
  nlohmann::json tail = nlohmann::json::array();
  for (std::size_t i = 0; i < theta.size(); ++i) tail.push_back({{"theta", theta[i]}, {"frequency", ms.tail[i]}});
  return {{"measure", ms.measure},
          {"median", ms.median ? nlohmann::json(*ms.median) : nlohmann::json(nullptr)},
          {"mean_capped", ms.mean_capped},
          {"tail", tail}};
}

}  // namespace

nlohmann::json to_json(const SimReport& r, const VassMdp& m) {
  const auto mecs = graph::mec_decomposition(m);
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& s : r.sizes) {
    nlohmann::json measures = nlohmann::json::array();
    for (const auto& ms : s.measures) measures.push_back(summary_json(ms, r.theta));
    nlohmann::json j = {{"n", s.n},
                        {"cap", s.cap},
                        {"runs", s.runs},
                        {"terminated", s.terminated},
                        {"truncated", s.truncated},
                        {"measures", measures},
                        {"mec_sequences", s.mec_sequences}};
    nlohmann::json within = nlohmann::json::array();
    for (const auto& [h, f] : s.terminated_within) within.push_back({{"steps", h}, {"fraction", f}});
    j["terminated_within"] = within;
    if (s.conditioned) {
      nlohmann::json cm = nlohmann::json::array();
      for (const auto& ms : s.conditioned->measures) cm.push_back(summary_json(ms, r.theta));
      std::vector<std::string> ids;
      for (auto i : s.conditioned->mecs) ids.push_back(mecs.at(i).id);
      j["conditioned"] = {{"type", ids},
                          {"samples", s.conditioned->samples},
                          {"low_sample", s.conditioned->low_sample},
                          {"measures", cm}};
    }
    sizes.push_back(std::move(j));
  }
  nlohmann::json out = {{"seed", r.seed}, {"theta", r.theta}, {"sizes", sizes}, {"exponent", r.exponent}};
  if (!r.conditioned_exponent.empty()) out["conditioned_exponent"] = r.conditioned_exponent;
  return out;
}

std::string to_csv(const VassMdp& m, const std::vector<std::uint64_t>& n_list,
                   const std::vector<std::vector<TrajectoryStats>>& runs, const std::vector<ComplexityMeasure>& measures) {
  std::ostringstream out;
  out << "n,run,measure,value,truncated\n";
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    for (std::size_t r = 0; r < runs[i].size(); ++r) {
      for (const auto& f : measures) {
        out << n_list[i] << ',' << r << ',' << to_string(f) << ',' << measure_value(m, f, runs[i][r]) << ','
            << (runs[i][r].truncated ? 1 : 0) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace vass::sim
