#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vass_asym/dichotomy.hpp"
#include "vass_asym/graph.hpp"
#include "vass_asym/model.hpp"

namespace vass::sim {

/// SplitMix64 used as a counter-based generator: the substream of a
/// trajectory starts from mix(mix(mix(seed) ^ n) ^ run) and then advances by
/// the golden-ratio increment, one 64-bit draw per random choice.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t n, std::uint64_t run);
  std::uint64_t next();
  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t state_;
};

/// Choice at a nondeterministic state that looks at one counter: `below` while
/// counter < coefficient * n^power, `otherwise` from then on. n is the scale
/// of the initial configuration.
struct Guard {
  std::size_t counter = 0;
  unsigned power = 1;
  Integer coefficient = 1;
  std::string below;
  std::string otherwise;
};

/// Markovian strategy. Every nondeterministic state has exactly one of a
/// distribution (an MD choice is a one-point distribution) or a guard.
struct Strategy {
  std::map<std::string, std::vector<std::pair<std::string, Rational>>> distribution;
  std::map<std::string, Guard> guarded;

  static Strategy from_md(const MdStrategy& s);
};

/// Throws IncompleteStrategy, StrategyMismatch, UnknownTransition.
void validate_strategy(const VassMdp& m, const Strategy& s);

/// {"states": {name: {"choose": id} | {"distribution": {id: "a/b"}} |
///  {"guard": {"counter": c, "power": k, "coefficient": a, "below": id, "otherwise": id}}}}
/// with 1-based counters. Nondeterministic states with a single outgoing
/// transition may be omitted.
Strategy parse_strategy(std::string_view text, const VassMdp& m);
nlohmann::json strategy_to_json(const Strategy& s);

struct TrajectoryStats {
  std::uint64_t steps = 0;
  bool truncated = false;                      // steps == max_steps without termination
  std::vector<std::int64_t> max_counter;       // over configurations strictly before termination
  std::vector<std::uint64_t> transition_counts;  // by transition index
  std::vector<std::size_t> mec_sequence;       // MECs in order of first entry, repeats collapsed

  std::optional<std::uint64_t> term_steps() const {
    return truncated ? std::nullopt : std::optional<std::uint64_t>(steps);
  }
  friend bool operator==(const TrajectoryStats&, const TrajectoryStats&) = default;
};

/// Model and strategy lowered to flat arrays. Branch probabilities become
/// cumulative thresholds floor(P * 2^64) compared against one uniform 64-bit
/// draw, so each step is biased by less than 2^-64 per branch.
class Simulator {
 public:
  Simulator(const VassMdp& m, const Strategy& s);

  /// `scale` is the n used by guards.
  TrajectoryStats run(std::size_t init_state, const std::vector<std::int64_t>& init, std::uint64_t scale,
                      std::uint64_t max_steps, SplitMix64& rng) const;

  const VassMdp& model() const { return *m_; }

 private:
  struct Branch {
    std::uint64_t threshold;  // take this branch if draw < threshold; the last one is taken otherwise
    std::uint32_t transition;
  };
  struct Node {
    std::uint32_t first_branch = 0;
    std::uint32_t num_branches = 0;
    bool guarded = false;
    std::uint32_t guard_counter = 0;
    unsigned guard_power = 0;
    std::int64_t guard_coefficient = 0;
    std::uint32_t guard_below = 0, guard_otherwise = 0;
  };
  const VassMdp* m_;
  std::size_t d_;
  std::vector<Node> nodes_;
  std::vector<Branch> branches_;
  std::vector<std::int64_t> updates_;  // row-major, d per transition
  std::vector<std::uint32_t> targets_;
  std::vector<std::int64_t> mec_of_state_;  // -1 outside MECs
  std::int64_t max_abs_update_ = 0;
};

TrajectoryStats simulate_one(const VassMdp& m, const Strategy& s, const Configuration& init,
                             std::uint64_t max_steps, std::uint64_t seed);

struct MeasureSummary {
  std::string measure;  // textual ComplexityMeasure
  std::optional<double> median;  // nullopt when at least half the runs are censored by the cap
  double mean_capped = 0;        // censored runs contribute the cap
  std::vector<double> tail;      // P[F >= n^theta], aligned with theta list
};

struct Conditioning {
  std::vector<std::size_t> mecs;
  std::size_t samples = 0;
  bool low_sample = false;  // fewer than 100 runs realized the sequence
  std::vector<MeasureSummary> measures;
};

struct SizeReport {
  std::uint64_t n = 0;
  std::uint64_t cap = 0;
  std::size_t runs = 0;
  std::size_t terminated = 0;
  std::size_t truncated = 0;
  std::vector<MeasureSummary> measures;
  std::vector<std::pair<std::uint64_t, double>> terminated_within;  // (h, fraction with L <= h)
  std::map<std::string, std::size_t> mec_sequences;  // "M1,M2" -> count
  std::optional<Conditioning> conditioned;
};

struct SimReport {
  std::uint64_t seed = 0;
  std::vector<double> theta;
  std::vector<SizeReport> sizes;
  /// Slope of log median against log n per measure, when defined on >= 3 sizes.
  std::map<std::string, double> exponent;
  std::map<std::string, double> conditioned_exponent;
};

struct TailOptions {
  std::string init_state;  // defaults to the least state name
  std::vector<ComplexityMeasure> measures{ComplexityMeasure::termination()};
  std::uint64_t min_cap = 0;   // cap is max(min_cap, 4 * ceil(max n^theta)), at least 1
  std::optional<std::vector<std::size_t>> condition_on;  // MEC indices of a type
  std::size_t threads = 0;     // 0: VASS_ASYM_THREADS or hardware concurrency
  std::vector<std::uint64_t> horizons;  // step bounds for terminated_within; the cap covers them
};

/// Runs `runs` trajectories for each n from the configuration (init_state, n*1).
SimReport estimate_tails(const VassMdp& m, const Strategy& s, const std::vector<std::uint64_t>& n_list,
                         std::size_t runs, const std::vector<double>& theta, std::uint64_t seed,
                         const TailOptions& opt = {});

/// max(min_cap, 4 * ceil(max n^theta)). Throws ValidationError past 2^62.
/// estimate_tails also raises it to the largest horizon.
std::uint64_t truncation_cap(const std::vector<std::uint64_t>& n_list, const std::vector<double>& theta,
                             std::uint64_t min_cap = 0);

/// Aggregation step of estimate_tails over trajectories from run_batch.
SimReport summarize_batch(const VassMdp& m, const std::vector<std::vector<TrajectoryStats>>& batch,
                          const std::vector<std::uint64_t>& n_list, std::uint64_t cap,
                          const std::vector<double>& theta, std::uint64_t seed, const TailOptions& opt = {});

/// The raw trajectories behind estimate_tails, indexed [n][run].
std::vector<std::vector<TrajectoryStats>> run_batch(const VassMdp& m, const Strategy& s,
                                                     const std::vector<std::uint64_t>& n_list, std::size_t runs,
                                                     std::uint64_t cap, std::uint64_t seed,
                                                     const std::string& init_state, std::size_t threads = 0);

/// Worker count: explicit value, else VASS_ASYM_THREADS, else hardware concurrency.
std::size_t thread_count(std::size_t requested = 0);

/// Value of a measure on one trajectory (counters as the running maximum).
std::int64_t measure_value(const VassMdp& m, const ComplexityMeasure& f, const TrajectoryStats& t);

/// Least-squares slope of log y against log x. Throws DegenerateInput.
double fit_exponent(const std::vector<std::pair<double, double>>& points);

/// sigma(p)(t) = x(t) / sum of x over Out(p), on nondeterministic states of
/// the MEC with positive outflow; other nondeterministic states take their
/// least transition. Throws ZeroWitness.
Strategy multicycle_strategy_from_x(const VassMdp& m, const graph::Mec& mec, const dichotomy::SystemIWitness& w);

/// Combines the multicycle strategies of the maximal (I)-witness of every MEC.
Strategy witness_strategy(const VassMdp& m);

nlohmann::json to_json(const SimReport& r, const VassMdp& m);

/// Rows "n,run,measure,value" for every trajectory and measure.
std::string to_csv(const VassMdp& m, const std::vector<std::uint64_t>& n_list,
                   const std::vector<std::vector<TrajectoryStats>>& runs, const std::vector<ComplexityMeasure>& measures);

}  // namespace vass::sim
