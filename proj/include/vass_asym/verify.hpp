#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vass_asym/model.hpp"

// Independent checker for the witnesses embedded in reports. It reads only
// the model and the report JSON and re-substitutes every value into the
// constraints it claims to satisfy, using exact rationals. None of the
// solvers (LP, strategy iteration, MEC decomposition) are called.
namespace vass::verify {

struct Outcome {
  std::size_t checked = 0;            // individual witnesses examined
  std::vector<std::string> failures;  // empty iff everything re-substitutes

  bool ok() const { return failures.empty(); }
};

/// Claimed MECs are disjoint end components.
void check_mecs(const VassMdp& m, const nlohmann::json& mecs, Outcome& out);

/// Reachability certificate: values are a fixpoint dominating every choice,
/// attained by the strategy, and positive values reach the target.
void check_reach(const VassMdp& m, const nlohmann::json& mecs, const std::string& from, const std::string& to,
                 const nlohmann::json& cert, Outcome& out);

/// Solution of system (I) on the MEC under the given per-transition updates
/// (already zeroed or augmented by the caller); checks the claimed positive sets.
void check_multicycle(const VassMdp& m, const nlohmann::json& mec, const std::vector<std::vector<Integer>>& updates,
                      const nlohmann::json& x, Outcome& out);

/// Solution of system (II) on the MEC with the claimed strict rows.
void check_ranking(const VassMdp& m, const nlohmann::json& mec, const std::vector<std::vector<Integer>>& updates,
                   const nlohmann::json& r, Outcome& out);

/// MD strategy, bottom SCC, stationary distribution, drift and class.
void check_bscc_witness(const VassMdp& m, const nlohmann::json& w, Outcome& out);

/// Every witness of a mecs/types/analyze/energy report.
Outcome verify_report(const VassMdp& m, const nlohmann::json& report);

}  // namespace vass::verify
