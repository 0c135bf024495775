#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "vass_asym/graph.hpp"
#include "vass_asym/model.hpp"

namespace vass::report {

inline constexpr const char* kToolName = "vass-asym";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::size_t kDefaultMaxTypeLength = 4;

/// "fnv1a64:<16 hex digits>" over the canonical serialization.
std::string model_digest(const VassMdp& m);

/// Every measure of the model: L, C[c] for each counter, T[t] for each transition.
std::vector<ComplexityMeasure> all_measures(const VassMdp& m);

nlohmann::json mecs_report(const VassMdp& m);

/// Types with weights and, per MEC step, the reachability certificate.
nlohmann::json types_report(const VassMdp& m, std::size_t max_type_len);

/// Dispatches to the one-dimensional classification for d = 1 and to the
/// counter pipeline otherwise; the latter throws NotDagLike on non-DAG-like
/// models. The result carries an exactness attestation produced by
/// verify::verify_report.
nlohmann::json analyze(const VassMdp& m, const std::vector<ComplexityMeasure>& measures,
                       std::size_t max_type_len);

nlohmann::json energy_report(const VassMdp& m, std::uint64_t bound);

/// Indented key/value rendering of any report; carries exactly the JSON data.
std::string render_text(const nlohmann::json& j);

}  // namespace vass::report
