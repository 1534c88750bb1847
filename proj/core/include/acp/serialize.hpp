#pragma once

#include "acp/decision.hpp"
#include "acp/metrics.hpp"
#include "acp/refactor.hpp"
#include "acp/settings.hpp"

#include <nlohmann/json.hpp>

namespace acp {

/// The detection rule in words, printed with every report.
inline constexpr std::string_view kGateRule =
    "triggered iff duplicateMethodCount >= minDuplicateMethods and every required submetric passes and "
    "(some enabled non-required submetric passes or none is enabled without being required); "
    "a submetric passes iff value >= threshold; no enabled submetric means not triggered";

nlohmann::json to_json(const GateReport& report);
nlohmann::json to_json(const CloneMatch& match);
nlohmann::json to_json(const PasteEvent& event);
nlohmann::json to_json(const TickEntry& entry);
nlohmann::json to_json(const Settings& settings);
nlohmann::json to_json(const ThresholdMap& thresholds);
nlohmann::json to_json(const DataFlowSummary& summary);
nlohmann::json to_json(const ExtractionPlan& plan);

/// min / median / max per submetric.
nlohmann::json distribution_summary(const ProjectDistribution& distribution);

/// Compact, sorted-key, LF-terminated serialization.
std::string dump(const nlohmann::json& value);

} // namespace acp
