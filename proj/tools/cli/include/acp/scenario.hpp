#pragma once

#include "acp/decision.hpp"

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace acp {

struct ScenarioProject {
    std::string name;                          ///< root as written in the scenario
    std::filesystem::path root;
    std::optional<std::filesystem::path> config;
};

enum class ScenarioEventType { Paste, Edit };

struct ScenarioEvent {
    ScenarioEventType type{ScenarioEventType::Paste};
    std::string project;
    std::string file;
    int line{0};
    std::string text;                          ///< fragment for a paste, new content for an edit
    bool deleted{false};
    Timestamp t{0};
};

/**
 * A deterministic replay: projects, time-ordered events and a final clock.
 *
 * Relative paths are resolved against the scenario file's directory.
 */
struct Scenario {
    std::vector<ScenarioProject> projects;
    std::vector<ScenarioEvent> events;
    Timestamp until{0};
};

/// Throws Error(ScenarioSyntax) or Error(FileMissing).
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir);

enum class SimulationMode { Sequential, Interleaved, Parallel };

struct ProjectLog {
    std::string project;
    std::vector<nlohmann::json> entries;
    std::size_t recommendations{0};
    std::vector<std::string> warnings;
};

/// Replays the scenario; one log per project in declaration order.
std::vector<ProjectLog> simulate(const Scenario& scenario, SimulationMode mode = SimulationMode::Sequential);

nlohmann::json to_json(const std::vector<ProjectLog>& logs);

} // namespace acp
