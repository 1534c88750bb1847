#pragma once

#include "acp/decision.hpp"
#include "acp/metrics.hpp"
#include "acp/settings.hpp"
#include "acp/source_model.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace acp {

/**
 * Matches a '/'-separated relative path against a glob.
 *
 * `**` spans any number of whole directories (including none), `*` and `?`
 * stay within one path segment.
 */
bool glob_match(std::string_view pattern, std::string_view path);

/// Name of the per-project settings file looked up in a project root.
inline constexpr std::string_view kConfigFileName = ".anticopypaster.json";

/// Canonical form of a root path used to key sessions.
std::string canonical_root(const std::filesystem::path& root);

/**
 * One open project: settings, method index, distributions and the paste queue.
 *
 * Not internally synchronized; calls on one session must be serialized.
 */
class ProjectSession {
public:
    /**
     * Indexes every `.java` file under `root` that no ignore glob matches.
     * Files that fail to lex or index are skipped with a warning.
     * Throws Error(MissingRoot), Error(FileMissing) for an absent explicit
     * config, and settings errors from load_settings.
     */
    static std::unique_ptr<ProjectSession> open(const std::filesystem::path& root,
                                                const std::optional<std::filesystem::path>& config = std::nullopt);

    const std::string& root() const noexcept { return root_; }
    const Settings& settings() const noexcept { return settings_; }
    const ProjectIndex& index() const noexcept { return *index_; }
    std::shared_ptr<const ProjectIndex> snapshot() const noexcept { return index_; }
    const ProjectDistribution& distribution() const noexcept { return distribution_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }
    PasteQueue& queue() noexcept { return queue_; }
    const PasteQueue& queue() const noexcept { return queue_; }

    /// Replaces the settings and recomputes the distributions.
    void set_settings(Settings settings);

    bool is_ignored(const std::string& relative_path) const;

    /// Current text of a project file: the in-memory overlay if any, else disk.
    std::optional<std::string> read(const std::string& relative_path) const;

    /// Overrides a file's content in memory (nullopt marks it deleted) without reindexing.
    void set_overlay(const std::string& relative_path, std::optional<std::string> content);

    /// Reindexes only the given files and rebuilds the distributions.
    void refresh_index(const std::vector<std::string>& changed_paths);

    std::optional<Drop> enqueue(const PasteEvent& event);
    std::vector<TickEntry> tick(Timestamp now);

    /// Evaluates a paste as if it were already due.
    EvaluationResult evaluate(const PasteEvent& event) const;

private:
    ProjectSession() = default;

    void index_one(const std::string& relative_path, std::map<std::string, std::shared_ptr<const FileIndex>>& files);
    void rebuild();

    std::string root_;
    std::filesystem::path root_path_;
    Settings settings_;
    std::map<std::string, std::shared_ptr<const FileIndex>> files_;
    std::map<std::string, std::vector<MetricVector>> vectors_;
    std::shared_ptr<const ProjectIndex> index_{std::make_shared<ProjectIndex>()};
    ProjectDistribution distribution_;
    std::map<std::string, std::optional<std::string>> overlay_;
    PasteQueue queue_;
    std::vector<std::string> warnings_;
};

/// Sessions keyed by canonical root path.
class Workspace {
public:
    ProjectSession& open_project(const std::filesystem::path& root,
                                 const std::optional<std::filesystem::path>& config = std::nullopt);

    /// Throws Error(UnknownProject) when no session has this root.
    ProjectSession& route(const std::string& project_root);
    ProjectSession& route_event(const PasteEvent& event) { return route(event.project_root); }

    std::vector<std::string> roots() const;

private:
    std::map<std::string, std::unique_ptr<ProjectSession>> sessions_;
};

/// Reads a whole file; nullopt if it cannot be opened.
std::optional<std::string> read_file(const std::filesystem::path& path);

} // namespace acp
