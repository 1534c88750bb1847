#pragma once

#include "acp/clone_detect.hpp"
#include "acp/metrics.hpp"
#include "acp/settings.hpp"
#include "acp/source_model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace acp {

/// Time on the caller-supplied logical clock, in seconds.
using Timestamp = std::int64_t;

/**
 * A paste of `fragment_text` whose first line sits at `paste_line` of
 * `file_path` (project-relative). The file content is expected to already
 * contain the pasted text.
 */
struct PasteEvent {
    std::string project_root;
    std::string file_path;
    int paste_line{0};
    std::string fragment_text;
    Timestamp timestamp{0};

    friend bool operator==(const PasteEvent&, const PasteEvent&) = default;
};

struct SubmetricOutcome {
    double value{0.0};
    double threshold{0.0};
    bool passed{false};
    bool required{false};

    friend bool operator==(const SubmetricOutcome&, const SubmetricOutcome&) = default;
};

/**
 * Evaluation trace of the detection rule.
 *
 * triggered = duplicates >= minimum AND every required submetric passed AND
 * (some enabled-but-not-required submetric passed OR there is none), and at
 * least one submetric must be enabled. A submetric passes when
 * value >= threshold.
 */
struct GateReport {
    std::map<SubmetricId, SubmetricOutcome> evaluated;
    bool required_all_passed{true};
    bool any_enabled_passed{false};
    bool has_optional{false};
    bool metrics_passed{false};
    std::size_t duplicate_method_count{0};
    int min_duplicate_methods{0};
    bool triggered{false};
    std::optional<std::string> reason;   ///< why the gate could not pass, if known

    friend bool operator==(const GateReport&, const GateReport&) = default;
};

/// Metric half of the gate. A missing threshold table yields a NotComputable report.
GateReport evaluate_gate(const MetricVector& vector, const ThresholdMap* thresholds, const FlagTable& flags);

/// Completes a metric report with the duplicate-count condition.
GateReport with_duplicates(GateReport report, std::size_t duplicate_method_count, int min_duplicate_methods);

enum class DropReason : std::uint8_t {
    InvalidFragment,
    NoEnclosingMethod,
    Edited,
    FileMissing,
    NotTriggered,
};

std::string_view to_string(DropReason reason) noexcept;

struct Recommendation {
    PasteEvent event;
    MethodId host;
    GateReport report;
    std::vector<CloneMatch> matches;
    std::string action{"extract-method"};
    Timestamp emitted_at{0};
};

struct Drop {
    PasteEvent event;
    DropReason reason{DropReason::Edited};
    std::string detail;
    Timestamp at{0};
    std::optional<GateReport> report;
    std::vector<CloneMatch> matches;
};

using TickEntry = std::variant<Recommendation, Drop>;

/// Everything computed for a paste evaluated at its due time.
struct PasteEvaluation {
    Fragment fragment;
    const MethodUnit* host{nullptr};
    std::vector<CloneMatch> matches;
    MetricVector vector;
    GateReport report;
};

struct EvaluationResult {
    std::optional<PasteEvaluation> evaluation;
    std::optional<DropReason> drop;
    std::string detail;
};

/**
 * Runs detection, metrics and the gate on a paste already present in the
 * indexed project. `distribution` may be empty (the gate then reports
 * NotComputable).
 */
EvaluationResult evaluate_paste(const PasteEvent& event, const ProjectIndex& index,
                                const ProjectDistribution& distribution, const Settings& settings);

struct PendingPaste {
    PasteEvent event;
    Timestamp due{0};
    std::uint64_t sequence{0};
};

/// Pending pastes of one session, keyed by paste site.
class PasteQueue {
public:
    /// Replaces any pending entry at the same file and line.
    void push(PasteEvent event, Timestamp due);

    /// Removes and returns entries with due <= now, ordered by (due, arrival).
    std::vector<PendingPaste> pop_due(Timestamp now);

    std::optional<Timestamp> next_due() const;
    std::size_t size() const noexcept { return pending_.size(); }
    std::vector<PendingPaste> entries() const;

private:
    std::map<std::pair<std::string, int>, PendingPaste> pending_;
    std::uint64_t next_sequence_{0};
};

/// Validates and queues a paste; returns the drop record when rejected.
std::optional<Drop> enqueue_paste(const PasteEvent& event, const ProjectIndex& index,
                                  const Settings& settings, PasteQueue& queue);

using SourceReader = std::function<std::optional<std::string>(const std::string& path)>;

/**
 * Processes every entry due at `now`.
 *
 * Each due paste is re-verified against the current file text (via
 * `read`), then evaluated against `index`, which must reflect that text.
 */
std::vector<TickEntry> tick(Timestamp now, const ProjectIndex& index, const ProjectDistribution& distribution,
                            const Settings& settings, const SourceReader& read, PasteQueue& queue);

/// True when the fragment's token sequence starts on `line` of `text`.
bool fragment_present_at(const Fragment& fragment, std::string_view text, int line);

} // namespace acp
