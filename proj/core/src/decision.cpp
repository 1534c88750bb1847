#include "acp/decision.hpp"

#include "acp/error.hpp"

#include <algorithm>

namespace acp {

std::string_view to_string(DropReason reason) noexcept
{
    switch (reason) {
    case DropReason::InvalidFragment: return "InvalidFragment";
    case DropReason::NoEnclosingMethod: return "NoEnclosingMethod";
    case DropReason::Edited: return "Edited";
    case DropReason::FileMissing: return "FileMissing";
    case DropReason::NotTriggered: return "NotTriggered";
    }
    return "Unknown";
}

GateReport evaluate_gate(const MetricVector& vector, const ThresholdMap* thresholds, const FlagTable& flags)
{
    GateReport report;
    bool any_enabled = false;
    for (SubmetricId id : all_submetrics()) {
        const SubmetricFlags& f = flags[static_cast<std::size_t>(id)];
        if (!f.enabled && !f.required) {
            continue;
        }
        any_enabled = true;
        if (thresholds == nullptr || thresholds->count(id) == 0) {
            report.evaluated.clear();
            report.required_all_passed = false;
            report.reason = "NotComputable: no threshold for " + std::string(submetric_name(id));
            return report;
        }
        SubmetricOutcome o;
        o.value = vector[id];
        o.threshold = thresholds->at(id);
        o.passed = o.value >= o.threshold;
        o.required = f.required;
        if (o.required) {
            report.required_all_passed = report.required_all_passed && o.passed;
        } else {
            report.has_optional = true;
            report.any_enabled_passed = report.any_enabled_passed || o.passed;
        }
        report.evaluated.emplace(id, o);
    }
    if (!any_enabled) {
        report.reason = "no submetric enabled";
        return report;
    }
    report.metrics_passed = report.required_all_passed && (report.any_enabled_passed || !report.has_optional);
    return report;
}

GateReport with_duplicates(GateReport report, std::size_t duplicate_method_count, int min_duplicate_methods)
{
    report.duplicate_method_count = duplicate_method_count;
    report.min_duplicate_methods = min_duplicate_methods;
    const bool enough = duplicate_method_count >= static_cast<std::size_t>(std::max(min_duplicate_methods, 0));
    report.triggered = enough && report.metrics_passed;
    if (!enough && !report.reason) {
        report.reason = "only " + std::to_string(duplicate_method_count) + " duplicate method(s), " +
                        std::to_string(min_duplicate_methods) + " required";
    } else if (!report.triggered && !report.reason) {
        report.reason = report.required_all_passed ? "no enabled submetric reached its threshold"
                                                   : "a required submetric is below its threshold";
    }
    return report;
}

bool fragment_present_at(const Fragment& fragment, std::string_view text, int line)
{
    std::vector<Token> tokens;
    try {
        tokens = tokenize(text);
    } catch (const Error&) {
        return false;
    }
    const auto needle = token_texts(fragment.tokens);
    for (std::size_t start : find_occurrences(tokens, needle)) {
        if (tokens[start].line == line) {
            return true;
        }
    }
    return false;
}

EvaluationResult evaluate_paste(const PasteEvent& event, const ProjectIndex& index,
                                const ProjectDistribution& distribution, const Settings& settings)
{
    EvaluationResult result;
    Fragment fragment = validate_fragment(event.fragment_text);
    if (!fragment.valid) {
        result.drop = DropReason::InvalidFragment;
        result.detail = fragment.invalid_reason;
        return result;
    }
    const MethodUnit* host = index.enclosing_method(event.file_path, event.paste_line);
    if (host == nullptr) {
        result.drop = DropReason::NoEnclosingMethod;
        result.detail = event.file_path + ":" + std::to_string(event.paste_line) + " is not inside a method body";
        return result;
    }
    const auto needle = token_texts(fragment.tokens);
    const auto hits = find_occurrences(host->body_tokens, needle);
    const bool at_site = std::any_of(hits.begin(), hits.end(), [&](std::size_t h) {
        return host->body_tokens[h].line == event.paste_line;
    });
    if (!at_site) {
        result.drop = DropReason::Edited;
        result.detail = "fragment tokens no longer start at " + event.file_path + ":" + std::to_string(event.paste_line);
        return result;
    }
    fragment.paste_site = PasteSite{event.file_path, event.paste_line, host->id};

    std::vector<const MethodUnit*> scope;
    if (settings.search_scope == SearchScope::File) {
        for (const auto& m : index.file(event.file_path)->methods) {
            scope.push_back(&m);
        }
    } else {
        scope = index.methods();
    }

    PasteEvaluation ev;
    ev.host = host;
    ev.matches = find_duplicates(fragment, scope, settings.near_match_threshold);
    ev.vector = compute_metric_vector(fragment, *host, settings.keywords);

    std::optional<ThresholdMap> thresholds;
    if (!distribution.empty()) {
        thresholds = thresholds_for(distribution, settings.sensitivity);
    }
    ev.report = with_duplicates(evaluate_gate(ev.vector, thresholds ? &*thresholds : nullptr, settings.flags),
                                ev.matches.size(), settings.min_duplicate_methods);
    ev.fragment = std::move(fragment);
    result.evaluation = std::move(ev);
    return result;
}

void PasteQueue::push(PasteEvent event, Timestamp due)
{
    auto key = std::make_pair(event.file_path, event.paste_line);
    pending_[key] = PendingPaste{std::move(event), due, next_sequence_++};
}

std::vector<PendingPaste> PasteQueue::pop_due(Timestamp now)
{
    std::vector<PendingPaste> due;
    for (auto it = pending_.begin(); it != pending_.end();) {
        if (it->second.due <= now) {
            due.push_back(std::move(it->second));
            it = pending_.erase(it);
        } else {
            ++it;
        }
    }
    std::sort(due.begin(), due.end(), [](const PendingPaste& a, const PendingPaste& b) {
        return a.due != b.due ? a.due < b.due : a.sequence < b.sequence;
    });
    return due;
}

std::optional<Timestamp> PasteQueue::next_due() const
{
    std::optional<Timestamp> best;
    for (const auto& [key, p] : pending_) {
        if (!best || p.due < *best) {
            best = p.due;
        }
    }
    return best;
}

std::vector<PendingPaste> PasteQueue::entries() const
{
    std::vector<PendingPaste> out;
    for (const auto& [key, p] : pending_) {
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const PendingPaste& a, const PendingPaste& b) {
        return a.due != b.due ? a.due < b.due : a.sequence < b.sequence;
    });
    return out;
}

std::optional<Drop> enqueue_paste(const PasteEvent& event, const ProjectIndex& index,
                                  const Settings& settings, PasteQueue& queue)
{
    const Fragment fragment = validate_fragment(event.fragment_text);
    if (!fragment.valid) {
        return Drop{event, DropReason::InvalidFragment, fragment.invalid_reason, event.timestamp, std::nullopt, {}};
    }
    if (index.enclosing_method(event.file_path, event.paste_line) == nullptr) {
        return Drop{event, DropReason::NoEnclosingMethod,
                    event.file_path + ":" + std::to_string(event.paste_line) + " is not inside a method body",
                    event.timestamp, std::nullopt, {}};
    }
    queue.push(event, event.timestamp + settings.delay_seconds);
    return std::nullopt;
}

std::vector<TickEntry> tick(Timestamp now, const ProjectIndex& index, const ProjectDistribution& distribution,
                            const Settings& settings, const SourceReader& read, PasteQueue& queue)
{
    std::vector<TickEntry> out;
    for (PendingPaste& p : queue.pop_due(now)) {
        const auto text = read(p.event.file_path);
        if (!text) {
            out.emplace_back(Drop{p.event, DropReason::FileMissing, p.event.file_path + " no longer exists", now,
                                  std::nullopt, {}});
            continue;
        }
        const Fragment fragment = validate_fragment(p.event.fragment_text);
        if (!fragment_present_at(fragment, normalize_newlines(*text), p.event.paste_line)) {
            out.emplace_back(Drop{p.event, DropReason::Edited, "pasted tokens changed before the delay elapsed",
                                  now, std::nullopt, {}});
            continue;
        }
        EvaluationResult r = evaluate_paste(p.event, index, distribution, settings);
        if (r.drop) {
            out.emplace_back(Drop{p.event, *r.drop, r.detail, now, std::nullopt, {}});
            continue;
        }
        PasteEvaluation& ev = *r.evaluation;
        if (!ev.report.triggered) {
            Drop d{p.event, DropReason::NotTriggered, ev.report.reason.value_or(""), now, ev.report, ev.matches};
            out.emplace_back(std::move(d));
            continue;
        }
        Recommendation rec;
        rec.event = p.event;
        rec.host = ev.host->id;
        rec.report = std::move(ev.report);
        rec.matches = std::move(ev.matches);
        rec.emitted_at = now;
        out.emplace_back(std::move(rec));
    }
    return out;
}

} // namespace acp
