#include "acp/serialize.hpp"

namespace acp {

using nlohmann::json;

json to_json(const GateReport& report)
{
    json submetrics = json::object();
    for (const auto& [id, o] : report.evaluated) {
        submetrics[std::string(submetric_name(id))] = {
            {"value", o.value}, {"threshold", o.threshold}, {"passed", o.passed}, {"required", o.required}};
    }
    json j = {
        {"triggered", report.triggered},
        {"duplicateMethodCount", report.duplicate_method_count},
        {"minDuplicateMethods", report.min_duplicate_methods},
        {"requiredAllPassed", report.required_all_passed},
        {"anyEnabledPassed", report.any_enabled_passed},
        {"hasOptional", report.has_optional},
        {"metricsPassed", report.metrics_passed},
        {"rule", kGateRule},
        {"submetrics", submetrics},
    };
    if (report.reason) {
        j["reason"] = *report.reason;
    }
    return j;
}

json to_json(const CloneMatch& match)
{
    json j = {
        {"method", match.method_id.str()},
        {"similarity", match.similarity},
        {"kind", to_string(match.kind)},
    };
    if (match.span) {
        j["span"] = {{"startLine", match.span->start_line}, {"endLine", match.span->end_line}};
    }
    return j;
}

json to_json(const PasteEvent& event)
{
    return {{"file", event.file_path}, {"line", event.paste_line}, {"t", event.timestamp}};
}

json to_json(const TickEntry& entry)
{
    if (const auto* rec = std::get_if<Recommendation>(&entry)) {
        json matches = json::array();
        for (const CloneMatch& m : rec->matches) {
            matches.push_back(to_json(m));
        }
        return {{"type", "recommendation"},
                {"at", rec->emitted_at},
                {"event", to_json(rec->event)},
                {"host", rec->host.str()},
                {"action", rec->action},
                {"report", to_json(rec->report)},
                {"matches", matches}};
    }
    const Drop& drop = std::get<Drop>(entry);
    json j = {{"type", "dropped"},
              {"at", drop.at},
              {"event", to_json(drop.event)},
              {"reason", to_string(drop.reason)},
              {"detail", drop.detail}};
    if (drop.report) {
        j["report"] = to_json(*drop.report);
        json matches = json::array();
        for (const CloneMatch& m : drop.matches) {
            matches.push_back(to_json(m));
        }
        j["matches"] = matches;
    }
    return j;
}

json to_json(const Settings& settings)
{
    json sensitivity = json::object();
    for (MetricCategory c : {MetricCategory::Keyword, MetricCategory::Coupling, MetricCategory::Complexity,
                             MetricCategory::Size}) {
        sensitivity[std::string(to_string(c))] = settings.sensitivity[c];
    }
    json submetrics = json::object();
    for (SubmetricId id : all_submetrics()) {
        const SubmetricFlags& f = settings.flag(id);
        submetrics[std::string(submetric_name(id))] = {{"enabled", f.enabled}, {"required", f.required}};
    }
    json keywords = json::array();
    for (const std::string& k : settings.keywords.words()) {
        keywords.push_back(k);
    }
    return {{"minDuplicateMethods", settings.min_duplicate_methods},
            {"delaySeconds", settings.delay_seconds},
            {"nearMatchThreshold", settings.near_match_threshold},
            {"searchScope", to_string(settings.search_scope)},
            {"sensitivity", sensitivity},
            {"submetrics", submetrics},
            {"keywords", keywords},
            {"ignore", settings.ignore}};
}

json to_json(const ThresholdMap& thresholds)
{
    json j = json::object();
    for (const auto& [id, value] : thresholds) {
        j[std::string(submetric_name(id))] = value;
    }
    return j;
}

namespace {

json variables(const std::vector<Variable>& vars)
{
    json out = json::array();
    for (const Variable& v : vars) {
        out.push_back({{"name", v.name}, {"type", v.type}});
    }
    return out;
}

} // namespace

json to_json(const DataFlowSummary& summary)
{
    return {{"inputs", variables(summary.inputs)},
            {"outputs", variables(summary.outputs)},
            {"localsToDeclare", variables(summary.locals_to_declare)},
            {"illegalFlow", summary.illegal_flow},
            {"feasible", summary.feasible()}};
}

json to_json(const ExtractionPlan& plan)
{
    json sites = json::array();
    for (const ExtractionSite& s : plan.target_sites) {
        sites.push_back({{"method", s.method.str()},
                         {"startLine", s.span.start_line},
                         {"endLine", s.span.end_line},
                         {"call", instantiate_call(plan, s.call_arguments)}});
    }
    return {{"methodName", plan.method_name},
            {"signature", plan.signature},
            {"returnType", plan.return_type},
            {"static", plan.is_static},
            {"callTemplate", plan.call_template},
            {"body", plan.body_text},
            {"insertion", {{"file", plan.insertion_file}, {"afterLine", plan.insertion_line}}},
            {"sites", sites}};
}

json distribution_summary(const ProjectDistribution& distribution)
{
    json out = json::object();
    for (SubmetricId id : all_submetrics()) {
        const auto& s = distribution.sample(id);
        if (s.empty()) {
            continue;
        }
        out[std::string(submetric_name(id))] = {
            {"min", s.front()}, {"median", percentile_threshold(s, 50)}, {"max", s.back()}};
    }
    return out;
}

std::string dump(const json& value)
{
    return value.dump(2) + "\n";
}

} // namespace acp
