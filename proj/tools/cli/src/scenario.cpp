#include "acp/scenario.hpp"

#include "acp/error.hpp"
#include "acp/serialize.hpp"
#include "acp/workspace.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;

namespace acp {

namespace {

[[noreturn]] void syntax(const std::string& msg)
{
    throw Error(ErrorCode::ScenarioSyntax, msg);
}

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where)
{
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            syntax("unknown key '" + key + "' in " + where);
        }
    }
}

std::string string_field(const json& obj, const char* key, const std::string& where)
{
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        syntax(where + " needs a string '" + key + "'");
    }
    return it->get<std::string>();
}

std::int64_t int_field(const json& obj, const char* key, const std::string& where)
{
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_number_integer()) {
        syntax(where + " needs an integer '" + key + "'");
    }
    return it->get<std::int64_t>();
}

std::string text_or_file(const json& obj, const char* inline_key, const char* file_key, const fs::path& base,
                         const std::string& where)
{
    const bool has_inline = obj.contains(inline_key);
    const bool has_file = obj.contains(file_key);
    if (has_inline == has_file) {
        syntax(where + " needs exactly one of '" + inline_key + "' and '" + file_key + "'");
    }
    if (has_inline) {
        return string_field(obj, inline_key, where);
    }
    const fs::path p = base / string_field(obj, file_key, where);
    auto text = read_file(p);
    if (!text) {
        throw Error(ErrorCode::FileMissing, p.string() + " cannot be read");
    }
    return *text;
}

} // namespace

Scenario parse_scenario(std::string_view json_text, const fs::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        syntax(e.what());
    }
    if (!doc.is_object()) {
        syntax("scenario must be a JSON object");
    }
    only_keys(doc, {"projects", "events", "until"}, "scenario");

    Scenario scenario;
    const auto projects = doc.find("projects");
    if (projects == doc.end() || !projects->is_array() || projects->empty()) {
        syntax("scenario needs a non-empty 'projects' array");
    }
    std::set<std::string> names;
    for (const json& p : *projects) {
        if (!p.is_object()) {
            syntax("project entries must be objects");
        }
        only_keys(p, {"root", "config"}, "project");
        ScenarioProject project;
        project.name = string_field(p, "root", "project");
        project.root = base_dir / project.name;
        if (p.contains("config")) {
            project.config = base_dir / string_field(p, "config", "project");
        }
        if (!names.insert(project.name).second) {
            syntax("project '" + project.name + "' declared twice");
        }
        scenario.projects.push_back(std::move(project));
    }

    const auto events = doc.find("events");
    if (events != doc.end()) {
        if (!events->is_array()) {
            syntax("'events' must be an array");
        }
        Timestamp last = std::numeric_limits<Timestamp>::min();
        for (const json& e : *events) {
            if (!e.is_object()) {
                syntax("event entries must be objects");
            }
            ScenarioEvent event;
            const std::string type = string_field(e, "type", "event");
            event.project = string_field(e, "project", "event");
            event.file = string_field(e, "file", "event");
            event.t = int_field(e, "t", "event");
            if (names.count(event.project) == 0) {
                syntax("event references undeclared project '" + event.project + "'");
            }
            if (event.t < last) {
                syntax("event timestamps must be non-decreasing");
            }
            last = event.t;
            if (type == "paste") {
                only_keys(e, {"type", "project", "file", "line", "fragment", "fragmentFile", "t"}, "paste event");
                event.type = ScenarioEventType::Paste;
                event.line = static_cast<int>(int_field(e, "line", "paste event"));
                event.text = text_or_file(e, "fragment", "fragmentFile", base_dir, "paste event");
            } else if (type == "edit") {
                only_keys(e, {"type", "project", "file", "content", "contentFile", "delete", "t"}, "edit event");
                event.type = ScenarioEventType::Edit;
                if (e.contains("delete")) {
                    if (!e["delete"].is_boolean() || e.contains("content") || e.contains("contentFile")) {
                        syntax("'delete' must be a boolean used without content");
                    }
                    event.deleted = e["delete"].get<bool>();
                }
                if (!event.deleted) {
                    event.text = text_or_file(e, "content", "contentFile", base_dir, "edit event");
                }
            } else {
                syntax("unknown event type '" + type + "'");
            }
            scenario.events.push_back(std::move(event));
        }
    }
    if (doc.contains("until")) {
        scenario.until = int_field(doc, "until", "scenario");
    } else {
        scenario.until = std::numeric_limits<Timestamp>::max();
    }
    return scenario;
}

Scenario load_scenario(const fs::path& path)
{
    auto text = read_file(path);
    if (!text) {
        throw Error(ErrorCode::FileMissing, path.string() + " cannot be read");
    }
    return parse_scenario(*text, path.parent_path());
}

namespace {

/// Drives one session through its events on the logical clock.
class SessionRunner {
public:
    SessionRunner(const ScenarioProject& project, ProjectLog& log)
        : session_(ProjectSession::open(project.root, project.config)), log_(log)
    {
        log_.project = project.name;
        log_.warnings = session_->warnings();
    }

    /// Ticks every due time before `t` (or up to and including it when `inclusive`).
    void advance_to(Timestamp t, bool inclusive)
    {
        while (auto due = session_->queue().next_due()) {
            if (*due > t || (*due == t && !inclusive)) {
                break;
            }
            for (const TickEntry& entry : session_->tick(*due)) {
                if (std::holds_alternative<Recommendation>(entry)) {
                    ++log_.recommendations;
                }
                log_.entries.push_back(to_json(entry));
            }
        }
    }

    void apply(const ScenarioEvent& e)
    {
        if (e.type == ScenarioEventType::Edit) {
            session_->set_overlay(e.file, e.deleted ? std::nullopt : std::optional<std::string>(e.text));
            session_->refresh_index({e.file});
            log_.entries.push_back({{"type", e.deleted ? "delete" : "edit"}, {"at", e.t}, {"file", e.file}});
            return;
        }
        const PasteEvent paste{log_.project, e.file, e.line, e.text, e.t};
        if (auto drop = session_->enqueue(paste)) {
            log_.entries.push_back(to_json(TickEntry(std::move(*drop))));
            return;
        }
        log_.entries.push_back({{"type", "queued"},
                                {"at", e.t},
                                {"due", e.t + session_->settings().delay_seconds},
                                {"event", to_json(paste)}});
    }

private:
    std::unique_ptr<ProjectSession> session_;
    ProjectLog& log_;
};

void run_alone(const Scenario& scenario, std::size_t p, ProjectLog& log)
{
    SessionRunner runner(scenario.projects[p], log);
    for (const ScenarioEvent& e : scenario.events) {
        if (e.project == scenario.projects[p].name) {
            runner.advance_to(e.t, false);
            runner.apply(e);
        }
    }
    runner.advance_to(scenario.until, true);
}

} // namespace

std::vector<ProjectLog> simulate(const Scenario& scenario, SimulationMode mode)
{
    std::vector<ProjectLog> logs(scenario.projects.size());
    switch (mode) {
    case SimulationMode::Sequential:
        for (std::size_t p = 0; p < scenario.projects.size(); ++p) {
            run_alone(scenario, p, logs[p]);
        }
        break;
    case SimulationMode::Parallel: {
        std::vector<std::exception_ptr> failures(scenario.projects.size());
        std::vector<std::thread> threads;
        for (std::size_t p = 0; p < scenario.projects.size(); ++p) {
            threads.emplace_back([&, p] {
                try {
                    run_alone(scenario, p, logs[p]);
                } catch (...) {
                    failures[p] = std::current_exception();
                }
            });
        }
        for (std::thread& t : threads) {
            t.join();
        }
        for (const auto& f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
        break;
    }
    case SimulationMode::Interleaved: {
        std::vector<std::unique_ptr<SessionRunner>> runners;
        std::map<std::string, SessionRunner*> by_name;
        for (std::size_t p = 0; p < scenario.projects.size(); ++p) {
            runners.push_back(std::make_unique<SessionRunner>(scenario.projects[p], logs[p]));
            by_name[scenario.projects[p].name] = runners.back().get();
        }
        for (const ScenarioEvent& e : scenario.events) {
            for (auto& r : runners) {
                r->advance_to(e.t, false);
            }
            by_name.at(e.project)->apply(e);
        }
        for (auto& r : runners) {
            r->advance_to(scenario.until, true);
        }
        break;
    }
    }
    return logs;
}

json to_json(const std::vector<ProjectLog>& logs)
{
    json projects = json::array();
    for (const ProjectLog& log : logs) {
        projects.push_back({{"project", log.project},
                            {"recommendations", log.recommendations},
                            {"log", log.entries},
                            {"warnings", log.warnings}});
    }
    return {{"projects", projects}};
}

} // namespace acp
