#include "acp/cli.hpp"

#include "acp/error.hpp"
#include "acp/refactor.hpp"
#include "acp/scenario.hpp"
#include "acp/serialize.hpp"
#include "acp/workspace.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace acp {

namespace {

/// A usage problem found after argument parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s(buf);
    while (s.size() > 1 && s.back() == '0') {
        s.pop_back();
    }
    if (s.back() == '.') {
        s.pop_back();
    }
    return s;
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::optional<fs::path> optional_path(const std::string& s)
{
    return s.empty() ? std::nullopt : std::optional<fs::path>(s);
}

struct Anchor {
    std::string file;
    int line{0};
};

Anchor parse_anchor(const std::string& at)
{
    const auto colon = at.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == at.size()) {
        throw UsageError("--at expects FILE:LINE, got '" + at + "'");
    }
    const std::string digits = at.substr(colon + 1);
    if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) ||
        digits.size() > 9) {
        throw UsageError("--at line must be a positive integer, got '" + digits + "'");
    }
    Anchor a{at.substr(0, colon), std::stoi(digits)};
    if (a.line < 1) {
        throw UsageError("--at line must be a positive integer");
    }
    return a;
}

/// Project-relative form of a file given relative to the root, relative to the working directory, or absolute.
std::string relative_to_root(const ProjectSession& session, const std::string& file)
{
    const fs::path root(session.root());
    if (fs::path(file).is_relative() && fs::exists(root / file)) {
        return fs::path(file).lexically_normal().generic_string();
    }
    const fs::path absolute = fs::weakly_canonical(fs::absolute(file));
    const fs::path rel = absolute.lexically_relative(root);
    if (!rel.empty() && *rel.begin() != "..") {
        return rel.generic_string();
    }
    return fs::path(file).lexically_normal().generic_string();
}

std::string read_required(const std::string& path)
{
    auto text = read_file(path);
    if (!text) {
        throw Error(ErrorCode::FileMissing, path + " cannot be read");
    }
    return *text;
}

void print_report(std::ostream& out, const GateReport& report)
{
    out << "duplicates  " << report.duplicate_method_count << " (minimum " << report.min_duplicate_methods << ")\n";
    out << pad("submetric", 40) << pad("value", 12) << pad("threshold", 12) << pad("pass", 6) << "required\n";
    for (SubmetricId id : submetrics_by_name()) {
        const auto it = report.evaluated.find(id);
        if (it == report.evaluated.end()) {
            continue;
        }
        const SubmetricOutcome& o = it->second;
        out << pad(std::string(submetric_name(id)), 40) << pad(num(o.value), 12) << pad(num(o.threshold), 12)
            << pad(o.passed ? "yes" : "no", 6) << (o.required ? "yes" : "no") << "\n";
    }
    if (report.reason) {
        out << "reason      " << *report.reason << "\n";
    }
    out << "rule        " << kGateRule << "\n";
}

int cmd_analyze(const std::string& root, const std::string& config, bool as_json, std::ostream& out)
{
    auto session = ProjectSession::open(root, optional_path(config));
    const ProjectDistribution& dist = session->distribution();
    std::optional<ThresholdMap> thresholds;
    if (!dist.empty()) {
        thresholds = thresholds_for(dist, session->settings().sensitivity);
    }
    if (as_json) {
        json j = {{"files", session->index().files().size()},
                  {"methodCount", session->index().method_count()},
                  {"warnings", session->warnings()},
                  {"distribution", distribution_summary(dist)},
                  {"thresholds", thresholds ? to_json(*thresholds) : json(nullptr)},
                  {"settings", to_json(session->settings())}};
        out << dump(j);
        return kExitOk;
    }
    out << "methods     " << session->index().method_count() << " in " << session->index().files().size()
        << " files\n";
    for (const std::string& w : session->warnings()) {
        out << "warning     " << w << "\n";
    }
    if (dist.empty()) {
        out << "no method bodies indexed; thresholds are not computable\n";
        return kExitOk;
    }
    out << pad("submetric", 40) << pad("min", 12) << pad("median", 12) << pad("max", 12) << "threshold\n";
    for (SubmetricId id : submetrics_by_name()) {
        const auto& s = dist.sample(id);
        out << pad(std::string(submetric_name(id)), 40) << pad(num(s.front()), 12)
            << pad(num(percentile_threshold(s, 50)), 12) << pad(num(s.back()), 12) << num(thresholds->at(id)) << "\n";
    }
    return kExitOk;
}

int cmd_check(const std::string& root, const std::string& config, const std::string& fragment_file,
              const std::string& at, bool as_json, std::ostream& out)
{
    const Anchor anchor = parse_anchor(at);
    auto session = ProjectSession::open(root, optional_path(config));
    const PasteEvent event{session->root(), relative_to_root(*session, anchor.file), anchor.line,
                           read_required(fragment_file), 0};
    const EvaluationResult r = session->evaluate(event);
    if (r.drop) {
        if (as_json) {
            out << dump({{"triggered", false},
                         {"event", to_json(event)},
                         {"dropped", to_string(*r.drop)},
                         {"detail", r.detail}});
        } else {
            out << "paste       " << event.file_path << ":" << event.paste_line << "\n";
            out << "verdict     not triggered (" << to_string(*r.drop) << ": " << r.detail << ")\n";
        }
        return kExitNotTriggered;
    }
    const PasteEvaluation& ev = *r.evaluation;
    const auto exact = std::count_if(ev.matches.begin(), ev.matches.end(),
                                     [](const CloneMatch& m) { return m.kind == CloneKind::Exact; });
    if (as_json) {
        json matches = json::array();
        for (const CloneMatch& m : ev.matches) {
            matches.push_back(to_json(m));
        }
        out << dump({{"triggered", ev.report.triggered},
                     {"event", to_json(event)},
                     {"host", ev.host->id.str()},
                     {"report", to_json(ev.report)},
                     {"matches", matches},
                     {"exactMatches", exact},
                     {"nearMatches", static_cast<std::ptrdiff_t>(ev.matches.size()) - exact}});
    } else {
        out << "paste       " << event.file_path << ":" << event.paste_line << " in " << ev.host->id.str() << "\n";
        out << "verdict     " << (ev.report.triggered ? "TRIGGERED (extract-method recommended)" : "not triggered")
            << "\n";
        print_report(out, ev.report);
        out << "matches\n";
        for (const CloneMatch& m : ev.matches) {
            out << "  " << pad(std::string(to_string(m.kind)), 7) << pad(num(m.similarity), 8) << m.method_id.str();
            if (m.span) {
                out << " lines " << m.span->start_line << "-" << m.span->end_line;
            }
            out << "\n";
        }
    }
    return ev.report.triggered ? kExitOk : kExitNotTriggered;
}

int cmd_simulate(const std::string& scenario_file, const std::string& mode_name, bool as_json, std::ostream& out)
{
    SimulationMode mode = SimulationMode::Sequential;
    if (mode_name == "interleaved") {
        mode = SimulationMode::Interleaved;
    } else if (mode_name == "parallel") {
        mode = SimulationMode::Parallel;
    }
    const auto logs = simulate(load_scenario(scenario_file), mode);
    if (as_json) {
        out << dump(to_json(logs));
        return kExitOk;
    }
    for (const ProjectLog& log : logs) {
        out << "project " << log.project << " (" << log.recommendations << " recommendation"
            << (log.recommendations == 1 ? "" : "s") << ")\n";
        for (const std::string& w : log.warnings) {
            out << "  warning " << w << "\n";
        }
        for (const json& e : log.entries) {
            const std::string type = e["type"].get<std::string>();
            out << "  t=" << e["at"].get<Timestamp>() << " " << type;
            if (e.contains("event")) {
                out << " " << e["event"]["file"].get<std::string>() << ":" << e["event"]["line"].get<int>();
            } else {
                out << " " << e["file"].get<std::string>();
            }
            if (type == "queued") {
                out << " due t=" << e["due"].get<Timestamp>();
            } else if (type == "dropped") {
                out << " " << e["reason"].get<std::string>() << " (" << e["detail"].get<std::string>() << ")";
            } else if (type == "recommendation") {
                out << " extract-method in " << e["host"].get<std::string>() << ", duplicates "
                    << e["report"]["duplicateMethodCount"].get<std::size_t>();
            }
            out << "\n";
        }
    }
    return kExitOk;
}

int cmd_extract(const std::string& root, const std::string& config, const std::string& fragment_file,
                const std::string& at, const std::string& name, bool write, bool as_json, std::ostream& out)
{
    const Anchor anchor = parse_anchor(at);
    auto session = ProjectSession::open(root, optional_path(config));
    Fragment fragment = validate_fragment(read_required(fragment_file));
    fragment.paste_site = PasteSite{relative_to_root(*session, anchor.file), anchor.line, std::nullopt};
    const ExtractionPlan plan =
        prepare_extraction(fragment, name, session->index(), session->settings().near_match_threshold);

    SourceMap before;
    before[plan.insertion_file] = read_required((fs::path(session->root()) / plan.insertion_file).string());
    for (const ExtractionSite& s : plan.target_sites) {
        if (!before.count(s.file_path)) {
            before[s.file_path] = read_required((fs::path(session->root()) / s.file_path).string());
        }
    }
    const ExtractionResult result = apply_extraction(plan, before);
    const Verification check = verify_by_inlining(plan, before, result.sources);
    if (!check.passed) {
        std::string detail;
        for (const SiteVerdict& v : check.sites) {
            if (!v.equivalent) {
                detail += " " + v.file_path + ":" + std::to_string(v.line) + " (" + v.detail + ")";
            }
        }
        throw Error(ErrorCode::StaleSite, "inlining check failed at" + detail);
    }
    if (write) {
        for (const auto& [path, text] : result.sources) {
            if (text == before.at(path)) {
                continue;
            }
            std::ofstream file(fs::path(session->root()) / path, std::ios::binary | std::ios::trunc);
            file << text;
            if (!file) {
                throw Error(ErrorCode::FileMissing, "cannot write " + path);
            }
        }
    }
    if (as_json) {
        out << dump({{"plan", to_json(plan)}, {"diff", result.diff}, {"written", write}});
    } else if (write) {
        out << "extracted " << plan.signature << " replacing " << plan.target_sites.size() << " site"
            << (plan.target_sites.size() == 1 ? "" : "s") << "\n";
    } else {
        out << result.diff;
    }
    return kExitOk;
}

int cmd_thresholds(const std::string& root, const std::string& config, const std::vector<std::string>& overrides,
                   bool as_json, std::ostream& out)
{
    std::vector<std::pair<std::string, int>> parsed;
    for (const std::string& o : overrides) {
        const auto eq = o.find('=');
        const std::string cat = o.substr(0, eq);
        const std::string value = eq == std::string::npos ? "" : o.substr(eq + 1);
        const bool digits = !value.empty() && value.size() <= 9 &&
                            std::all_of(value.begin() + (value[0] == '-' ? 1 : 0), value.end(),
                                        [](unsigned char c) { return std::isdigit(c); }) &&
                            value != "-";
        if (!digits || (cat != "all" && cat != "keyword" && cat != "coupling" && cat != "complexity" && cat != "size")) {
            throw UsageError("--sensitivity expects CAT=N with CAT in keyword|coupling|complexity|size|all, got '" +
                             o + "'");
        }
        parsed.emplace_back(cat, std::stoi(value));
    }
    auto session = ProjectSession::open(root, optional_path(config));
    Sensitivities s = session->settings().sensitivity;
    const std::array<MetricCategory, 4> cats{MetricCategory::Keyword, MetricCategory::Coupling,
                                             MetricCategory::Complexity, MetricCategory::Size};
    for (const auto& [cat, value] : parsed) {
        if (value < 1 || value > 100) {
            throw Error(ErrorCode::InvalidSensitivity,
                        "sensitivity " + std::to_string(value) + " for " + cat + " is outside 1-100");
        }
        for (MetricCategory c : cats) {
            if (cat == "all" || cat == to_string(c)) {
                s[c] = value;
            }
        }
    }
    const ThresholdMap thresholds = thresholds_for(session->distribution(), s);
    if (as_json) {
        json sens = json::object();
        for (MetricCategory c : cats) {
            sens[std::string(to_string(c))] = s[c];
        }
        out << dump({{"sampleSize", session->distribution().sample_size()},
                     {"sensitivity", sens},
                     {"thresholds", to_json(thresholds)}});
        return kExitOk;
    }
    out << "sample size " << session->distribution().sample_size() << "\n";
    out << pad("submetric", 40) << pad("sensitivity", 13) << "threshold\n";
    for (SubmetricId id : submetrics_by_name()) {
        out << pad(std::string(submetric_name(id)), 40) << pad(std::to_string(s[category_of(id)]), 13)
            << num(thresholds.at(id)) << "\n";
    }
    return kExitOk;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Duplicate-paste detection and Extract Method recommendations for Java projects", "acp"};
    app.require_subcommand(1);

    std::string root;
    std::string config;
    std::string fragment;
    std::string at;
    std::string name;
    std::string scenario;
    std::string mode = "sequential";
    std::vector<std::string> sensitivities;
    bool as_json = false;
    bool write = false;

    auto* analyze = app.add_subcommand("analyze", "Index a project and print distributions and thresholds");
    analyze->add_option("root", root, "Project root directory")->required();
    analyze->add_option("--config", config, "Settings file (default <root>/.anticopypaster.json)");
    analyze->add_flag("--json", as_json, "Machine-readable output");

    auto* check = app.add_subcommand("check", "Evaluate a fragment as an already-due paste");
    check->add_option("root", root, "Project root directory")->required();
    check->add_option("--fragment", fragment, "File holding the pasted fragment")->required();
    check->add_option("--at", at, "Paste site FILE:LINE (first line of the pasted text)")->required();
    check->add_option("--config", config, "Settings file");
    check->add_flag("--json", as_json, "Machine-readable output");

    auto* sim = app.add_subcommand("simulate", "Replay a scenario of timed paste and edit events");
    sim->add_option("scenario", scenario, "Scenario JSON file")->required();
    sim->add_option("--mode", mode, "Session scheduling")
        ->check(CLI::IsMember({"sequential", "interleaved", "parallel"}));
    sim->add_flag("--json", as_json, "Machine-readable output");

    auto* extract = app.add_subcommand("extract", "Extract a pasted fragment into a new method");
    extract->add_option("root", root, "Project root directory")->required();
    extract->add_option("--fragment", fragment, "File holding the pasted fragment")->required();
    extract->add_option("--at", at, "Paste site FILE:LINE")->required();
    extract->add_option("--name", name, "Name of the new method")->required();
    extract->add_option("--config", config, "Settings file");
    extract->add_flag("--write", write, "Rewrite the files instead of printing a diff");
    extract->add_flag("--json", as_json, "Machine-readable output");

    auto* thresholds = app.add_subcommand("thresholds", "Print percentile thresholds");
    thresholds->add_option("root", root, "Project root directory")->required();
    thresholds->add_option("--sensitivity", sensitivities, "CAT=N, CAT in keyword|coupling|complexity|size|all");
    thresholds->add_option("--config", config, "Settings file");
    thresholds->add_flag("--json", as_json, "Machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (analyze->parsed()) {
            return cmd_analyze(root, config, as_json, out);
        }
        if (check->parsed()) {
            return cmd_check(root, config, fragment, at, as_json, out);
        }
        if (sim->parsed()) {
            return cmd_simulate(scenario, mode, as_json, out);
        }
        if (extract->parsed()) {
            return cmd_extract(root, config, fragment, at, name, write, as_json, out);
        }
        return cmd_thresholds(root, config, sensitivities, as_json, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitAnalysisError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitAnalysisError;
    }
}

} // namespace acp
