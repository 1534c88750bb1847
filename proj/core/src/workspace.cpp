#include "acp/workspace.hpp"

#include "acp/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace acp {

std::optional<std::string> read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in || fs::is_directory(path)) {
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string canonical_root(const fs::path& root)
{
    std::error_code ec;
    fs::path p = fs::weakly_canonical(fs::absolute(root), ec);
    if (ec) {
        p = fs::absolute(root).lexically_normal();
    }
    std::string s = p.generic_string();
    while (s.size() > 1 && s.back() == '/') {
        s.pop_back();
    }
    return s;
}

std::unique_ptr<ProjectSession> ProjectSession::open(const fs::path& root, const std::optional<fs::path>& config)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw Error(ErrorCode::MissingRoot, root.string() + " is not a directory");
    }
    std::unique_ptr<ProjectSession> session(new ProjectSession());
    session->root_ = canonical_root(root);
    session->root_path_ = fs::path(session->root_);

    const fs::path config_path = config ? *config : session->root_path_ / std::string(kConfigFileName);
    if (auto text = read_file(config_path)) {
        session->settings_ = load_settings(*text);
    } else if (config) {
        throw Error(ErrorCode::FileMissing, "config file " + config->string() + " cannot be read");
    }

    std::vector<std::string> paths;
    for (auto it = fs::recursive_directory_iterator(session->root_path_, fs::directory_options::skip_permission_denied);
         it != fs::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file() || it->path().extension() != ".java") {
            continue;
        }
        const std::string rel = it->path().lexically_relative(session->root_path_).generic_string();
        if (!session->is_ignored(rel)) {
            paths.push_back(rel);
        }
    }
    std::sort(paths.begin(), paths.end());
    for (const std::string& rel : paths) {
        session->index_one(rel, session->files_);
    }
    session->rebuild();
    return session;
}

bool ProjectSession::is_ignored(const std::string& relative_path) const
{
    return std::any_of(settings_.ignore.begin(), settings_.ignore.end(),
                       [&](const std::string& g) { return glob_match(g, relative_path); });
}

std::optional<std::string> ProjectSession::read(const std::string& relative_path) const
{
    const auto it = overlay_.find(relative_path);
    if (it != overlay_.end()) {
        return it->second;
    }
    return read_file(root_path_ / relative_path);
}

void ProjectSession::set_overlay(const std::string& relative_path, std::optional<std::string> content)
{
    overlay_[relative_path] = std::move(content);
}

void ProjectSession::index_one(const std::string& relative_path,
                               std::map<std::string, std::shared_ptr<const FileIndex>>& files)
{
    files.erase(relative_path);
    vectors_.erase(relative_path);
    if (is_ignored(relative_path) || fs::path(relative_path).extension() != ".java") {
        return;
    }
    const auto text = read(relative_path);
    if (!text) {
        return;
    }
    try {
        auto index = std::make_shared<const FileIndex>(index_file(*text, relative_path));
        std::vector<MetricVector> vectors;
        for (const MethodUnit& m : index->methods) {
            vectors.push_back(method_metric_vector(m, settings_.keywords));
        }
        vectors_[relative_path] = std::move(vectors);
        files[relative_path] = std::move(index);
    } catch (const Error& e) {
        warnings_.push_back(relative_path + ": " + e.what());
    }
}

void ProjectSession::rebuild()
{
    index_ = std::make_shared<const ProjectIndex>(files_);
    std::vector<MetricVector> all;
    for (const auto& [path, vectors] : vectors_) {
        all.insert(all.end(), vectors.begin(), vectors.end());
    }
    distribution_ = ProjectDistribution(all);
}

void ProjectSession::set_settings(Settings settings)
{
    settings_ = std::move(settings);
    vectors_.clear();
    for (const auto& [path, file] : files_) {
        std::vector<MetricVector> vectors;
        for (const MethodUnit& m : file->methods) {
            vectors.push_back(method_metric_vector(m, settings_.keywords));
        }
        vectors_[path] = std::move(vectors);
    }
    rebuild();
}

void ProjectSession::refresh_index(const std::vector<std::string>& changed_paths)
{
    if (changed_paths.empty()) {
        return;
    }
    for (const std::string& path : changed_paths) {
        index_one(path, files_);
    }
    rebuild();
}

std::optional<Drop> ProjectSession::enqueue(const PasteEvent& event)
{
    return enqueue_paste(event, *index_, settings_, queue_);
}

std::vector<TickEntry> ProjectSession::tick(Timestamp now)
{
    return acp::tick(now, *index_, distribution_, settings_,
                     [this](const std::string& path) { return read(path); }, queue_);
}

EvaluationResult ProjectSession::evaluate(const PasteEvent& event) const
{
    return evaluate_paste(event, *index_, distribution_, settings_);
}

ProjectSession& Workspace::open_project(const fs::path& root, const std::optional<fs::path>& config)
{
    auto session = ProjectSession::open(root, config);
    const std::string key = session->root();
    auto& slot = sessions_[key];
    slot = std::move(session);
    return *slot;
}

ProjectSession& Workspace::route(const std::string& project_root)
{
    const auto it = sessions_.find(canonical_root(project_root));
    if (it == sessions_.end()) {
        throw Error(ErrorCode::UnknownProject, "no open project at " + project_root);
    }
    return *it->second;
}

std::vector<std::string> Workspace::roots() const
{
    std::vector<std::string> out;
    for (const auto& [root, session] : sessions_) {
        out.push_back(root);
    }
    return out;
}

} // namespace acp
