#include "acp/settings.hpp"

#include "acp/error.hpp"

#include <nlohmann/json.hpp>

namespace acp {

namespace {

using nlohmann::json;

[[noreturn]] void syntax(const std::string& what)
{
    throw Error(ErrorCode::ConfigSyntax, what);
}

int integer(const json& v, const std::string& key)
{
    if (!v.is_number_integer()) {
        syntax("'" + key + "' must be an integer");
    }
    return v.get<int>();
}

bool boolean(const json& v, const std::string& key)
{
    if (!v.is_boolean()) {
        syntax("'" + key + "' must be a boolean");
    }
    return v.get<bool>();
}

int sensitivity_value(const json& v, const std::string& key)
{
    const int s = integer(v, key);
    if (s < 1 || s > 100) {
        throw Error(ErrorCode::InvalidSensitivity, "'" + key + "' = " + std::to_string(s) + " outside 1..100");
    }
    return s;
}

SubmetricFlags apply_flags(SubmetricFlags current, const json& v, const std::string& key)
{
    if (!v.is_object()) {
        syntax("'submetrics." + key + "' must be an object");
    }
    for (const auto& [field, value] : v.items()) {
        if (field == "enabled") {
            current.enabled = boolean(value, key + ".enabled");
        } else if (field == "required") {
            current.required = boolean(value, key + ".required");
        } else {
            syntax("unknown field 'submetrics." + key + "." + field + "'");
        }
    }
    if (current.required) {
        current.enabled = true;
    }
    return current;
}

} // namespace

std::string_view to_string(SearchScope scope) noexcept
{
    return scope == SearchScope::File ? "file" : "project";
}

Settings load_settings(std::string_view config_text)
{
    json doc;
    try {
        doc = json::parse(config_text);
    } catch (const json::parse_error& e) {
        syntax(e.what());
    }
    if (!doc.is_object()) {
        syntax("settings must be a JSON object");
    }

    Settings s;
    for (const auto& [key, value] : doc.items()) {
        if (key == "minDuplicateMethods") {
            s.min_duplicate_methods = integer(value, key);
            if (s.min_duplicate_methods < 1) {
                throw Error(ErrorCode::InvalidSetting, "minDuplicateMethods must be at least 1");
            }
        } else if (key == "delaySeconds") {
            s.delay_seconds = integer(value, key);
            if (s.delay_seconds < 0) {
                throw Error(ErrorCode::InvalidSetting, "delaySeconds must not be negative");
            }
        } else if (key == "nearMatchThreshold") {
            if (!value.is_number()) {
                syntax("'nearMatchThreshold' must be a number");
            }
            s.near_match_threshold = value.get<double>();
            if (!(s.near_match_threshold > 0.0 && s.near_match_threshold <= 1.0)) {
                throw Error(ErrorCode::InvalidSetting, "nearMatchThreshold must lie in (0, 1]");
            }
        } else if (key == "searchScope") {
            if (value == "file") {
                s.search_scope = SearchScope::File;
            } else if (value == "project") {
                s.search_scope = SearchScope::Project;
            } else {
                throw Error(ErrorCode::InvalidSetting, "searchScope must be \"file\" or \"project\"");
            }
        } else if (key == "sensitivity") {
            if (value.is_number_integer()) {
                const int all = sensitivity_value(value, key);
                s.sensitivity.values.fill(all);
            } else if (value.is_object()) {
                for (const auto& [name, v] : value.items()) {
                    const auto category = parse_category(name);
                    if (!category) {
                        syntax("unknown sensitivity category '" + name + "'");
                    }
                    s.sensitivity[*category] = sensitivity_value(v, "sensitivity." + name);
                }
            } else {
                syntax("'sensitivity' must be an integer or an object");
            }
        } else if (key == "submetrics") {
            if (!value.is_object()) {
                syntax("'submetrics' must be an object");
            }
            if (value.contains("*")) {
                for (auto& f : s.flags) {
                    f = apply_flags(f, value["*"], "*");
                }
            }
            for (const auto& [name, v] : value.items()) {
                if (name == "*") {
                    continue;
                }
                const auto id = parse_submetric(name);
                if (!id) {
                    throw Error(ErrorCode::UnknownSubmetric, "'" + name + "'");
                }
                auto& f = s.flags[static_cast<std::size_t>(*id)];
                f = apply_flags(f, v, name);
            }
        } else if (key == "keywords") {
            if (!value.is_array()) {
                syntax("'keywords' must be a list");
            }
            KeywordSet set;
            for (const auto& w : value) {
                if (!w.is_string()) {
                    syntax("'keywords' entries must be strings");
                }
                set.insert(w.get<std::string>());
            }
            s.keywords = std::move(set);
        } else if (key == "ignore") {
            if (!value.is_array()) {
                syntax("'ignore' must be a list");
            }
            s.ignore.clear();
            for (const auto& g : value) {
                if (!g.is_string()) {
                    syntax("'ignore' entries must be strings");
                }
                s.ignore.push_back(g.get<std::string>());
            }
        } else {
            syntax("unknown key '" + key + "'");
        }
    }
    return s;
}

} // namespace acp
