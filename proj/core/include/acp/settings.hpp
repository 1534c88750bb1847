#pragma once

#include "acp/metrics.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace acp {

enum class SearchScope : std::uint8_t { File, Project };

std::string_view to_string(SearchScope scope) noexcept;

struct SubmetricFlags {
    bool enabled{true};
    bool required{false};

    friend bool operator==(const SubmetricFlags&, const SubmetricFlags&) = default;
};

using FlagTable = std::array<SubmetricFlags, kSubmetricCount>;

/**
 * Per-project detection rule.
 *
 * Defaults: two duplicate methods, ten seconds of delay, sensitivity 50 in
 * every category, every submetric enabled and none required, all 31
 * keywords, near-match threshold 0.8, project-wide search.
 */
struct Settings {
    int min_duplicate_methods{2};
    int delay_seconds{10};
    Sensitivities sensitivity{};
    FlagTable flags{};
    KeywordSet keywords{KeywordSet::all()};
    double near_match_threshold{0.8};
    SearchScope search_scope{SearchScope::Project};
    std::vector<std::string> ignore{"**/target/**", "**/build/**"};

    const SubmetricFlags& flag(SubmetricId id) const noexcept { return flags[static_cast<std::size_t>(id)]; }

    /// A required submetric is always enabled.
    void set_flag(SubmetricId id, bool enabled, bool required) noexcept
    {
        flags[static_cast<std::size_t>(id)] = SubmetricFlags{enabled || required, required};
    }

    friend bool operator==(const Settings&, const Settings&) = default;
};

/**
 * Parses a JSON settings document; absent keys keep their defaults.
 *
 * Errors: ConfigSyntax (malformed JSON, unknown key, wrong type),
 * InvalidSensitivity, InvalidSetting, UnknownSubmetric, UnknownKeyword.
 */
Settings load_settings(std::string_view config_text);

} // namespace acp
