#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace acp {

/// Replacement of old lines [old_begin, old_begin + old_count) (0-based) by `new_lines`.
struct LineEdit {
    std::size_t old_begin{0};
    std::size_t old_count{0};
    std::vector<std::string> new_lines;
};

/// Splits LF text into lines; a trailing newline does not start an extra line.
std::vector<std::string> split_lines(std::string_view text);

/// Applies sorted, non-overlapping edits to `lines`.
std::vector<std::string> apply_line_edits(const std::vector<std::string>& lines, const std::vector<LineEdit>& edits);

/**
 * Renders edits as one file section of a unified diff (`--- a/path`,
 * `+++ b/path`, `@@` hunks). Hunks closer than 2 * context lines merge.
 * Counts of 1 are written without the `,1` suffix, as GNU diff does.
 */
std::string unified_diff(const std::string& path, const std::vector<std::string>& old_lines,
                         const std::vector<LineEdit>& edits, std::size_t context = 3,
                         bool old_ends_with_newline = true, bool new_ends_with_newline = true);

/// Number of `@@` hunk headers in a diff.
std::size_t count_hunks(std::string_view diff);

} // namespace acp
