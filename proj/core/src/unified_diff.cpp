#include "acp/unified_diff.hpp"

#include <algorithm>

namespace acp {

std::vector<std::string> split_lines(std::string_view text)
{
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(pos));
            break;
        }
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string> apply_line_edits(const std::vector<std::string>& lines, const std::vector<LineEdit>& edits)
{
    std::vector<std::string> out;
    std::size_t cursor = 0;
    for (const LineEdit& e : edits) {
        out.insert(out.end(), lines.begin() + static_cast<std::ptrdiff_t>(cursor),
                   lines.begin() + static_cast<std::ptrdiff_t>(e.old_begin));
        out.insert(out.end(), e.new_lines.begin(), e.new_lines.end());
        cursor = e.old_begin + e.old_count;
    }
    out.insert(out.end(), lines.begin() + static_cast<std::ptrdiff_t>(cursor), lines.end());
    return out;
}

namespace {

std::string range(std::size_t start, std::size_t count)
{
    // An empty range names the line before it.
    const std::size_t shown = count == 0 ? start : start + 1;
    if (count == 1) {
        return std::to_string(shown);
    }
    return std::to_string(shown) + "," + std::to_string(count);
}

} // namespace

std::string unified_diff(const std::string& path, const std::vector<std::string>& old_lines,
                         const std::vector<LineEdit>& edits, std::size_t context, bool old_ends_with_newline,
                         bool new_ends_with_newline)
{
    if (edits.empty()) {
        return {};
    }
    const std::size_t old_total = old_lines.size();
    std::size_t new_total = old_total;
    for (const LineEdit& e : edits) {
        new_total = new_total - e.old_count + e.new_lines.size();
    }

    std::string out = "--- a/" + path + "\n+++ b/" + path + "\n";
    std::size_t i = 0;
    std::ptrdiff_t delta = 0;   // new index minus old index before edits[i]
    while (i < edits.size()) {
        std::size_t j = i;
        while (j + 1 < edits.size() &&
               edits[j + 1].old_begin - (edits[j].old_begin + edits[j].old_count) <= 2 * context) {
            ++j;
        }
        const std::size_t old_start = edits[i].old_begin >= context ? edits[i].old_begin - context : 0;
        const std::size_t old_stop = std::min(old_total, edits[j].old_begin + edits[j].old_count + context);
        const std::size_t new_start = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(old_start) + delta);

        std::string body;
        std::size_t old_count = 0;
        std::size_t new_count = 0;
        std::size_t new_index = new_start;
        auto emit = [&](char mark, const std::string& line, bool last_without_newline) {
            body += mark;
            body += line;
            body += '\n';
            if (last_without_newline) {
                body += "\\ No newline at end of file\n";
            }
        };
        std::size_t cursor = old_start;
        for (std::size_t k = i; k <= j; ++k) {
            const LineEdit& e = edits[k];
            for (; cursor < e.old_begin; ++cursor, ++old_count, ++new_count, ++new_index) {
                const bool last = cursor + 1 == old_total;
                emit(' ', old_lines[cursor], last && !old_ends_with_newline);
            }
            for (std::size_t r = 0; r < e.old_count; ++r, ++cursor, ++old_count) {
                emit('-', old_lines[cursor], cursor + 1 == old_total && !old_ends_with_newline);
            }
            for (const std::string& line : e.new_lines) {
                emit('+', line, new_index + 1 == new_total && !new_ends_with_newline);
                ++new_count;
                ++new_index;
            }
            delta += static_cast<std::ptrdiff_t>(e.new_lines.size()) - static_cast<std::ptrdiff_t>(e.old_count);
        }
        for (; cursor < old_stop; ++cursor, ++old_count, ++new_count, ++new_index) {
            emit(' ', old_lines[cursor], cursor + 1 == old_total && !old_ends_with_newline);
        }
        out += "@@ -" + range(old_start, old_count) + " +" + range(new_start, new_count) + " @@\n";
        out += body;
        i = j + 1;
    }
    return out;
}

std::size_t count_hunks(std::string_view diff)
{
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos < diff.size()) {
        if (diff.compare(pos, 3, "@@ ") == 0) {
            ++n;
        }
        const auto nl = diff.find('\n', pos);
        if (nl == std::string_view::npos) {
            break;
        }
        pos = nl + 1;
    }
    return n;
}

} // namespace acp
