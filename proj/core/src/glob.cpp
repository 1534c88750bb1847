#include "acp/workspace.hpp"

namespace acp {

namespace {

bool match_from(std::string_view p, std::string_view s)
{
    while (!p.empty()) {
        if (p.substr(0, 3) == "**/") {
            std::string_view rest = p.substr(3);
            if (match_from(rest, s)) {
                return true;
            }
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (s[i] == '/' && match_from(rest, s.substr(i + 1))) {
                    return true;
                }
            }
            return false;
        }
        if (p.substr(0, 2) == "**") {
            return true;
        }
        if (p.front() == '*') {
            std::string_view rest = p.substr(1);
            for (std::size_t i = 0; i <= s.size(); ++i) {
                if (match_from(rest, s.substr(i))) {
                    return true;
                }
                if (i < s.size() && s[i] == '/') {
                    return false;
                }
            }
            return false;
        }
        if (s.empty()) {
            return false;
        }
        if (p.front() == '?' ? s.front() == '/' : p.front() != s.front()) {
            return false;
        }
        p.remove_prefix(1);
        s.remove_prefix(1);
    }
    return s.empty();
}

} // namespace

bool glob_match(std::string_view pattern, std::string_view path)
{
    return match_from(pattern, path);
}

} // namespace acp
