#include "acp/clone_detect.hpp"

#include "acp/error.hpp"

#include <algorithm>

namespace acp {

std::string_view to_string(CloneKind kind) noexcept
{
    return kind == CloneKind::Exact ? "exact" : "near";
}

TokenBag normalize_bag(std::span<const Token> tokens)
{
    TokenBag bag;
    for (const auto& t : tokens) {
        if (t.kind == TokenKind::Punctuation) {
            continue;
        }
        ++bag.counts[t.text];
        ++bag.total;
    }
    return bag;
}

double overlap_similarity(const TokenBag& a, const TokenBag& b)
{
    if (a.total == 0 && b.total == 0) {
        throw Error(ErrorCode::UndefinedSimilarity, "both token bags are empty");
    }
    std::size_t shared = 0;
    auto ia = a.counts.begin();
    auto ib = b.counts.begin();
    while (ia != a.counts.end() && ib != b.counts.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            shared += std::min(ia->second, ib->second);
            ++ia;
            ++ib;
        }
    }
    return static_cast<double>(shared) / static_cast<double>(std::max(a.total, b.total));
}

std::vector<std::size_t> find_occurrences(std::span<const Token> haystack, std::span<const std::string> needle)
{
    std::vector<std::size_t> out;
    if (needle.empty() || needle.size() > haystack.size()) {
        return out;
    }
    for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
        bool equal = true;
        for (std::size_t k = 0; k < needle.size(); ++k) {
            if (haystack[i + k].text != needle[k]) {
                equal = false;
                break;
            }
        }
        if (equal) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<CloneMatch> find_duplicates(const Fragment& fragment,
                                        std::span<const MethodUnit* const> methods,
                                        double near_threshold)
{
    if (!(near_threshold > 0.0 && near_threshold <= 1.0)) {
        throw Error(ErrorCode::InvalidSetting, "near-match threshold must lie in (0, 1]");
    }
    std::vector<CloneMatch> out;
    if (!fragment.valid || fragment.tokens.empty()) {
        return out;
    }
    const std::vector<std::string> needle = token_texts(fragment.tokens);
    const TokenBag fragment_bag = normalize_bag(fragment.tokens);

    for (const MethodUnit* m : methods) {
        const auto hits = find_occurrences(m->body_tokens, needle);
        if (!hits.empty()) {
            std::size_t chosen = hits.front();
            const auto& site = fragment.paste_site;
            if (site && (site->method ? *site->method == m->id : site->file_path == m->id.file)) {
                for (std::size_t h : hits) {
                    if (m->body_tokens[h].line == site->line) {
                        chosen = h;
                        break;
                    }
                }
            }
            MatchSpan span{m->body_tokens[chosen].line, m->body_tokens[chosen + needle.size() - 1].line,
                           chosen, needle.size()};
            out.push_back(CloneMatch{m->id, 1.0, CloneKind::Exact, span});
            continue;
        }
        const TokenBag body_bag = normalize_bag(m->body_tokens);
        if (body_bag.total == 0 && fragment_bag.total == 0) {
            continue;
        }
        const double similarity = overlap_similarity(fragment_bag, body_bag);
        if (similarity >= near_threshold) {
            out.push_back(CloneMatch{m->id, similarity, CloneKind::Near, std::nullopt});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CloneMatch& a, const CloneMatch& b) { return a.method_id < b.method_id; });
    return out;
}

} // namespace acp
