#pragma once

#include "acp/source_model.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace acp {

/// Multiset of token texts with punctuation removed.
struct TokenBag {
    std::map<std::string, std::size_t> counts;
    std::size_t total{0};

    friend bool operator==(const TokenBag&, const TokenBag&) = default;
};

enum class CloneKind { Exact, Near };

std::string_view to_string(CloneKind kind) noexcept;

/// Location of an exact occurrence inside a method body.
struct MatchSpan {
    int start_line{0};
    int end_line{0};
    std::size_t first_token{0};   ///< index into MethodUnit::body_tokens
    std::size_t token_count{0};

    friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

struct CloneMatch {
    MethodId method_id;
    double similarity{0.0};
    CloneKind kind{CloneKind::Near};
    std::optional<MatchSpan> span;   ///< present iff kind == Exact

    friend bool operator==(const CloneMatch&, const CloneMatch&) = default;
};

TokenBag normalize_bag(std::span<const Token> tokens);

/**
 * Multiset overlap |a ∩ b| / max(|a|, |b|).
 *
 * Throws Error(UndefinedSimilarity) when both bags are empty.
 */
double overlap_similarity(const TokenBag& a, const TokenBag& b);

/// Start indices of every contiguous occurrence of `needle` texts in `haystack`.
std::vector<std::size_t> find_occurrences(std::span<const Token> haystack,
                                          std::span<const std::string> needle);

/**
 * Scans `methods` for copies of a valid fragment.
 *
 * Exact (type-1) matches are preferred over near matches, and at most one
 * match is reported per method. When the fragment carries a paste site the
 * exact span reported for the host method is the occurrence at that line.
 * Results are ordered by method id.
 */
std::vector<CloneMatch> find_duplicates(const Fragment& fragment,
                                        std::span<const MethodUnit* const> methods,
                                        double near_threshold);

} // namespace acp
