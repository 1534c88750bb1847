#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace acp {

enum class TokenKind : std::uint8_t {
    Keyword,
    Identifier,
    Literal,
    Operator,
    Punctuation,
};

std::string_view to_string(TokenKind kind) noexcept;

/**
 * A single Java lexeme.
 *
 * Whitespace and comments never produce tokens. Punctuation is exactly
 * `( ) [ ] { } ; ,` plus the annotation marker `@`; everything else that is
 * not a word or literal is an operator (including `.`, `::`, `->`, `...`).
 */
struct Token {
    TokenKind kind{TokenKind::Punctuation};
    std::string text;
    int line{1};             ///< 1-based
    int column{1};           ///< 1-based, in bytes
    std::size_t offset{0};   ///< byte offset of the first character

    std::size_t end_offset() const noexcept { return offset + text.size(); }

    bool is(std::string_view t) const noexcept { return text == t; }
    bool is_identifier() const noexcept { return kind == TokenKind::Identifier; }

    friend bool operator==(const Token&, const Token&) = default;
};

/// The 50 reserved Java words (contextual words such as `var` or `record` excluded).
const std::array<std::string_view, 50>& reserved_words() noexcept;

bool is_reserved_word(std::string_view word) noexcept;

/// True for a legal Java identifier that is neither reserved nor a literal word.
bool is_valid_identifier(std::string_view word) noexcept;

/// Converts CRLF and lone CR line endings to LF.
std::string normalize_newlines(std::string_view text);

/**
 * Lexes Java source text.
 *
 * Throws Error(LexError) with the offending line for an unterminated block
 * comment, string, char literal or text block, and for characters that cannot
 * start any Java token.
 */
std::vector<Token> tokenize(std::string_view text);

/// Token texts in order; the "normalized sequence" used for type-1 matching.
std::vector<std::string> token_texts(std::span<const Token> tokens);

/// Shifts token lines so that `first_line` becomes line 1.
void rebase_lines(std::vector<Token>& tokens, int first_line);

} // namespace acp
