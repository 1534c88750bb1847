#include "acp/lexer.hpp"

#include "acp/error.hpp"

#include <algorithm>

namespace acp {

namespace {

constexpr std::array<std::string_view, 50> kReservedWords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch",
    "char", "class", "const", "continue", "default", "do", "double",
    "else", "enum", "extends", "final", "finally", "float", "for", "goto",
    "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return",
    "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while",
};

// Longest first so that a linear scan yields maximal munch.
constexpr std::array<std::string_view, 25> kMultiCharOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||",
    "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "<<", ">>",
};

constexpr std::string_view kSingleOperators = "+-*/%=<>!~?:&|^.";
constexpr std::string_view kPunctuation = "()[]{};,@";

bool is_ident_start(unsigned char c) noexcept
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) noexcept
{
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) noexcept
{
    return c >= '0' && c <= '9';
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (pos_ < text_.size()) {
            const unsigned char c = static_cast<unsigned char>(text_[pos_]);
            if (c == '\n') {
                advance();
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
                advance();
                continue;
            }
            if (c == '/' && peek(1) == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
                continue;
            }
            if (c == '/' && peek(1) == '*') {
                skip_block_comment();
                continue;
            }
            out.push_back(next_token());
        }
        return out;
    }

private:
    char peek(std::size_t ahead) const noexcept
    {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    void advance() noexcept
    {
        if (text_[pos_] == '\n') {
            ++line_;
            line_start_ = pos_ + 1;
        }
        ++pos_;
    }

    void skip_block_comment()
    {
        const int start_line = line_;
        advance();
        advance();
        while (pos_ < text_.size()) {
            if (text_[pos_] == '*' && peek(1) == '/') {
                advance();
                advance();
                return;
            }
            advance();
        }
        throw Error(ErrorCode::LexError, "unterminated block comment", start_line);
    }

    Token next_token()
    {
        Token tok;
        tok.line = line_;
        tok.column = static_cast<int>(pos_ - line_start_) + 1;
        tok.offset = pos_;

        const unsigned char c = static_cast<unsigned char>(text_[pos_]);
        if (is_ident_start(c)) {
            while (pos_ < text_.size() && is_ident_part(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
            tok.text = std::string(text_.substr(tok.offset, pos_ - tok.offset));
            if (tok.text == "true" || tok.text == "false" || tok.text == "null") {
                tok.kind = TokenKind::Literal;
            } else if (is_reserved_word(tok.text)) {
                tok.kind = TokenKind::Keyword;
            } else {
                tok.kind = TokenKind::Identifier;
            }
            return tok;
        }
        if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
            lex_number();
            tok.kind = TokenKind::Literal;
            tok.text = std::string(text_.substr(tok.offset, pos_ - tok.offset));
            return tok;
        }
        if (c == '"') {
            if (peek(1) == '"' && peek(2) == '"') {
                lex_text_block();
            } else {
                lex_quoted('"', "string literal");
            }
            tok.kind = TokenKind::Literal;
            tok.text = std::string(text_.substr(tok.offset, pos_ - tok.offset));
            return tok;
        }
        if (c == '\'') {
            lex_quoted('\'', "char literal");
            tok.kind = TokenKind::Literal;
            tok.text = std::string(text_.substr(tok.offset, pos_ - tok.offset));
            return tok;
        }
        if (kPunctuation.find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            tok.kind = TokenKind::Punctuation;
            tok.text = std::string(1, static_cast<char>(c));
            return tok;
        }
        for (std::string_view op : kMultiCharOperators) {
            if (text_.substr(pos_, op.size()) == op) {
                for (std::size_t i = 0; i < op.size(); ++i) {
                    advance();
                }
                tok.kind = TokenKind::Operator;
                tok.text = std::string(op);
                return tok;
            }
        }
        if (kSingleOperators.find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            tok.kind = TokenKind::Operator;
            tok.text = std::string(1, static_cast<char>(c));
            return tok;
        }
        throw Error(ErrorCode::LexError,
                    std::string("unexpected character '") + static_cast<char>(c) + "'", line_);
    }

    void lex_number()
    {
        const bool hex = text_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X');
        while (pos_ < text_.size()) {
            const unsigned char c = static_cast<unsigned char>(text_[pos_]);
            if (is_ident_part(c) && c < 0x80) {
                const bool exponent = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
                advance();
                if (exponent && (peek(0) == '+' || peek(0) == '-')) {
                    advance();
                }
            } else if (c == '.' && is_digit_or_suffix(peek(1))) {
                advance();
            } else if (c == '.' && !is_ident_start(static_cast<unsigned char>(peek(1))) && peek(1) != '.') {
                // trailing dot as in `1.`
                advance();
            } else {
                break;
            }
        }
    }

    static bool is_digit_or_suffix(char c) noexcept
    {
        const auto u = static_cast<unsigned char>(c);
        return is_digit(u) || c == 'e' || c == 'E' || c == 'f' || c == 'F' || c == 'd' || c == 'D';
    }

    void lex_quoted(char quote, const char* what)
    {
        const int start_line = line_;
        advance();
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                break;
            }
            if (c == '\\') {
                advance();
                if (pos_ < text_.size() && text_[pos_] != '\n') {
                    advance();
                }
                continue;
            }
            advance();
            if (c == quote) {
                return;
            }
        }
        throw Error(ErrorCode::LexError, std::string("unterminated ") + what, start_line);
    }

    void lex_text_block()
    {
        const int start_line = line_;
        advance();
        advance();
        advance();
        while (pos_ < text_.size()) {
            if (text_[pos_] == '\\') {
                advance();
                if (pos_ < text_.size()) {
                    advance();
                }
                continue;
            }
            if (text_[pos_] == '"' && peek(1) == '"' && peek(2) == '"') {
                advance();
                advance();
                advance();
                return;
            }
            advance();
        }
        throw Error(ErrorCode::LexError, "unterminated text block", start_line);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
};

} // namespace

std::string_view to_string(TokenKind kind) noexcept
{
    switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Literal: return "literal";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
    }
    return "unknown";
}

const std::array<std::string_view, 50>& reserved_words() noexcept
{
    return kReservedWords;
}

bool is_reserved_word(std::string_view word) noexcept
{
    return std::find(kReservedWords.begin(), kReservedWords.end(), word) != kReservedWords.end();
}

bool is_valid_identifier(std::string_view word) noexcept
{
    if (word.empty() || !is_ident_start(static_cast<unsigned char>(word.front()))) {
        return false;
    }
    if (!std::all_of(word.begin(), word.end(),
                     [](char c) { return is_ident_part(static_cast<unsigned char>(c)); })) {
        return false;
    }
    return !is_reserved_word(word) && word != "true" && word != "false" && word != "null";
}

std::string normalize_newlines(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            out.push_back('\n');
            if (i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

std::vector<Token> tokenize(std::string_view text)
{
    return Lexer(text).run();
}

std::vector<std::string> token_texts(std::span<const Token> tokens)
{
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        out.push_back(t.text);
    }
    return out;
}

void rebase_lines(std::vector<Token>& tokens, int first_line)
{
    for (auto& t : tokens) {
        t.line = t.line - first_line + 1;
    }
}

} // namespace acp
