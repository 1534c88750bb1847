#include "acp/error.hpp"
#include "acp/lexer.hpp"

#include <gtest/gtest.h>

namespace acp {
namespace {

std::vector<std::pair<TokenKind, std::string>> kinds(const std::vector<Token>& tokens)
{
    std::vector<std::pair<TokenKind, std::string>> out;
    for (const auto& t : tokens) {
        out.emplace_back(t.kind, t.text);
    }
    return out;
}

TEST(Lexer, SimpleDeclaration)
{
    auto tokens = tokenize("int x=0;");
    std::vector<std::pair<TokenKind, std::string>> expected{
        {TokenKind::Keyword, "int"},
        {TokenKind::Identifier, "x"},
        {TokenKind::Operator, "="},
        {TokenKind::Literal, "0"},
        {TokenKind::Punctuation, ";"},
    };
    EXPECT_EQ(kinds(tokens), expected);
}

TEST(Lexer, EmptyInput)
{
    EXPECT_TRUE(tokenize("").empty());
}

TEST(Lexer, StripsComments)
{
    auto tokens = tokenize("/*c*/ a // tail\n");
    ASSERT_EQ(tokens.size(), 1u);
    EXPECT_EQ(tokens[0].kind, TokenKind::Identifier);
    EXPECT_EQ(tokens[0].text, "a");
}

TEST(Lexer, StringAndCharLiteralsAreSingleTokens)
{
    auto tokens = tokenize("s = \"a b // c\" + 'x';");
    ASSERT_EQ(tokens.size(), 6u);
    EXPECT_EQ(tokens[2].text, "\"a b // c\"");
    EXPECT_EQ(tokens[2].kind, TokenKind::Literal);
    EXPECT_EQ(tokens[4].text, "'x'");
}

TEST(Lexer, RecordsPositions)
{
    auto tokens = tokenize("a\n  bb");
    ASSERT_EQ(tokens.size(), 2u);
    EXPECT_EQ(tokens[1].line, 2);
    EXPECT_EQ(tokens[1].column, 3);
    EXPECT_EQ(tokens[1].offset, 4u);
}

TEST(Lexer, WhitespaceInsensitive)
{
    EXPECT_EQ(token_texts(tokenize("a+b")), token_texts(tokenize("a + b")));
    EXPECT_EQ(token_texts(tokenize("for(int i=0;i<n;i++){}")),
              token_texts(tokenize("for (int i = 0; i < n; i++)\n{\n}")));
}

TEST(Lexer, UnterminatedBlockCommentReportsLine)
{
    try {
        tokenize("a\n/* open");
        FAIL() << "expected LexError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LexError);
        EXPECT_EQ(e.line(), 2);
    }
}

TEST(Lexer, UnterminatedStringIsLexError)
{
    EXPECT_THROW(tokenize("x = \"abc;\n"), Error);
}

TEST(Lexer, AnnotationMarkerIsPunctuation)
{
    auto tokens = tokenize("@Override");
    ASSERT_EQ(tokens.size(), 2u);
    EXPECT_EQ(tokens[0].kind, TokenKind::Punctuation);
    EXPECT_EQ(tokens[1].kind, TokenKind::Identifier);
}

TEST(Lexer, CompoundOperators)
{
    auto texts = token_texts(tokenize("a >>>= b -> c :: d ... e"));
    std::vector<std::string> expected{"a", ">>>=", "b", "->", "c", "::", "d", "...", "e"};
    EXPECT_EQ(texts, expected);
}

TEST(Lexer, NormalizesNewlines)
{
    EXPECT_EQ(normalize_newlines("a\r\nb\rc"), "a\nb\nc");
}

TEST(Lexer, IdentifierValidation)
{
    EXPECT_TRUE(is_valid_identifier("compute"));
    EXPECT_TRUE(is_valid_identifier("_x1"));
    EXPECT_FALSE(is_valid_identifier("1x"));
    EXPECT_FALSE(is_valid_identifier("class"));
    EXPECT_FALSE(is_valid_identifier("null"));
    EXPECT_EQ(reserved_words().size(), 50u);
}

} // namespace
} // namespace acp
