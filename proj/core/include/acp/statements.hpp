#pragma once

#include "acp/lexer.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace acp {

enum class StatementKind : std::uint8_t {
    Block,
    LambdaBody,
    Empty,
    LocalVariable,
    Expression,
    If,
    While,
    DoWhile,
    For,
    ForEach,
    Switch,
    SwitchLabel,
    Try,
    Catch,
    Return,
    Throw,
    Break,
    Continue,
    Yield,
    Synchronized,
    Assert,
    Labeled,
};

/// A local variable, parameter, catch or loop variable introduced by a statement.
struct Declaration {
    std::string name;
    std::string type;        ///< rendered declared type; "var" when inferred
    std::size_t token{0};    ///< index of the name token in the parsed span
    int line{0};
};

/**
 * Statement-level syntax tree node.
 *
 * The parser models statement structure only: expressions are kept as token
 * runs, and the only nested statements recorded inside an expression are
 * block lambda bodies (kind LambdaBody). Token indices are relative to the
 * span handed to parse_block_statements.
 */
struct Statement {
    StatementKind kind{StatementKind::Empty};
    std::size_t begin{0};
    std::size_t end{0};   ///< one past the last token
    std::vector<Statement> children;
    std::vector<Declaration> declarations;
    std::string label;    ///< for Labeled, Break and Continue
};

inline constexpr std::size_t kNoMatch = std::numeric_limits<std::size_t>::max();

/**
 * Pairs every `( [ {` with its closer.
 *
 * Returns, for each token, the index of its partner or kNoMatch for
 * non-delimiters. Throws Error(SyntaxError) on any imbalance.
 */
std::vector<std::size_t> match_delimiters(std::span<const Token> tokens);

/**
 * Parses a sequence of Java block statements.
 *
 * Type and member declarations are rejected. Throws Error(SyntaxError).
 */
std::vector<Statement> parse_block_statements(std::span<const Token> tokens);

bool is_loop(StatementKind kind) noexcept;

/// Pre-order walk. Return false from the visitor to skip a node's children.
void walk(const std::vector<Statement>& statements,
          const std::function<bool(const Statement&)>& visit);

/// All declarations in source order, excluding those inside lambda bodies.
std::vector<Declaration> collect_declarations(const std::vector<Statement>& statements);

/// Joins type tokens into readable text, e.g. `Map<String, List<Integer>>`.
std::string render_type(std::span<const Token> tokens);

} // namespace acp
